#pragma once

#include <string>
#include <vector>

#include "rla/rational.hpp"
#include "rla/regulated.hpp"

namespace rla {

/// A scaling dimension with its regulator shift: base + mult * eps.
/// Distinct tuple slots receive distinct rational multipliers so that the
/// transformation matrices are generically invertible.
struct Dim {
    Rational base = 0;
    Rational mult = 0;

    Dim() = default;
    Dim(int b) : base(b) {}
    Dim(Rational b, Rational m) : base(std::move(b)), mult(std::move(m)) {}

    RegulatedScalar scalar() const {
        return RegulatedScalar(EpsPoly(std::vector<Rational>{base, mult}), EpsPoly(Rational(1)));
    }

    friend Dim operator+(const Dim& a, const Dim& b) { return Dim(a.base + b.base, a.mult + b.mult); }
    friend Dim operator-(const Dim& a, const Dim& b) { return Dim(a.base - b.base, a.mult - b.mult); }
    friend Dim operator-(const Dim& a, int k) { return Dim(a.base - k, a.mult); }
    friend Dim operator+(const Dim& a, int k) { return Dim(a.base + k, a.mult); }
    friend bool operator==(const Dim& a, const Dim& b) { return a.base == b.base && a.mult == b.mult; }
    friend bool operator<(const Dim& a, const Dim& b) {
        if (a.base != b.base) return a.base < b.base;
        return a.mult < b.mult;
    }

    std::string key() const { return rat_to_string(base) + "|" + rat_to_string(mult); }
};

/// Regulator multiplier sets: slot k of a tuple gets mult = pow^k.
enum class RegulatorSet { Pow3, Pow5, None };

inline std::vector<Dim> regulate(const std::vector<int>& dims, RegulatorSet set) {
    std::vector<Dim> out;
    Rational m = 1;
    Rational p = set == RegulatorSet::Pow3 ? 3 : set == RegulatorSet::Pow5 ? 5 : 0;
    for (size_t k = 0; k < dims.size(); ++k) {
        out.emplace_back(Rational(dims[k]), set == RegulatorSet::None ? Rational(0) : m);
        m *= p;
    }
    return out;
}

}  // namespace rla
