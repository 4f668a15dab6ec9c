#pragma once

#include <stdexcept>
#include <vector>

#include "rla/rational.hpp"

namespace rla {

/// Polynomial test function in x with exact rational coefficients,
/// ascending by degree, trailing zeros stripped. Polynomial models of the
/// test-function spaces are enough here: every identity exercised is a
/// coefficient identity, valid degree by degree.
class Poly {
  public:
    Poly() = default;
    Poly(Rational c) { if (c != 0) coeffs_.push_back(std::move(c)); }
    explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { strip(); }

    static Poly monomial(int deg, Rational c = 1) {
        std::vector<Rational> v(deg + 1, Rational(0));
        v[deg] = std::move(c);
        return Poly(std::move(v));
    }
    static Poly x() { return monomial(1); }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
        return coeffs_[k];
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly();
        std::vector<Rational> d(coeffs_.size() - 1);
        for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
        return Poly(std::move(d));
    }
    Poly derivative(int n) const {
        Poly p = *this;
        for (int i = 0; i < n; ++i) p = p.derivative();
        return p;
    }
    Poly shift_x(int k) const {  // multiply by x^k
        if (is_zero()) return Poly();
        std::vector<Rational> v(coeffs_.size() + k, Rational(0));
        for (size_t i = 0; i < coeffs_.size(); ++i) v[i + k] = coeffs_[i];
        return Poly(std::move(v));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Poly(std::move(c));
    }
    friend Poly operator*(const Rational& s, const Poly& p) {
        std::vector<Rational> c = p.coeffs_;
        for (auto& x : c) x *= s;
        return Poly(std::move(c));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  private:
    void strip() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

/// The three sl(2,R) generators on a weight-a test function space.
enum class Generator { P, D, K };

/// Real convention: P = d/dx, D = x d/dx + (1-a), K = x^2 d/dx + 2(1-a)x.
/// The intertwining conditions are linear, so the conventional global
/// factor i is dropped and all arithmetic stays rational.
inline Poly sl2_apply(Generator g, int a, const Poly& f) {
    Poly df = f.derivative();
    switch (g) {
        case Generator::P:
            return df;
        case Generator::D:
            return df.shift_x(1) + Rational(1 - a) * f;
        case Generator::K:
            return df.shift_x(2) + Rational(2 * (1 - a)) * f.shift_x(1);
    }
    throw std::logic_error("unreachable");
}

/// Coproduct action: the generator applied in each tensor slot in turn.
/// Returns one summand tuple per slot; the caller contracts each tuple
/// through an intertwiner and sums.
inline std::vector<std::vector<Poly>> coproduct_apply(Generator g, const std::vector<int>& dims,
                                                      const std::vector<Poly>& fs) {
    if (dims.size() != fs.size() || fs.empty())
        throw std::invalid_argument("coproduct: dims/functions length mismatch");
    std::vector<std::vector<Poly>> out;
    for (size_t i = 0; i < fs.size(); ++i) {
        std::vector<Poly> term = fs;
        term[i] = sl2_apply(g, dims[i], fs[i]);
        out.push_back(std::move(term));
    }
    return out;
}

}  // namespace rla
