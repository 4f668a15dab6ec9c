#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rla/rational.hpp"

namespace rla {

/// Dense univariate polynomial in the regulator variable eps,
/// coefficients ascending by degree, trailing zeros stripped.
class EpsPoly {
  public:
    EpsPoly() = default;
    EpsPoly(Rational c) { if (c != 0) coeffs_.push_back(std::move(c)); }
    explicit EpsPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { strip(); }

    static EpsPoly eps() { return EpsPoly(std::vector<Rational>{Rational(0), Rational(1)}); }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Rational coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
        return coeffs_[k];
    }
    Rational leading() const {
        if (is_zero()) throw std::logic_error("leading coeff of zero polynomial");
        return coeffs_.back();
    }

    /// Multiplicity of the root eps = 0 (0 for nonzero constant term).
    int order_at_zero() const {
        if (is_zero()) throw std::logic_error("valuation of zero polynomial");
        int k = 0;
        while (coeffs_[k] == 0) ++k;
        return k;
    }

    EpsPoly shifted_down(int k) const {  // divide by eps^k, must be exact
        std::vector<Rational> c(coeffs_.begin() + k, coeffs_.end());
        return EpsPoly(std::move(c));
    }

    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    friend EpsPoly operator+(const EpsPoly& a, const EpsPoly& b) {
        std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
        return EpsPoly(std::move(c));
    }
    friend EpsPoly operator-(const EpsPoly& a, const EpsPoly& b) {
        std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
        return EpsPoly(std::move(c));
    }
    EpsPoly operator-() const {
        std::vector<Rational> c = coeffs_;
        for (auto& x : c) x = -x;
        return EpsPoly(std::move(c));
    }
    friend EpsPoly operator*(const EpsPoly& a, const EpsPoly& b) {
        if (a.is_zero() || b.is_zero()) return EpsPoly();
        std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return EpsPoly(std::move(c));
    }
    friend bool operator==(const EpsPoly& a, const EpsPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Euclidean remainder a mod b, b nonzero.
    static EpsPoly rem(EpsPoly a, const EpsPoly& b) {
        while (!a.is_zero() && a.degree() >= b.degree()) {
            Rational q = a.leading() / b.leading();
            int shift = a.degree() - b.degree();
            std::vector<Rational> c = a.coeffs_;
            for (int i = 0; i <= b.degree(); ++i) c[i + shift] -= q * b.coeffs_[i];
            a = EpsPoly(std::move(c));
        }
        return a;
    }
    /// Exact quotient a / b (throws if not divisible).
    static EpsPoly div_exact(EpsPoly a, const EpsPoly& b) {
        if (a.is_zero()) return EpsPoly();
        std::vector<Rational> q(a.degree() - b.degree() + 1, Rational(0));
        while (!a.is_zero() && a.degree() >= b.degree()) {
            Rational lc = a.leading() / b.leading();
            int shift = a.degree() - b.degree();
            q[shift] = lc;
            std::vector<Rational> c = a.coeffs_;
            for (int i = 0; i <= b.degree(); ++i) c[i + shift] -= lc * b.coeffs_[i];
            c.pop_back();
            a = EpsPoly(std::move(c));
        }
        if (!a.is_zero()) throw std::logic_error("inexact polynomial division");
        return EpsPoly(std::move(q));
    }
    /// Monic gcd.
    static EpsPoly gcd(EpsPoly a, EpsPoly b) {
        while (!b.is_zero()) {
            EpsPoly r = rem(a, b);
            a = b;
            b = r;
        }
        if (a.is_zero()) return a;
        Rational lc = a.leading();
        for (auto& x : a.coeffs_) x /= lc;
        return a;
    }

  private:
    void strip() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

/// Report for a regulated value singular at eps = 0: the pole order and
/// the leading Laurent coefficient.
struct PoleReport {
    int order = 0;
    Rational leading = 0;
};

/// Exact rational function of the single regulator eps, kept canonical:
/// gcd(num, den) = 1 and den monic.
class RegulatedScalar {
  public:
    RegulatedScalar() : num_(), den_(Rational(1)) {}
    RegulatedScalar(int v) : num_(Rational(v)), den_(Rational(1)) {}
    RegulatedScalar(Rational v) : num_(std::move(v)), den_(Rational(1)) {}
    RegulatedScalar(EpsPoly num, EpsPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::invalid_argument("zero denominator polynomial");
        canonicalize();
    }

    static RegulatedScalar eps() { return RegulatedScalar(EpsPoly::eps(), EpsPoly(Rational(1))); }

    const EpsPoly& num() const { return num_; }
    const EpsPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    friend RegulatedScalar operator+(const RegulatedScalar& a, const RegulatedScalar& b) {
        return RegulatedScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RegulatedScalar operator-(const RegulatedScalar& a, const RegulatedScalar& b) {
        return RegulatedScalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    RegulatedScalar operator-() const {
        RegulatedScalar r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RegulatedScalar operator*(const RegulatedScalar& a, const RegulatedScalar& b) {
        return RegulatedScalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RegulatedScalar operator/(const RegulatedScalar& a, const RegulatedScalar& b) {
        if (b.is_zero()) throw std::domain_error("division by zero rational function");
        return RegulatedScalar(a.num_ * b.den_, a.den_ * b.num_);
    }
    RegulatedScalar& operator+=(const RegulatedScalar& o) { return *this = *this + o; }
    RegulatedScalar& operator-=(const RegulatedScalar& o) { return *this = *this - o; }
    RegulatedScalar& operator*=(const RegulatedScalar& o) { return *this = *this * o; }
    RegulatedScalar& operator/=(const RegulatedScalar& o) { return *this = *this / o; }
    friend bool operator==(const RegulatedScalar& a, const RegulatedScalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RegulatedScalar& a, const RegulatedScalar& b) { return !(a == b); }

    /// Exact evaluation at a non-pole rational eps.
    Rational eval(const Rational& x) const {
        Rational d = den_.eval(x);
        if (d == 0) throw std::domain_error("evaluation at a pole");
        return num_.eval(x) / d;
    }

  private:
    void canonicalize() {
        if (num_.is_zero()) {
            den_ = EpsPoly(Rational(1));
            return;
        }
        EpsPoly g = EpsPoly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = EpsPoly::div_exact(num_, g);
            den_ = EpsPoly::div_exact(den_, g);
        }
        Rational lc = den_.leading();
        if (lc != 1) {
            std::vector<Rational> nc = num_.coeffs(), dc = den_.coeffs();
            for (auto& x : nc) x /= lc;
            for (auto& x : dc) x /= lc;
            num_ = EpsPoly(std::move(nc));
            den_ = EpsPoly(std::move(dc));
        }
    }
    EpsPoly num_, den_;
};

/// Removes the regulator: the value at eps = 0, or a PoleReport when the
/// denominator vanishes there. The pole is a report, not a failure.
inline std::variant<Rational, PoleReport> regulated_limit(const RegulatedScalar& v) {
    if (v.is_zero()) return Rational(0);
    int dord = v.den().order_at_zero();
    if (dord == 0) {
        return v.num().eval(Rational(0)) / v.den().eval(Rational(0));
    }
    // canonical form: num and den share no root, so num(0) != 0
    PoleReport rep;
    rep.order = dord;
    rep.leading = v.num().coeff(0) / v.den().shifted_down(dord).eval(Rational(0));
    return rep;
}

/// Finite limit or throw; convenience for call sites that require finiteness.
inline Rational limit_or_throw(const RegulatedScalar& v) {
    auto lim = regulated_limit(v);
    if (std::holds_alternative<PoleReport>(lim))
        throw std::domain_error("pole at eps = 0 where a finite limit was required");
    return std::get<Rational>(lim);
}

}  // namespace rla
