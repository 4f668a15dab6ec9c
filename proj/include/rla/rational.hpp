#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rla {

/// Exact rational scalar. mpq_class keeps the canonical form
/// (denominator > 0, gcd = 1) after every operation.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p/q" or "p" (arbitrary precision).
inline Rational rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

/// Emits "p/q", or "p" when the denominator is 1.
inline std::string rat_to_string(const Rational& r) {
    return r.get_str();
}

inline Rational factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial of negative");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

inline Rational binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return Rational(b);
}

/// Rising factorial x(x+1)...(x+n-1); empty product for n = 0.
/// Works for any field-like scalar constructible from int.
template <class S>
S pochhammer(const S& x, int n) {
    if (n < 0) throw std::invalid_argument("pochhammer with negative count");
    S acc(1);
    S term = x;
    for (int k = 0; k < n; ++k) {
        acc = acc * term;
        term = term + S(1);
    }
    return acc;
}

}  // namespace rla
