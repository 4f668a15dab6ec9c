#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rla/dimension.hpp"
#include "rla/intertwiner.hpp"
#include "rla/matrix.hpp"
#include "rla/regulated.hpp"

namespace rla {

// Index conventions used throughout this header.
//
// The basis-change matrix Y relates the cyclic rotations of a three-argument
// composite intertwiner. Its entries carry one free pair index on each side;
// fixing the total n = m_1 + m_2 leaves a single (n+1) x (n+1) block Y(n)
// with an upper index m_2 and a lower index mt_2 (the index of the rotated
// basis being expanded). Matrices from y_* are stored with
//     row = lower index (mt_2),  column = upper index (m_2),
// so that the cyclic term of the reduced Jacobi identity is the plain
// product (matrix . vector) with the vector indexed by the rotated basis.
//
// Z matrices relate an n-argument basis with permuted arguments to the
// unpermuted one; they are stored with row = permuted-side tuple, column =
// target tuple, so that composition along a word of transpositions is the
// ordinary matrix product.
//
// Everything is templated on the scalar kind S: RegulatedScalar carries the
// full dependence on the regulator variable, while plain Rational runs the
// same formulas after substituting a fixed generic rational regulator value
// (much faster; division by zero signals a non-generic choice).

namespace detail {

inline std::string scalar_key(const Rational& v) { return rat_to_string(v); }

inline std::string scalar_key(const RegulatedScalar& v) {
    std::ostringstream os;
    for (const auto& c : v.num().coeffs()) os << rat_to_string(c) << ",";
    os << "/";
    for (const auto& c : v.den().coeffs()) os << rat_to_string(c) << ",";
    return os.str();
}

/// Coefficient table of the three-argument composite on (da, db, dc)
/// with pair (m1, m2), keyed by derivative orders of its own arguments.
template <class S>
std::map<std::vector<int>, S> t3_coeffs(const S& da, const S& db, const S& dc, int m1, int m2) {
    static const BracketScheme comb3 = BracketScheme::right_comb(3);
    return t_monomial_coeffs(comb3, std::vector<S>{da, db, dc}, std::vector<int>{m1, m2});
}

template <class S>
S coeff_at(const std::map<std::vector<int>, S>& table, const std::vector<int>& key) {
    auto it = table.find(key);
    return it == table.end() ? S(0) : it->second;
}

}  // namespace detail

/// Closed-form entry of the block Y_{abc}(n): single s-sum expression.
template <class S>
S y_entry_closed(const S& a, const S& b, const S& c, int n, int m2, int mt2) {
    S a2 = a * S(2);
    S b2 = b * S(2);
    S c2 = c * S(2);
    S base1 = S(2) - b2;
    S base2 = S(2 * mt2 + 4) - a2 - b2;
    S pref = S(binomial(n, m2)) / S(binomial(n, mt2));
    pref = pref * pochhammer(base1, m2) / pochhammer(base1, mt2);
    pref = pref / pochhammer(base2, n - mt2);
    if ((n - mt2) % 2 != 0) pref = S(0) - pref;
    S sum(0);
    for (int s = 0; s <= mt2; ++s) {
        Rational bin1 = binomial(n - m2, s);
        if (bin1 == 0) continue;
        S b3 = S(n + m2 - s + 4) - b2 - c2;
        S b4 = S(s + 2) - a2;
        S b5 = S(n - mt2 + 2) - c2;
        S b6 = a2 + b2 - S(2 * mt2 + 2);
        S term = S(bin1) * pochhammer(b3, s);
        term = term * pochhammer(b4, n - m2 - s);
        term = term * S(binomial(n - s, mt2 - s));
        term = term * pochhammer(b5, mt2 - s);
        term = term / pochhammer(b6, mt2 - s);
        sum += term;
    }
    return pref * sum;
}

/// Y_{abc}(n) from the closed form; row = mt2, column = m2.
template <class S>
Matrix<S> y_closed(const S& a, const S& b, const S& c, int n) {
    Matrix<S> y(n + 1, n + 1);
    for (int mt2 = 0; mt2 <= n; ++mt2)
        for (int m2 = 0; m2 <= n; ++m2) y(mt2, m2) = y_entry_closed(a, b, c, n, m2, mt2);
    return y;
}

inline Matrix<RegulatedScalar> y_closed(const Dim& a, const Dim& b, const Dim& c, int n) {
    return y_closed(a.scalar(), b.scalar(), c.scalar(), n);
}

/// Y_{abc}(n) by the triangular recursion over probe coefficients at the
/// derivative triples (k, 0, n-k). The probes of the rotated composite
/// vanish for mt2 > k, which makes the division well defined row by row
/// (for generic, i.e. regulated, dimensions).
template <class S>
Matrix<S> y_recursive(const S& a, const S& b, const S& c, int n) {
    // probe tables: direct composite on (a,b,c), keys are (r1,r2,r3);
    // rotated composite on (c,a,b) takes (h,f,g), own key (r3,r1,r2)
    std::vector<std::map<std::vector<int>, S>> tabc(n + 1), tcab(n + 1);
    for (int m2 = 0; m2 <= n; ++m2) {
        tabc[m2] = detail::t3_coeffs(a, b, c, n - m2, m2);
        tcab[m2] = detail::t3_coeffs(c, a, b, n - m2, m2);
    }
    auto abc_probe = [&](int m2, int k) { return detail::coeff_at(tabc[m2], {k, 0, n - k}); };
    auto cab_probe = [&](int mt2, int k) { return detail::coeff_at(tcab[mt2], {n - k, k, 0}); };
    Matrix<S> y(n + 1, n + 1);
    for (int mt2 = 0; mt2 <= n; ++mt2) {
        S diag = cab_probe(mt2, mt2);
        if (diag == S(0)) throw std::domain_error("degenerate probe; dimensions need re-regulating");
        for (int m2 = 0; m2 <= n; ++m2) {
            S acc = abc_probe(m2, mt2);
            for (int j = 0; j < mt2; ++j) acc -= y(j, m2) * cab_probe(j, mt2);
            y(mt2, m2) = acc / diag;
        }
    }
    return y;
}

inline Matrix<RegulatedScalar> y_recursive(const Dim& a, const Dim& b, const Dim& c, int n) {
    return y_recursive(a.scalar(), b.scalar(), c.scalar(), n);
}

/// Y_{abc}(n) by brute force: for each column, the full linear system over
/// every derivative triple of total order n is solved and checked for
/// consistency. Independent of both the closed form and the recursion.
template <class S>
Matrix<S> y_oracle(const S& a, const S& b, const S& c, int n) {
    std::vector<std::vector<int>> triples;
    for (int r1 = 0; r1 <= n; ++r1)
        for (int r2 = 0; r1 + r2 <= n; ++r2) triples.push_back({r1, r2, n - r1 - r2});
    int nr = static_cast<int>(triples.size());
    std::vector<std::map<std::vector<int>, S>> tabc(n + 1), tcab(n + 1);
    for (int m2 = 0; m2 <= n; ++m2) {
        tabc[m2] = detail::t3_coeffs(a, b, c, n - m2, m2);
        tcab[m2] = detail::t3_coeffs(c, a, b, n - m2, m2);
    }
    Matrix<S> lhs(nr, n + 1);
    for (int i = 0; i < nr; ++i) {
        const auto& r = triples[i];
        for (int mt2 = 0; mt2 <= n; ++mt2)
            lhs(i, mt2) = detail::coeff_at(tcab[mt2], {r[2], r[0], r[1]});
    }
    Matrix<S> y(n + 1, n + 1);
    for (int m2 = 0; m2 <= n; ++m2) {
        std::vector<S> rhs(nr, S(0));
        for (int i = 0; i < nr; ++i) rhs[i] = detail::coeff_at(tabc[m2], triples[i]);
        auto sol = solve_unique(lhs, rhs);
        if (!sol) throw std::domain_error("degenerate system; dimensions need re-regulating");
        for (int mt2 = 0; mt2 <= n; ++mt2) y(mt2, m2) = (*sol)[mt2];
    }
    return y;
}

inline Matrix<RegulatedScalar> y_oracle(const Dim& a, const Dim& b, const Dim& c, int n) {
    return y_oracle(a.scalar(), b.scalar(), c.scalar(), n);
}

/// The last-two-arguments flip at fixed n: diagonal with entries (-1)^{m2}.
template <class S = RegulatedScalar>
Matrix<S> i_matrix(int n) {
    Matrix<S> m(n + 1, n + 1);
    for (int j = 0; j <= n; ++j) m(j, j) = S(j % 2 == 0 ? 1 : -1);
    return m;
}

/// Re-bracketing matrix X_{abc}(n) = (-1)^n Y_{abc}(n) I; in the storage
/// used here the I factor scales rows.
template <class S>
Matrix<S> x_matrix(const S& a, const S& b, const S& c, int n) {
    Matrix<S> x = i_matrix<S>(n) * y_closed(a, b, c, n);
    if (n % 2 != 0)
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) x(i, j) = S(0) - x(i, j);
    return x;
}

inline Matrix<RegulatedScalar> x_matrix(const Dim& a, const Dim& b, const Dim& c, int n) {
    return x_matrix(a.scalar(), b.scalar(), c.scalar(), n);
}

/// Memoized closed-form Y; the Z construction below requests the same
/// blocks many times.
template <class S>
const Matrix<S>& y_cached(const S& a, const S& b, const S& c, int n) {
    static std::map<std::string, Matrix<S>> cache;
    std::string key = detail::scalar_key(a) + ";" + detail::scalar_key(b) + ";" +
                      detail::scalar_key(c) + ";" + std::to_string(n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, y_closed(a, b, c, n)).first;
    return it->second;
}

namespace detail {

/// Dimension of the right-comb subtree on slots j..n-1 for a given tuple.
template <class S>
S spine_dim(const std::vector<S>& dims, const std::vector<int>& m, int j) {
    int n = static_cast<int>(dims.size());
    S eps = dims[n - 1];
    for (int i = n - 2; i >= j; --i) eps = dims[i] + eps - S(m[i] + 1);
    return eps;
}

/// Z matrix of the adjacent transposition of slots s, s+1 in the default
/// scheme, acting on the m-tuples of total degree M. `dims` are the target
/// basis dimensions (before the swap).
template <class S>
Matrix<S> z_adjacent(const std::vector<S>& dims, int s, int M) {
    int n = static_cast<int>(dims.size());
    auto tuples = m_tuples_of_degree(n - 1, M);
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < tuples.size(); ++i) index[tuples[i]] = static_cast<int>(i);
    int nt = static_cast<int>(tuples.size());
    Matrix<S> z(nt, nt);
    if (s == n - 2) {
        // innermost pair: a pure flip, diagonal signs
        for (int i = 0; i < nt; ++i) z(i, i) = S(tuples[i][n - 2] % 2 == 0 ? 1 : -1);
        return z;
    }
    for (int col = 0; col < nt; ++col) {
        const auto& m = tuples[col];
        int nblock = m[s] + m[s + 1];
        S eps = spine_dim(dims, m, s + 2);
        const auto& y = y_cached(dims[s + 1], eps, dims[s], nblock);
        for (int v = 0; v <= nblock; ++v) {
            std::vector<int> mt = m;
            mt[s] = nblock - v;
            mt[s + 1] = v;
            S entry = y(m[s + 1], v);
            if (v % 2 != 0) entry = S(0) - entry;
            if (!(entry == S(0))) z(index.at(mt), col) += entry;
        }
    }
    return z;
}

/// Word of adjacent swaps carrying the identity tuple to `perm`
/// (each element k swaps positions k, k+1, applied left to right).
inline std::vector<int> swap_word(const std::vector<int>& perm) {
    int n = static_cast<int>(perm.size());
    std::vector<int> cur(n);
    for (int i = 0; i < n; ++i) cur[i] = i;
    std::vector<int> word;
    for (int i = 0; i < n; ++i) {
        int pos = i;
        while (cur[pos] != perm[i]) ++pos;
        for (int j = pos; j > i; --j) {
            std::swap(cur[j - 1], cur[j]);
            word.push_back(j - 1);
        }
    }
    return word;
}

}  // namespace detail

/// Z matrix of an arbitrary argument permutation in the default scheme,
/// built as a product of adjacent-transposition blocks along a word for
/// the permutation. `perm[j]` is the original slot whose argument lands in
/// slot j of the permuted basis; M is the total degree of the m-tuples.
template <class S>
Matrix<S> z_matrix_word(const std::vector<S>& dims, const std::vector<int>& perm, int M,
                        const std::vector<int>& word) {
    int n = static_cast<int>(dims.size());
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permutation length mismatch");
    int nt = static_cast<int>(m_tuples_of_degree(n - 1, M).size());
    Matrix<S> z = Matrix<S>::identity(nt);
    std::vector<S> cur = dims;
    std::vector<int> tuple(n);
    for (int i = 0; i < n; ++i) tuple[i] = i;
    for (int k : word) {
        z = detail::z_adjacent(cur, k, M) * z;
        std::swap(cur[k], cur[k + 1]);
        std::swap(tuple[k], tuple[k + 1]);
    }
    if (tuple != perm) throw std::invalid_argument("word does not realize the permutation");
    return z;
}

template <class S>
Matrix<S> z_matrix(const std::vector<S>& dims, const std::vector<int>& perm, int M) {
    return z_matrix_word(dims, perm, M, detail::swap_word(perm));
}

inline Matrix<RegulatedScalar> z_matrix(const std::vector<Dim>& dims, const std::vector<int>& perm,
                                        int M) {
    std::vector<RegulatedScalar> s;
    for (const Dim& d : dims) s.push_back(d.scalar());
    return z_matrix(s, perm, M);
}

/// Memoized z_matrix keyed by dims, permutation and degree.
template <class S>
const Matrix<S>& z_cached(const std::vector<S>& dims, const std::vector<int>& perm, int M) {
    static std::map<std::string, Matrix<S>> cache;
    std::string key;
    for (const S& d : dims) key += detail::scalar_key(d) + ";";
    key += "|";
    for (int p : perm) key += std::to_string(p) + ",";
    key += "|" + std::to_string(M);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, z_matrix(dims, perm, M)).first;
    return it->second;
}

/// Z matrix by direct linear solve, for arbitrary source and target
/// schemes; the independent cross-check for z_matrix. Row mt (tuple of the
/// permuted basis on scheme_perm), column m (target basis on scheme).
template <class S>
Matrix<S> z_oracle(const BracketScheme& scheme_perm, const BracketScheme& scheme,
                   const std::vector<S>& dims, const std::vector<int>& perm, int M) {
    int n = static_cast<int>(dims.size());
    auto tuples = m_tuples_of_degree(n - 1, M);
    int nt = static_cast<int>(tuples.size());
    std::vector<S> dims_perm;
    for (int j = 0; j < n; ++j) dims_perm.push_back(dims[perm[j]]);

    // target-basis coefficient tables and the union of derivative keys
    std::vector<std::map<std::vector<int>, S>> target(nt);
    std::map<std::vector<int>, int> key_index;
    for (int i = 0; i < nt; ++i) {
        target[i] = t_monomial_coeffs(scheme, dims, tuples[i]);
        for (const auto& [k, v] : target[i]) key_index.emplace(k, 0);
    }
    // permuted-side tables, re-keyed to derivative orders of the original
    // argument order: own slot j carries argument perm[j]
    std::vector<std::map<std::vector<int>, S>> source(nt);
    for (int i = 0; i < nt; ++i) {
        auto own = t_monomial_coeffs(scheme_perm, dims_perm, tuples[i]);
        for (const auto& [u, v] : own) {
            std::vector<int> r(n, 0);
            for (int j = 0; j < n; ++j) r[perm[j]] = u[j];
            source[i][r] = v;
            key_index.emplace(r, 0);
        }
    }
    int nk = 0;
    for (auto& [k, idx] : key_index) idx = nk++;
    Matrix<S> lhs(nk, nt);
    for (int m = 0; m < nt; ++m)
        for (const auto& [k, v] : target[m]) lhs(key_index.at(k), m) = v;
    Matrix<S> z(nt, nt);
    for (int mt = 0; mt < nt; ++mt) {
        std::vector<S> rhs(nk, S(0));
        for (const auto& [k, v] : source[mt]) rhs[key_index.at(k)] = v;
        auto sol = solve_unique(lhs, rhs);
        if (!sol) throw std::domain_error("degenerate basis; dimensions need re-regulating");
        for (int m = 0; m < nt; ++m) z(mt, m) = (*sol)[m];
    }
    return z;
}

inline Matrix<RegulatedScalar> z_oracle(const BracketScheme& scheme_perm,
                                        const BracketScheme& scheme, const std::vector<Dim>& dims,
                                        const std::vector<int>& perm, int M) {
    std::vector<RegulatedScalar> s;
    for (const Dim& d : dims) s.push_back(d.scalar());
    return z_oracle(scheme_perm, scheme, s, perm, M);
}

}  // namespace rla
