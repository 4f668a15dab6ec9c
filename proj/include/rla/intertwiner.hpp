#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "rla/poly.hpp"
#include "rla/rational.hpp"
#include "rla/scheme.hpp"

namespace rla {

/// Coefficient of the local two-argument intertwiner:
/// (-1)^q (c+b-a)_p / p! * (c+a-b)_q / q!  on the support p+q = a+b-c-1,
/// and 0 elsewhere.
inline Rational lambda_coeff(int a, int b, int c, int p, int q) {
    if (p < 0 || q < 0 || p + q != a + b - c - 1) return 0;
    Rational val = pochhammer(Rational(c + b - a), p) / factorial(p) *
                   pochhammer(Rational(c + a - b), q) / factorial(q);
    return (q % 2 == 0) ? val : -val;
}

/// Same coefficient with the target dimension eliminated through
/// c = dimL + dimR - m - 1; works for any scalar kind (rational or
/// regulated dimensions).
template <class S>
S lambda_node_coeff(const S& dim_l, const S& dim_r, int m, int p, int q) {
    S base_r = dim_r * S(2) - S(m + 1);
    S base_l = dim_l * S(2) - S(m + 1);
    S val = pochhammer(base_r, p) * S(Rational(1) / factorial(p)) *
            pochhammer(base_l, q) * S(Rational(1) / factorial(q));
    return (q % 2 == 0) ? val : S(-val);
}

/// lambda^c_{ab}(f, g) = sum_{p+q=a+b-c-1} lambda(p,q) d^p f * d^q g.
inline Poly lambda_apply(int a, int b, int c, const Poly& f, const Poly& g) {
    if (c >= a + b) throw std::invalid_argument("lambda_apply requires c < a+b");
    int m = a + b - c - 1;
    Poly out;
    for (int p = 0; p <= m; ++p) {
        int q = m - p;
        Rational coeff = lambda_coeff(a, b, c, p, q);
        if (coeff == 0) continue;
        out = out + coeff * (f.derivative(p) * g.derivative(q));
    }
    return out;
}

/// One element of the intertwiner basis: a bracket scheme with an m-tuple
/// assigned to its internal nodes in pre-order, on fixed argument dimensions.
struct IntertwinerBasisElement {
    BracketScheme scheme;
    std::vector<int> dims;
    std::vector<int> m_tuple;
    int target = 0;  // e
};

/// Total degree M = sum(a_i) - e - n + 1 of the m-tuples of the basis.
inline int total_m(const std::vector<int>& dims, int e) {
    int s = 0;
    for (int a : dims) s += a;
    return s - e - static_cast<int>(dims.size()) + 1;
}

/// Intermediate dimensions of the default scheme, (eps_1,...,eps_{n-2}, e).
/// Some of them may be negative; the unitarity bound is imposed only on the
/// reduced space, not here.
inline std::vector<int> intermediate_dims(const std::vector<int>& dims, const std::vector<int>& m) {
    int n = static_cast<int>(dims.size());
    if (static_cast<int>(m.size()) != n - 1)
        throw std::invalid_argument("m-tuple length must be n-1");
    std::vector<int> out;
    int eps = dims[n - 1];  // running dimension of the right spine
    std::vector<int> spine(n);
    spine[n - 1] = eps;
    for (int i = n - 2; i >= 0; --i) {
        eps = dims[i] + eps - m[i] - 1;
        spine[i] = eps;
    }
    for (int i = 1; i <= n - 2; ++i) out.push_back(spine[i]);
    out.push_back(spine[0]);  // e
    return out;
}

namespace detail {

template <class Value, class LeafFn, class NodeFn>
struct SchemeFold {
    const BracketScheme& scheme;
    const std::map<int, int>& m_of_node;
    LeafFn on_leaf;
    NodeFn on_node;
    int next_leaf = 0;

    Value run(int id) {
        const auto& n = scheme.node(id);
        if (n.is_leaf()) return on_leaf(next_leaf++);
        Value l = run(n.left);
        Value r = run(n.right);
        return on_node(std::move(l), std::move(r), m_of_node.at(id));
    }
};

inline std::map<int, int> assign_m(const BracketScheme& scheme, const std::vector<int>& m) {
    auto internals = scheme.internal_preorder();
    if (internals.size() != m.size())
        throw std::invalid_argument("m-tuple length does not match scheme");
    std::map<int, int> out;
    for (size_t i = 0; i < internals.size(); ++i) out[internals[i]] = m[i];
    return out;
}

}  // namespace detail

/// All basis elements with the given target dimension: the m-tuples are the
/// compositions of M into n-1 nonnegative parts, in ascending lexicographic
/// order. Empty when M < 0.
inline std::vector<IntertwinerBasisElement> enumerate_m_tuples(const BracketScheme& scheme,
                                                               const std::vector<int>& dims, int e) {
    std::vector<IntertwinerBasisElement> out;
    int n = static_cast<int>(dims.size());
    if (scheme.leaf_count() != n) throw std::invalid_argument("scheme arity mismatch");
    int M = total_m(dims, e);
    if (M < 0) return out;
    std::vector<int> m(n - 1 > 0 ? n - 1 : 0, 0);
    if (n == 1) {
        if (M == 0) out.push_back({scheme, dims, m, e});
        return out;
    }
    // lexicographic enumeration of compositions
    std::vector<int> cur(n - 1, 0);
    auto rec = [&](auto&& self, int pos, int rest) -> void {
        if (pos == n - 2) {
            cur[pos] = rest;
            out.push_back({scheme, dims, cur, e});
            return;
        }
        for (int v = 0; v <= rest; ++v) {
            cur[pos] = v;
            self(self, pos + 1, rest - v);
        }
    };
    rec(rec, 0, M);
    return out;
}

/// All m-tuples of total degree M (any target), same order.
inline std::vector<std::vector<int>> m_tuples_of_degree(int parts, int M) {
    std::vector<std::vector<int>> out;
    if (M < 0) return out;
    if (parts == 0) {
        if (M == 0) out.push_back({});
        return out;
    }
    std::vector<int> cur(parts, 0);
    auto rec = [&](auto&& self, int pos, int rest) -> void {
        if (pos == parts - 1) {
            cur[pos] = rest;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= rest; ++v) {
            cur[pos] = v;
            self(self, pos + 1, rest - v);
        }
    };
    rec(rec, 0, M);
    return out;
}

/// Applies the nested composition of lambdas to concrete polynomial
/// arguments, following the scheme.
inline Poly t_apply(const IntertwinerBasisElement& elem, const std::vector<Poly>& fs) {
    if (fs.size() != elem.dims.size()) throw std::invalid_argument("argument count mismatch");
    struct Sub {
        int dim;
        Poly val;
    };
    auto m_of = detail::assign_m(elem.scheme, elem.m_tuple);
    auto on_leaf = [&](int i) { return Sub{elem.dims[i], fs[i]}; };
    auto on_node = [&](Sub l, Sub r, int m) {
        int c = l.dim + r.dim - m - 1;
        return Sub{c, lambda_apply(l.dim, r.dim, c, l.val, r.val)};
    };
    detail::SchemeFold<Sub, decltype(on_leaf), decltype(on_node)> fold{elem.scheme, m_of, on_leaf,
                                                                       on_node};
    return fold.run(elem.scheme.root()).val;
}

/// Coefficient table of a composite intertwiner as a pure differential
/// operator: map (r_1,...,r_n) -> coefficient of d^{r_1}f_1 ... d^{r_n}f_n,
/// with sum r_i = sum m_i. Works over exact rationals (integer dimensions)
/// or regulated scalars (regulated dimensions).
template <class S>
std::map<std::vector<int>, S> t_monomial_coeffs(const BracketScheme& scheme,
                                                const std::vector<S>& dims,
                                                const std::vector<int>& m_tuple) {
    using CoeffMap = std::map<std::vector<int>, S>;
    struct Sub {
        S dim;
        CoeffMap coeffs;
    };
    auto deriv = [](const CoeffMap& cm) {
        CoeffMap out;
        for (const auto& [r, c] : cm) {
            for (size_t i = 0; i < r.size(); ++i) {
                std::vector<int> r2 = r;
                ++r2[i];
                auto it = out.find(r2);
                if (it == out.end())
                    out.emplace(std::move(r2), c);
                else
                    it->second += c;
            }
        }
        return out;
    };
    auto m_of = detail::assign_m(scheme, m_tuple);
    auto on_leaf = [&](int i) {
        CoeffMap cm;
        cm[{0}] = S(1);
        return Sub{dims[i], std::move(cm)};
    };
    auto on_node = [&](Sub l, Sub r, int m) {
        S c = l.dim + r.dim - S(m + 1);
        CoeffMap out;
        CoeffMap dl = l.coeffs;
        for (int p = 0; p <= m; ++p) {
            int q = m - p;
            S coeff = lambda_node_coeff(l.dim, r.dim, m, p, q);
            CoeffMap dr = r.coeffs;
            for (int k = 0; k < q; ++k) dr = deriv(dr);
            if (!(coeff == S(0))) {
                for (const auto& [rl, cl] : dl)
                    for (const auto& [rr, cr] : dr) {
                        std::vector<int> key = rl;
                        key.insert(key.end(), rr.begin(), rr.end());
                        S term = coeff * cl * cr;
                        auto it = out.find(key);
                        if (it == out.end())
                            out.emplace(std::move(key), std::move(term));
                        else
                            it->second += term;
                    }
            }
            dl = deriv(dl);
        }
        // drop exact zeros to keep downstream sums small
        for (auto it = out.begin(); it != out.end();)
            it = it->second == S(0) ? out.erase(it) : std::next(it);
        return Sub{std::move(c), std::move(out)};
    };
    detail::SchemeFold<Sub, decltype(on_leaf), decltype(on_node)> fold{scheme, m_of, on_leaf, on_node};
    return fold.run(scheme.root()).coeffs;
}

}  // namespace rla
