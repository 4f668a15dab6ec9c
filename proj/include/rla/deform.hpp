#pragma once

// Order-by-order deformation of the reduced bracket on the pure grade-1
// sector: first-order cocycle checks, obstruction operators G^n, and exact
// integration of the recursion b2 Gamma_n = G^n.

#include <stdexcept>
#include <vector>

#include "rla/cochain.hpp"

namespace rla {

/// Formal power-series perturbation of the base bracket. The base Gamma0 is
/// the structure-constant table carried by the sector; terms[i] is the flat
/// degree-2 cochain Gamma_{i+1} (coefficient of lambda^{i+1}).
struct DeformationSeries {
    std::vector<std::vector<Rational>> terms;

    const std::vector<Rational>& order(int k) const {
        if (k < 1 || k > static_cast<int>(terms.size()))
            throw std::out_of_range("series has no term of order " + std::to_string(k));
        return terms[static_cast<size_t>(k) - 1];
    }
    int max_order() const { return static_cast<int>(terms.size()); }
};

struct CocycleCheck {
    bool ok = false;
    std::vector<Rational> residual;  // b2(Gamma_1), flat degree-3
};

/// First-order consistency: the perturbation must be a 2-cocycle.
inline CocycleCheck first_order_cocycle_check(const Grade1Sector& sector,
                                              const std::vector<Rational>& gamma1) {
    CocycleCheck out;
    out.residual = sector.apply_b(2, gamma1);
    out.ok = true;
    for (const auto& v : out.residual)
        if (v != 0) out.ok = false;
    return out;
}

/// The trivial (gauge) first-order perturbation b1(q).
inline std::vector<Rational> trivial_first_order(const Grade1Sector& sector,
                                                 const std::vector<Rational>& q) {
    return sector.apply_b(1, q);
}

/// Obstruction operator at order n >= 2: minus the cyclic sum of nested
/// lower-order brackets. On grade-1 arguments every Y weight is the 1x1
/// identity, so the cyclic twists reduce to plain argument rotation.
inline std::vector<Rational> obstruction_Gn(const Grade1Sector& sector,
                                            const DeformationSeries& series, int n) {
    if (n < 2) throw std::invalid_argument("obstruction operators start at order 2");
    if (series.max_order() < n - 1)
        throw std::invalid_argument("series must reach order " + std::to_string(n - 1));
    int d = sector.field_count();
    std::vector<Rational> g(sector.slot_count(3), 0);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) {
                std::vector<Rational> acc(d, 0);
                for (int k = 1; k <= n - 1; ++k) {
                    const auto& outer = series.order(k);
                    const auto& inner = series.order(n - k);
                    auto nest = [&](int x, int y, int z) {
                        for (int j = 0; j < d; ++j) {
                            Rational iv = inner[(static_cast<size_t>(y) * d + z) * d + j];
                            if (iv == 0) continue;
                            for (int e = 0; e < d; ++e)
                                acc[e] += iv * outer[(static_cast<size_t>(x) * d + j) * d + e];
                        }
                    };
                    nest(a, b, c);
                    nest(b, c, a);
                    nest(c, a, b);
                }
                for (int e = 0; e < d; ++e)
                    g[((static_cast<size_t>(a) * d + b) * d + c) * d + e] = -acc[e];
            }
    return g;
}

/// Empirical test of b3(G^n) = 0. Reported, never assumed: the underlying
/// identity is conjectural.
inline bool bG_test(const Grade1Sector& sector, const DeformationSeries& series, int n) {
    auto g = obstruction_Gn(sector, series, n);
    for (const auto& v : sector.apply_b(3, g))
        if (v != 0) return false;
    return true;
}

struct IntegrateResult {
    bool obstructed = false;
    std::vector<Rational> gamma;    // flat degree-2 solution, valid unless obstructed
    std::vector<Rational> witness;  // G^n itself when no solution exists
    int ambiguity_dim = 0;          // dim of the Z^2 solution ambiguity
    bool bg_zero = false;           // result of bG_test for this order
};

/// Solve b2(Gamma_n) = G^n over the symmetric degree-2 cochains. The
/// particular solution takes the lexicographically first pivots of the flat
/// system; any other solution differs by an element of Z^2.
inline IntegrateResult integrate_step(const Grade1Sector& sector, const DeformationSeries& series,
                                      int n) {
    IntegrateResult res;
    auto g = obstruction_Gn(sector, series, n);
    {
        auto b3g = sector.apply_b(3, g);
        res.bg_zero = true;
        for (const auto& v : b3g)
            if (v != 0) res.bg_zero = false;
    }
    auto basis = sector.symmetric_basis(2);
    int rows = sector.slot_count(3);
    int cols = static_cast<int>(basis.size());
    Matrix<Rational> m(rows, cols);
    for (int c = 0; c < cols; ++c) {
        auto col = sector.apply_b(2, basis[c]);
        for (int r = 0; r < rows; ++r) m(r, c) = col[r];
    }
    auto sol = solve_rectangular(m, g);
    res.ambiguity_dim = cols - sol.rank;
    if (!sol.solvable) {
        res.obstructed = true;
        res.witness = std::move(g);
        return res;
    }
    res.gamma.assign(sector.slot_count(2), 0);
    for (int c = 0; c < cols; ++c) {
        if (sol.particular[c] == 0) continue;
        for (size_t i = 0; i < res.gamma.size(); ++i)
            res.gamma[i] += sol.particular[c] * basis[c][i];
    }
    return res;
}

}  // namespace rla
