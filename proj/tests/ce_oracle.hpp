// Brute-force adjoint Chevalley-Eilenberg cohomology of a finite-dimensional
// Lie algebra, written independently of the library's complex: antisymmetric
// cochains with the textbook differential, ranks over the rationals.
#pragma once

#include <functional>
#include <vector>

#include "rla/cochain.hpp"

namespace ce_oracle {

using rla::Matrix;
using rla::Rational;

struct Algebra {
    int d = 0;
    std::vector<std::vector<std::vector<Rational>>> c;  // c[i][j][k] = [e_i,e_j]^k

    std::vector<Rational> bracket(const std::vector<Rational>& x,
                                  const std::vector<Rational>& y) const {
        std::vector<Rational> out(d, 0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (x[i] != 0 && y[j] != 0)
                    for (int k = 0; k < d; ++k) out[k] += x[i] * y[j] * c[i][j][k];
        return out;
    }
};

// basis of C^n: (strictly increasing argument tuple, output index)
inline std::vector<std::vector<int>> tuples(int d, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> t(n);
    std::function<void(int, int)> rec = [&](int pos, int lo) {
        if (pos == n) {
            out.push_back(t);
            return;
        }
        for (int v = lo; v < d; ++v) {
            t[pos] = v;
            rec(pos + 1, v + 1);
        }
    };
    rec(0, 0);
    return out;
}

// evaluation of a basis cochain (tuple, out) on an arbitrary index list,
// extended antisymmetrically
inline Rational eval_basis(const std::vector<int>& tuple, std::vector<int> args) {
    int sign = 1;
    for (size_t i = 0; i < args.size(); ++i)
        for (size_t j = i + 1; j < args.size(); ++j) {
            if (args[i] == args[j]) return 0;
            if (args[i] > args[j]) {
                std::swap(args[i], args[j]);
                sign = -sign;
            }
        }
    return args == tuple ? Rational(sign) : Rational(0);
}

// standard differential:
// (dw)(x_0..x_n) = sum_i (-1)^i [x_i, w(..x_i^..)]
//                + sum_{i<j} (-1)^{i+j} w([x_i,x_j], ..x_i^..x_j^..)
inline Matrix<Rational> differential(const Algebra& g, int n) {
    auto dom = tuples(g.d, n);
    auto cod = tuples(g.d, n + 1);
    int rows = static_cast<int>(cod.size()) * g.d;
    int cols = static_cast<int>(dom.size()) * g.d;
    Matrix<Rational> m(rows, cols);
    for (size_t ci = 0; ci < dom.size(); ++ci)
        for (int out = 0; out < g.d; ++out) {
            int col = static_cast<int>(ci) * g.d + out;
            for (size_t ri = 0; ri < cod.size(); ++ri) {
                const auto& xs = cod[ri];
                std::vector<Rational> val(g.d, 0);
                for (int i = 0; i <= n; ++i) {
                    std::vector<int> rest;
                    for (int t = 0; t <= n; ++t)
                        if (t != i) rest.push_back(xs[t]);
                    Rational coeff = eval_basis(dom[ci], rest);
                    if (coeff == 0) continue;
                    if (i % 2 != 0) coeff = -coeff;
                    std::vector<Rational> wv(g.d, 0);
                    wv[out] = coeff;
                    std::vector<Rational> xi(g.d, 0);
                    xi[xs[i]] = 1;
                    auto br = g.bracket(xi, wv);
                    for (int k = 0; k < g.d; ++k) val[k] += br[k];
                }
                for (int i = 0; i <= n; ++i)
                    for (int j = i + 1; j <= n; ++j) {
                        std::vector<Rational> xi(g.d, 0), xj(g.d, 0);
                        xi[xs[i]] = 1;
                        xj[xs[j]] = 1;
                        auto br = g.bracket(xi, xj);
                        std::vector<int> rest;
                        for (int t = 0; t <= n; ++t)
                            if (t != i && t != j) rest.push_back(xs[t]);
                        for (int b = 0; b < g.d; ++b) {
                            if (br[b] == 0) continue;
                            std::vector<int> args{b};
                            args.insert(args.end(), rest.begin(), rest.end());
                            Rational coeff = br[b] * eval_basis(dom[ci], args);
                            if (coeff == 0) continue;
                            if ((i + j) % 2 != 0) coeff = -coeff;
                            val[out] += coeff;
                        }
                    }
                for (int k = 0; k < g.d; ++k) m(static_cast<int>(ri) * g.d + k, col) = val[k];
            }
        }
    return m;
}

struct Dims {
    int z = 0, b = 0, h = 0;
};

inline Dims cohomology(const Algebra& g, int n) {
    Dims out;
    int dim_cn = static_cast<int>(tuples(g.d, n).size()) * g.d;
    out.z = dim_cn - rla::rank_rational(differential(g, n));
    if (n == 1) {
        // d^0 v = x -> [x, v]: the adjoint map, rank computed directly
        Matrix<Rational> ad(g.d * g.d, g.d);
        for (int v = 0; v < g.d; ++v)
            for (int x = 0; x < g.d; ++x)
                for (int k = 0; k < g.d; ++k) ad(x * g.d + k, v) = g.c[x][v][k];
        out.b = rla::rank_rational(ad);
    } else {
        out.b = rla::rank_rational(differential(g, n - 1));
    }
    out.h = out.z - out.b;
    return out;
}

inline Algebra from_table(const rla::ReducedSpace& sp, const rla::StructureConstants& f) {
    Algebra g;
    g.d = sp.dim(1);
    g.c.assign(g.d, std::vector<std::vector<Rational>>(g.d, std::vector<Rational>(g.d, 0)));
    const auto& labels = sp.labels(1);
    for (int i = 0; i < g.d; ++i)
        for (int j = 0; j < g.d; ++j)
            for (int k = 0; k < g.d; ++k) g.c[i][j][k] = f.get(labels[i], labels[j], labels[k]);
    return g;
}

}  // namespace ce_oracle
