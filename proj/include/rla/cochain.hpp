#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rla/reduced.hpp"
#include "rla/transform.hpp"

namespace rla {

/// One argument of a cochain evaluation: a basis field of the reduced
/// space together with the (possibly regulated) dimension it carries.
/// The dimension travels with the argument through permutations and
/// bracket insertions, which keeps all Z-matrix identities consistent.
template <class S>
struct CochainArg {
    S dim;
    int grade = 0;
    int index = 0;
};

/// Cochains are represented functionally: degree n maps n arguments and an
/// (n-1)-tuple of m-indices to a coefficient vector over the basis of the
/// target grade e = sum(a_i) - sum(m_i) - n + 1 (empty for unpopulated e).
template <class S>
using Cochain =
    std::function<std::vector<S>(const std::vector<CochainArg<S>>&, const std::vector<int>&)>;

/// Target grade of a component.
inline int cochain_target_grade(const std::vector<int>& grades, const std::vector<int>& m) {
    int e = 1 - static_cast<int>(grades.size());
    for (int a : grades) e += a;
    for (int v : m) e -= v;
    return e;
}

/// The slot bound: m_i <= sum_{s=i}^n a_s - sum_{t=i+1}^{n-1} m_t - n + i,
/// equivalently every right-spine dimension (including the target) is
/// nonnegative. Components outside the bound are zero by convention.
inline bool cochain_slot_admissible(const std::vector<int>& grades, const std::vector<int>& m) {
    int n = static_cast<int>(grades.size());
    if (static_cast<int>(m.size()) != n - 1) throw std::invalid_argument("m-tuple length mismatch");
    int eps = grades[n - 1];
    for (int i = n - 2; i >= 0; --i) {
        eps = grades[i] + eps - m[i] - 1;
        if (eps < 0) return false;
    }
    return true;
}

inline int perm_sign(const std::vector<int>& perm) {
    int inv = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

namespace detail {

template <class S>
std::vector<S> arg_dims(const std::vector<CochainArg<S>>& args) {
    std::vector<S> out;
    for (const auto& a : args) out.push_back(a.dim);
    return out;
}

template <class S>
std::string arg_key(const CochainArg<S>& a) {
    return scalar_key(a.dim) + "#" + std::to_string(a.grade) + "#" + std::to_string(a.index);
}

inline const std::string& label_of(const ReducedSpace& space, int grade, int index) {
    return space.labels(grade)[index];
}

}  // namespace detail

/// Wraps a cochain with a lookup cache keyed by arguments and m-tuple.
template <class S>
Cochain<S> memoized(Cochain<S> inner) {
    auto cache = std::make_shared<std::map<std::string, std::vector<S>>>();
    return [inner = std::move(inner), cache](const std::vector<CochainArg<S>>& args,
                                             const std::vector<int>& m) {
        std::string key;
        for (const auto& a : args) key += detail::arg_key(a) + ";";
        key += "|";
        for (int v : m) key += std::to_string(v) + ",";
        auto it = cache->find(key);
        if (it != cache->end()) return it->second;
        auto val = inner(args, m);
        cache->emplace(std::move(key), val);
        return val;
    };
}

/// The coboundary b^n: C^n -> C^{n+1}. First sum: each argument pulled to
/// the front and bracketed with the remaining evaluation; second sum: each
/// pair bracketed and inserted in the last slot (which keeps the default
/// right-comb scheme). Both carry the signed permutation matrix Z^e of the
/// respective argument reshuffle. The overall sign is chosen so that for
/// n = 1, q = id one gets b(q) = +Gamma.
template <class S>
Cochain<S> coboundary(const ReducedSpace& space, const StructureConstants& f, int n,
                      Cochain<S> omega) {
    if (n < 1) throw std::invalid_argument("coboundary defined here for degree >= 1");
    const ReducedSpace* sp = &space;
    const StructureConstants* fp = &f;
    return [sp, fp, n, omega = std::move(omega)](const std::vector<CochainArg<S>>& args,
                                                 const std::vector<int>& m) -> std::vector<S> {
        if (static_cast<int>(args.size()) != n + 1 || static_cast<int>(m.size()) != n)
            throw std::invalid_argument("coboundary arity mismatch");
        std::vector<int> grades;
        for (const auto& a : args) grades.push_back(a.grade);
        int e = cochain_target_grade(grades, m);
        int de = sp->dim(e);
        std::vector<S> result(de, S(0));
        if (de == 0) return result;
        if (!cochain_slot_admissible(grades, m)) return result;

        int M = std::accumulate(m.begin(), m.end(), 0);
        auto tuples = m_tuples_of_degree(n, M);
        int col = -1;
        for (size_t i = 0; i < tuples.size(); ++i)
            if (tuples[i] == m) col = static_cast<int>(i);
        auto dims = detail::arg_dims(args);
        const auto& elabels = sp->labels(e);
        int sign1 = (n % 2 == 0) ? -1 : 1;  // (-1)^{n+1}

        // single-extraction terms
        for (int i = 0; i <= n; ++i) {
            std::vector<int> perm{i};
            for (int j = 0; j <= n; ++j)
                if (j != i) perm.push_back(j);
            int sgn = (i % 2 == 0) ? 1 : -1;
            const auto& z = z_cached(dims, perm, M);
            std::vector<CochainArg<S>> rest;
            for (int j = 0; j <= n; ++j)
                if (j != i) rest.push_back(args[j]);
            const std::string& li = detail::label_of(*sp, args[i].grade, args[i].index);
            for (size_t r = 0; r < tuples.size(); ++r) {
                const S& zrc = z(static_cast<int>(r), col);
                if (zrc == S(0)) continue;
                const auto& mt = tuples[r];
                std::vector<int> inner_m(mt.begin() + 1, mt.end());
                auto inner = omega(rest, inner_m);
                if (inner.empty()) continue;
                std::vector<int> rest_grades;
                for (const auto& a : rest) rest_grades.push_back(a.grade);
                int e_in = cochain_target_grade(rest_grades, inner_m);
                const auto& dlabels = sp->labels(e_in);
                for (int ei = 0; ei < de; ++ei)
                    for (size_t di = 0; di < dlabels.size(); ++di) {
                        Rational fv = fp->get(li, dlabels[di], elabels[ei]);
                        if (fv == 0) continue;
                        S term = S(fv) * inner[di] * zrc;
                        if (sign1 * sgn < 0) term = S(0) - term;
                        result[ei] += term;
                    }
            }
        }

        // pair-insertion terms
        for (int j = 0; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                std::vector<int> perm;
                for (int t = 0; t <= n; ++t)
                    if (t != j && t != k) perm.push_back(t);
                perm.push_back(j);
                perm.push_back(k);
                int sgn = perm_sign(perm);
                const auto& z = z_cached(dims, perm, M);
                const std::string& lj = detail::label_of(*sp, args[j].grade, args[j].index);
                const std::string& lk = detail::label_of(*sp, args[k].grade, args[k].index);
                for (size_t r = 0; r < tuples.size(); ++r) {
                    const S& zrc = z(static_cast<int>(r), col);
                    if (zrc == S(0)) continue;
                    const auto& mt = tuples[r];
                    int m_last = mt[n - 1];
                    int c = args[j].grade + args[k].grade - 1 - m_last;
                    if (!sp->populated(c)) continue;
                    S dim_c = dims[j] + dims[k] - S(m_last + 1);
                    std::vector<int> outer_m(mt.begin(), mt.end() - 1);
                    const auto& clabels = sp->labels(c);
                    for (size_t ci = 0; ci < clabels.size(); ++ci) {
                        Rational fv = fp->get(lj, lk, clabels[ci]);
                        if (fv == 0) continue;
                        std::vector<CochainArg<S>> inner_args;
                        for (int t = 0; t <= n; ++t)
                            if (t != j && t != k) inner_args.push_back(args[t]);
                        inner_args.push_back(CochainArg<S>{dim_c, c, static_cast<int>(ci)});
                        auto inner = omega(inner_args, outer_m);
                        if (inner.empty()) continue;
                        for (int ei = 0; ei < de; ++ei) {
                            S term = S(fv) * inner[ei] * zrc;
                            if (sgn > 0) term = S(0) - term;
                            result[ei] += term;
                        }
                    }
                }
            }
        return result;
    };
}

/// Fully symmetrized form of the same coboundary: both sums range over all
/// permutations with the 1/n! and 1/(2 (n-1)!) weights. Agrees with
/// coboundary() on symmetric inputs.
template <class S>
Cochain<S> coboundary_symmetrized(const ReducedSpace& space, const StructureConstants& f, int n,
                                  Cochain<S> omega) {
    if (n < 1) throw std::invalid_argument("coboundary defined here for degree >= 1");
    const ReducedSpace* sp = &space;
    const StructureConstants* fp = &f;
    return [sp, fp, n, omega = std::move(omega)](const std::vector<CochainArg<S>>& args,
                                                 const std::vector<int>& m) -> std::vector<S> {
        std::vector<int> grades;
        for (const auto& a : args) grades.push_back(a.grade);
        int e = cochain_target_grade(grades, m);
        int de = sp->dim(e);
        std::vector<S> result(de, S(0));
        if (de == 0 || !cochain_slot_admissible(grades, m)) return result;

        int M = std::accumulate(m.begin(), m.end(), 0);
        auto tuples = m_tuples_of_degree(n, M);
        int col = -1;
        for (size_t i = 0; i < tuples.size(); ++i)
            if (tuples[i] == m) col = static_cast<int>(i);
        auto dims = detail::arg_dims(args);
        const auto& elabels = sp->labels(e);

        Rational fact_n = factorial(n);
        Rational w1 = Rational(1) / fact_n;
        Rational w2 = Rational(1) / (2 * factorial(n - 1));
        int sign1 = (n % 2 == 0) ? -1 : 1;  // global sign, as in coboundary()

        std::vector<int> perm(n + 1);
        for (int i = 0; i <= n; ++i) perm[i] = i;
        do {
            int sgn = perm_sign(perm);
            const auto& z = z_cached(dims, perm, M);
            std::vector<CochainArg<S>> permuted;
            for (int t = 0; t <= n; ++t) permuted.push_back(args[perm[t]]);
            for (size_t r = 0; r < tuples.size(); ++r) {
                const S& zrc = z(static_cast<int>(r), col);
                if (zrc == S(0)) continue;
                const auto& mt = tuples[r];
                // extraction term: Gamma(X_{p0}, omega(X_{p1}..X_{pn}))
                {
                    std::vector<int> inner_m(mt.begin() + 1, mt.end());
                    std::vector<CochainArg<S>> rest(permuted.begin() + 1, permuted.end());
                    auto inner = omega(rest, inner_m);
                    if (!inner.empty()) {
                        std::vector<int> rg;
                        for (const auto& a : rest) rg.push_back(a.grade);
                        const auto& dlabels = sp->labels(cochain_target_grade(rg, inner_m));
                        const std::string& li =
                            detail::label_of(*sp, permuted[0].grade, permuted[0].index);
                        for (int ei = 0; ei < de; ++ei)
                            for (size_t di = 0; di < dlabels.size(); ++di) {
                                Rational fv = fp->get(li, dlabels[di], elabels[ei]);
                                if (fv == 0) continue;
                                result[ei] += S(fv * w1 * sign1 * sgn) * inner[di] * zrc;
                            }
                    }
                }
                // insertion term: omega(X_{p0},..,X_{p_{n-2}}, Gamma(X_{p_{n-1}}, X_{p_n}))
                {
                    int m_last = mt[n - 1];
                    const auto& xj = permuted[n - 1];
                    const auto& xk = permuted[n];
                    int c = xj.grade + xk.grade - 1 - m_last;
                    if (!sp->populated(c)) continue;
                    S dim_c = xj.dim + xk.dim - S(m_last + 1);
                    std::vector<int> outer_m(mt.begin(), mt.end() - 1);
                    const auto& clabels = sp->labels(c);
                    const std::string& lj = detail::label_of(*sp, xj.grade, xj.index);
                    const std::string& lk = detail::label_of(*sp, xk.grade, xk.index);
                    for (size_t ci = 0; ci < clabels.size(); ++ci) {
                        Rational fv = fp->get(lj, lk, clabels[ci]);
                        if (fv == 0) continue;
                        std::vector<CochainArg<S>> inner_args(permuted.begin(),
                                                              permuted.begin() + (n - 1));
                        inner_args.push_back(CochainArg<S>{dim_c, c, static_cast<int>(ci)});
                        auto inner = omega(inner_args, outer_m);
                        if (inner.empty()) continue;
                        for (int ei = 0; ei < de; ++ei)
                            result[ei] -= S(fv * w2 * sgn) * inner[ei] * zrc;
                    }
                }
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return result;
    };
}

/// b^0: V -> C^1, X mapped to A -> Gamma(A, X) at the unique
/// grade-preserving m-component (m = x - 1). The complex's degree-zero
/// convention, by analogy with Lie algebra cohomology.
template <class S>
Cochain<S> coboundary_zero(const ReducedSpace& space, const StructureConstants& f, int x_grade,
                           int x_index) {
    const ReducedSpace* sp = &space;
    const StructureConstants* fp = &f;
    return [sp, fp, x_grade, x_index](const std::vector<CochainArg<S>>& args,
                                      const std::vector<int>& m) -> std::vector<S> {
        if (args.size() != 1 || !m.empty()) throw std::invalid_argument("degree-1 cochain arity");
        int a = args[0].grade;
        const auto& alabels = sp->labels(a);
        const std::string& la = detail::label_of(*sp, a, args[0].index);
        const std::string& lx = detail::label_of(*sp, x_grade, x_index);
        std::vector<S> out(sp->dim(a), S(0));
        for (size_t i = 0; i < alabels.size(); ++i) out[i] = S(fp->get(la, lx, alabels[i]));
        return out;
    };
}

/// Violations of the mixed permutation symmetry, checked on the adjacent
/// transpositions (which generate the full group via the composition law
/// of the Z matrices). `arg_sets` lists the argument tuples to probe; all
/// admissible m-tuples with a populated target are covered.
template <class S>
std::vector<std::string> zsym_check(const ReducedSpace& space, int n, const Cochain<S>& omega,
                                    const std::vector<std::vector<CochainArg<S>>>& arg_sets) {
    std::vector<std::string> out;
    for (const auto& args : arg_sets) {
        std::vector<int> grades;
        int total = 0;
        for (const auto& a : args) {
            grades.push_back(a.grade);
            total += a.grade;
        }
        auto dims = detail::arg_dims(args);
        int max_m = total - n;  // e >= 1
        for (int M = 0; M <= max_m; ++M) {
            auto tuples = m_tuples_of_degree(n - 1, M);
            for (int s = 0; s + 1 < n; ++s) {
                std::vector<int> perm;
                for (int t = 0; t < n; ++t) perm.push_back(t);
                std::swap(perm[s], perm[s + 1]);
                const auto& z = z_cached(dims, perm, M);
                std::vector<CochainArg<S>> swapped = args;
                std::swap(swapped[s], swapped[s + 1]);
                for (size_t col = 0; col < tuples.size(); ++col) {
                    auto lhs = omega(args, tuples[col]);
                    int e = cochain_target_grade(grades, tuples[col]);
                    int de = space.dim(e);
                    if (de == 0) continue;
                    std::vector<S> rhs(de, S(0));
                    for (size_t r = 0; r < tuples.size(); ++r) {
                        const S& zrc = z(static_cast<int>(r), static_cast<int>(col));
                        if (zrc == S(0)) continue;
                        auto v = omega(swapped, tuples[r]);
                        if (v.empty()) continue;
                        for (int ei = 0; ei < de; ++ei) rhs[ei] -= v[ei] * zrc;  // signature -1
                    }
                    if (lhs.empty()) lhs.assign(de, S(0));
                    for (int ei = 0; ei < de; ++ei)
                        if (!(lhs[ei] == rhs[ei])) {
                            std::ostringstream os;
                            os << "symmetry violated at swap " << s << ", m-tuple (";
                            for (int v : tuples[col]) os << v << ",";
                            os << "), component " << ei;
                            out.push_back(os.str());
                        }
                }
            }
        }
    }
    return out;
}

/// Group-averaging projection onto the symmetric subspace; idempotent, and
/// the identity on already-symmetric cochains.
template <class S>
Cochain<S> zsym_project(const ReducedSpace& space, int n, Cochain<S> raw) {
    const ReducedSpace* sp = &space;
    return [sp, n, raw = std::move(raw)](const std::vector<CochainArg<S>>& args,
                                         const std::vector<int>& m) -> std::vector<S> {
        std::vector<int> grades;
        for (const auto& a : args) grades.push_back(a.grade);
        int de = sp->dim(cochain_target_grade(grades, m));
        std::vector<S> result(de, S(0));
        if (de == 0) return result;
        int M = std::accumulate(m.begin(), m.end(), 0);
        auto tuples = m_tuples_of_degree(n - 1, M);
        int col = -1;
        for (size_t i = 0; i < tuples.size(); ++i)
            if (tuples[i] == m) col = static_cast<int>(i);
        auto dims = detail::arg_dims(args);
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        Rational inv_fact = Rational(1) / factorial(n);
        do {
            int sgn = perm_sign(perm);
            const auto& z = z_cached(dims, perm, M);
            std::vector<CochainArg<S>> permuted;
            for (int t = 0; t < n; ++t) permuted.push_back(args[perm[t]]);
            for (size_t r = 0; r < tuples.size(); ++r) {
                const S& zrc = z(static_cast<int>(r), col);
                if (zrc == S(0)) continue;
                auto v = raw(permuted, tuples[r]);
                if (v.empty()) continue;
                for (int ei = 0; ei < de; ++ei) result[ei] += S(inv_fact * sgn) * v[ei] * zrc;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return result;
    };
}

// ---------------------------------------------------------------------------
// seeded pseudo-random cochains (deterministic per slot, order independent)

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline Rational seeded_rational(std::uint64_t seed, std::initializer_list<long long> keys) {
    std::uint64_t h = splitmix64(seed ^ 0x5851f42d4c957f2dULL);
    for (long long k : keys) h = splitmix64(h ^ static_cast<std::uint64_t>(k));
    long num = static_cast<long>(h % 19) - 9;
    long den = static_cast<long>((h >> 32) % 7) + 1;
    return Rational(num) / Rational(den);
}

}  // namespace detail

/// Random degree-1 cochain (a grade-preserving linear map, no symmetry
/// constraint), deterministic in the seed.
template <class S>
Cochain<S> random_cochain_deg1(const ReducedSpace& space, std::uint64_t seed) {
    const ReducedSpace* sp = &space;
    return [sp, seed](const std::vector<CochainArg<S>>& args,
                      const std::vector<int>& m) -> std::vector<S> {
        if (args.size() != 1 || !m.empty()) throw std::invalid_argument("degree-1 cochain arity");
        int a = args[0].grade;
        std::vector<S> out(sp->dim(a), S(0));
        for (int j = 0; j < sp->dim(a); ++j)
            out[j] = S(detail::seeded_rational(seed, {1, a, args[0].index, j}));
        return out;
    };
}

/// Random degree-2 symmetric cochain: raw values graded-symmetrized with
/// the sign (-1)^{m+1}, which is the exact two-argument symmetry for any
/// dimensions (the swap matrix is diagonal).
template <class S>
Cochain<S> random_cochain_deg2(const ReducedSpace& space, std::uint64_t seed) {
    const ReducedSpace* sp = &space;
    return [sp, seed](const std::vector<CochainArg<S>>& args,
                      const std::vector<int>& m) -> std::vector<S> {
        if (args.size() != 2 || m.size() != 1) throw std::invalid_argument("degree-2 cochain arity");
        int a = args[0].grade, b = args[1].grade, mv = m[0];
        int e = a + b - 1 - mv;
        std::vector<S> out(sp->dim(e), S(0));
        if (mv < 0) return out;
        for (int j = 0; j < sp->dim(e); ++j) {
            Rational raw1 =
                detail::seeded_rational(seed, {2, a, args[0].index, b, args[1].index, mv, j});
            Rational raw2 =
                detail::seeded_rational(seed, {2, b, args[1].index, a, args[0].index, mv, j});
            Rational v = (mv % 2 == 0) ? Rational(raw1 - raw2) : Rational(raw1 + raw2);
            out[j] = S(v);
        }
        return out;
    };
}

/// The reduced bracket as a degree-2 cochain.
template <class S>
Cochain<S> gamma_cochain(const ReducedSpace& space, const StructureConstants& f) {
    const ReducedSpace* sp = &space;
    const StructureConstants* fp = &f;
    return [sp, fp](const std::vector<CochainArg<S>>& args,
                    const std::vector<int>& m) -> std::vector<S> {
        if (args.size() != 2 || m.size() != 1) throw std::invalid_argument("degree-2 cochain arity");
        int e = args[0].grade + args[1].grade - 1 - m[0];
        std::vector<S> out(sp->dim(e), S(0));
        if (m[0] < 0) return out;
        const std::string& la = detail::label_of(*sp, args[0].grade, args[0].index);
        const std::string& lb = detail::label_of(*sp, args[1].grade, args[1].index);
        const auto& labels = sp->labels(e);
        for (size_t j = 0; j < labels.size(); ++j) out[j] = S(fp->get(la, lb, labels[j]));
        return out;
    };
}

/// Argument tuples with the per-slot regulator multipliers, over the full
/// rational-function scalar.
inline std::vector<CochainArg<RegulatedScalar>> regulated_args(const std::vector<FieldRef>& fields,
                                                               RegulatorSet set) {
    std::vector<int> grades;
    for (const auto& fr : fields) grades.push_back(fr.grade);
    auto dims = regulate(grades, set);
    std::vector<CochainArg<RegulatedScalar>> out;
    for (size_t i = 0; i < fields.size(); ++i)
        out.push_back({dims[i].scalar(), fields[i].grade, fields[i].index});
    return out;
}

/// Same, with the regulator substituted by a fixed rational value; orders
/// of magnitude faster, exact at that regulator assignment.
inline std::vector<CochainArg<Rational>> numeric_args(const std::vector<FieldRef>& fields,
                                                      RegulatorSet set, const Rational& eps0) {
    std::vector<int> grades;
    for (const auto& fr : fields) grades.push_back(fr.grade);
    auto dims = regulate(grades, set);
    std::vector<CochainArg<Rational>> out;
    for (size_t i = 0; i < fields.size(); ++i)
        out.push_back({dims[i].base + dims[i].mult * eps0, fields[i].grade, fields[i].index});
    return out;
}

// ---------------------------------------------------------------------------
// the pure grade-1 sector: exact finite-dimensional complex

/// On arguments of grade 1 every m-index is forced to zero and all Z
/// blocks are scalar signs, so the complex closes and cochains are plain
/// antisymmetric tensors. Flat layout of a degree-n cochain:
/// index = ((t_1 d + t_2) d + ...) d + out.
class Grade1Sector {
  public:
    Grade1Sector(const ReducedSpace& space, const StructureConstants& f) : space_(&space), f_(&f) {
        if (!space.populated(1)) throw std::invalid_argument("sector requires populated grade 1");
        d_ = space.dim(1);
        // closure: brackets of grade-1 fields land in grade 1 (m = 0 is the
        // only admissible component); nothing leaves the sector
        for (const auto& [key, v] : f.entries()) {
            if (v == 0) continue;
            if (space.grade_of(key[0]) == 1 && space.grade_of(key[1]) == 1 &&
                space.grade_of(key[2]) != 1)
                throw std::logic_error("sector closure violated");  // unreachable by grading
        }
    }

    int field_count() const { return d_; }
    int slot_count(int n) const {
        int s = d_;
        for (int i = 0; i < n; ++i) s *= d_;
        return s;
    }

    std::vector<Rational> flatten(int n, const Cochain<Rational>& w) const {
        std::vector<Rational> out(slot_count(n), 0);
        std::vector<int> t(n, 0);
        std::vector<int> m(n - 1, 0);
        for (int flat = 0; flat < slot_count(n); flat += d_) {
            std::vector<CochainArg<Rational>> args;
            for (int i = 0; i < n; ++i) args.push_back({Rational(1), 1, t[i]});
            auto v = w(args, m);
            for (int j = 0; j < d_; ++j) out[flat + j] = v.empty() ? Rational(0) : v[j];
            for (int i = n - 1; i >= 0; --i) {
                if (++t[i] < d_) break;
                t[i] = 0;
            }
        }
        return out;
    }

    Cochain<Rational> unflatten(int n, std::vector<Rational> data) const {
        int d = d_;
        return [d, n, data = std::move(data)](const std::vector<CochainArg<Rational>>& args,
                                              const std::vector<int>& m) -> std::vector<Rational> {
            for (const auto& a : args)
                if (a.grade != 1) return {};
            for (int v : m)
                if (v != 0) return {};
            int flat = 0;
            for (const auto& a : args) flat = flat * d + a.index;
            std::vector<Rational> out(d, 0);
            for (int j = 0; j < d; ++j) out[j] = data[static_cast<size_t>(flat) * d + j];
            return out;
        };
    }

    /// b applied to a flat degree-n cochain (degree 0 means an element of
    /// grade-1, handled by the degree-zero convention).
    std::vector<Rational> apply_b(int n, const std::vector<Rational>& flat) const {
        if (n == 0) {
            // flat is a vector over the grade-1 basis; b0 by linearity
            std::vector<Rational> out(slot_count(1), 0);
            for (int x = 0; x < d_; ++x) {
                if (flat[x] == 0) continue;
                auto bx = coboundary_zero<Rational>(*space_, *f_, 1, x);
                auto fb = flatten(1, bx);
                for (size_t i = 0; i < fb.size(); ++i) out[i] += flat[x] * fb[i];
            }
            return out;
        }
        auto w = unflatten(n, flat);
        auto bw = coboundary(*space_, *f_, n, std::move(w));
        return flatten(n + 1, bw);
    }

    /// Exact basis (flat vectors) of the symmetric degree-n cochains:
    /// nullspace of the adjacent-transposition conditions.
    std::vector<std::vector<Rational>> symmetric_basis(int n) const {
        int nslots = slot_count(n);
        if (n <= 1) {
            std::vector<std::vector<Rational>> basis;
            for (int i = 0; i < nslots; ++i) {
                std::vector<Rational> v(nslots, 0);
                v[i] = 1;
                basis.push_back(std::move(v));
            }
            return basis;
        }
        std::vector<std::vector<Rational>> rows;
        std::vector<int> t(n, 0);
        for (int base = 0; base < nslots; base += d_) {
            for (int s = 0; s + 1 < n; ++s) {
                std::vector<int> ts = t;
                std::swap(ts[s], ts[s + 1]);
                int flat_s = 0;
                for (int v : ts) flat_s = flat_s * d_ + v;
                int flat = base / d_;
                for (int j = 0; j < d_; ++j) {
                    // x[t, j] + x[swap(t), j] = 0 (signature; Z block is [1])
                    std::vector<Rational> row(nslots, 0);
                    row[static_cast<size_t>(flat) * d_ + j] += 1;
                    row[static_cast<size_t>(flat_s) * d_ + j] += 1;
                    rows.push_back(std::move(row));
                }
            }
            for (int i = n - 1; i >= 0; --i) {
                if (++t[i] < d_) break;
                t[i] = 0;
            }
        }
        Matrix<Rational> a(static_cast<int>(rows.size()), nslots);
        for (size_t i = 0; i < rows.size(); ++i)
            for (int j = 0; j < nslots; ++j) a(static_cast<int>(i), j) = rows[i][j];
        return nullspace_rational(a);
    }

    struct RlhResult {
        int dim_c = 0, dim_z = 0, dim_b = 0, dim_rlh = 0;
    };

    /// Exact cohomology dimensions at degree n: dim Z = dim ker b^n on the
    /// symmetric space, dim B = rank of b^{n-1}, RLH = Z/B.
    RlhResult rlh(int n) const {
        RlhResult res;
        auto basis_n = symmetric_basis(n);
        res.dim_c = static_cast<int>(basis_n.size());
        res.dim_z = res.dim_c - rank_of_b_on(basis_n, n);
        if (n == 1) {
            std::vector<std::vector<Rational>> basis0;
            for (int i = 0; i < d_; ++i) {
                std::vector<Rational> v(d_, 0);
                v[i] = 1;
                basis0.push_back(std::move(v));
            }
            res.dim_b = rank_of_b_on(basis0, 0);
        } else {
            res.dim_b = rank_of_b_on(symmetric_basis(n - 1), n - 1);
        }
        res.dim_rlh = res.dim_z - res.dim_b;
        return res;
    }

    const ReducedSpace& space() const { return *space_; }
    const StructureConstants& constants() const { return *f_; }

  private:
    int rank_of_b_on(const std::vector<std::vector<Rational>>& basis, int n) const {
        if (basis.empty()) return 0;
        int rows = slot_count(n + 1);
        Matrix<Rational> img(rows, static_cast<int>(basis.size()));
        for (size_t c = 0; c < basis.size(); ++c) {
            auto col = apply_b(n, basis[c]);
            for (int r = 0; r < rows; ++r) img(r, static_cast<int>(c)) = col[r];
        }
        return rank_rational(img);
    }

    const ReducedSpace* space_;
    const StructureConstants* f_;
    int d_ = 0;
};

struct RlhDims {
    int dim_z = 0, dim_b = 0, dim_rlh = 0;
};

/// Cohomology dimensions on a named closed sector. Only the pure grade-1
/// sector is supported; anything else is refused rather than truncated.
inline RlhDims rlh_dims(const ReducedSpace& space, const StructureConstants& f, int n,
                        const std::string& sector) {
    if (sector != "grade1")
        throw std::invalid_argument("unsupported sector '" + sector + "' (closure not established)");
    Grade1Sector s(space, f);
    auto r = s.rlh(n);
    return {r.dim_z, r.dim_b, r.dim_rlh};
}

}  // namespace rla
