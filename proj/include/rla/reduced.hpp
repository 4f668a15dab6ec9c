#pragma once

#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rla/dimension.hpp"
#include "rla/matrix.hpp"
#include "rla/rational.hpp"
#include "rla/regulated.hpp"
#include "rla/transform.hpp"

namespace rla {

struct FieldRef {
    int grade = 0;
    int index = 0;
};

/// The graded reduced space: ordered field labels per positive grade.
/// Grade 0 (the identity) is excluded by the unitarity bound.
class ReducedSpace {
  public:
    ReducedSpace() = default;
    explicit ReducedSpace(std::map<int, std::vector<std::string>> grades)
        : grades_(std::move(grades)) {
        for (const auto& [a, labels] : grades_) {
            if (a < 1) throw std::invalid_argument("grade " + std::to_string(a) +
                                                   " violates the unitarity bound (grades must be >= 1)");
            for (size_t i = 0; i < labels.size(); ++i) {
                auto [it, fresh] = by_label_.emplace(labels[i], FieldRef{a, static_cast<int>(i)});
                if (!fresh) throw std::invalid_argument("duplicate field label " + labels[i]);
            }
        }
    }

    const std::map<int, std::vector<std::string>>& grades() const { return grades_; }

    bool populated(int a) const { return grades_.count(a) > 0; }
    int dim(int a) const {
        auto it = grades_.find(a);
        return it == grades_.end() ? 0 : static_cast<int>(it->second.size());
    }
    const std::vector<std::string>& labels(int a) const {
        static const std::vector<std::string> empty;
        auto it = grades_.find(a);
        return it == grades_.end() ? empty : it->second;
    }
    FieldRef locate(const std::string& label) const {
        auto it = by_label_.find(label);
        if (it == by_label_.end()) throw std::invalid_argument("unknown field label " + label);
        return it->second;
    }
    int grade_of(const std::string& label) const { return locate(label).grade; }

  private:
    std::map<int, std::vector<std::string>> grades_;
    std::map<std::string, FieldRef> by_label_;
};

/// Structure constants F^C_{AB}, stored sparsely for both orientations.
/// set() completes the graded-symmetric partner F^C_{BA} = (-1)^{a+b-c} F^C_{AB}
/// and rejects conflicting assignments.
class StructureConstants {
  public:
    using Key = std::array<std::string, 3>;  // (A, B, C) for F^C_{AB}

    void set(const ReducedSpace& space, const std::string& a_label, const std::string& b_label,
             const std::string& c_label, const Rational& value) {
        FieldRef fa = space.locate(a_label), fb = space.locate(b_label), fc = space.locate(c_label);
        int m = fa.grade + fb.grade - 1 - fc.grade;
        if (m < 0)
            throw std::invalid_argument("grade mismatch: no m >= 0 with c = a+b-1-m for F^" +
                                        c_label + "_{" + a_label + b_label + "}");
        Rational sign = ((fa.grade + fb.grade - fc.grade) % 2 == 0) ? 1 : -1;
        insert_checked({a_label, b_label, c_label}, value);
        insert_checked({b_label, a_label, c_label}, sign * value);
    }

    /// Raw insertion without the symmetry completion (for building
    /// deliberately violating tables in checks).
    void set_raw(const std::string& a_label, const std::string& b_label,
                 const std::string& c_label, const Rational& value) {
        table_[{a_label, b_label, c_label}] = value;
    }

    Rational get(const std::string& a_label, const std::string& b_label,
                 const std::string& c_label) const {
        auto it = table_.find({a_label, b_label, c_label});
        return it == table_.end() ? Rational(0) : it->second;
    }

    const std::map<Key, Rational>& entries() const { return table_; }

  private:
    void insert_checked(Key key, const Rational& value) {
        auto it = table_.find(key);
        if (it != table_.end()) {
            if (it->second != value)
                throw std::invalid_argument("conflicting structure constant for F^" + key[2] +
                                            "_{" + key[0] + key[1] + "}");
            return;
        }
        table_.emplace(std::move(key), value);
    }

    std::map<Key, Rational> table_;
};

/// Violations of the graded symmetry F^C_{AB} = (-1)^{a+b-c} F^C_{BA}.
inline std::vector<std::string> check_symmetry(const ReducedSpace& space,
                                               const StructureConstants& f) {
    std::vector<std::string> out;
    for (const auto& [key, value] : f.entries()) {
        int a = space.grade_of(key[0]), b = space.grade_of(key[1]), c = space.grade_of(key[2]);
        Rational sign = ((a + b - c) % 2 == 0) ? 1 : -1;
        Rational partner = f.get(key[1], key[0], key[2]);
        if (partner != sign * value)
            out.push_back("F^" + key[2] + "_{" + key[0] + key[1] + "} = " + rat_to_string(value) +
                          " but F^" + key[2] + "_{" + key[1] + key[0] + "} = " +
                          rat_to_string(partner) + " (required sign " + rat_to_string(sign) + ")");
    }
    return out;
}

/// Gamma(A, B)_m as a coefficient vector over the basis of grade a+b-1-m;
/// empty when that grade is not populated (the zero vector).
inline std::vector<Rational> gamma_apply(const ReducedSpace& space, const StructureConstants& f,
                                         const std::string& a_label, const std::string& b_label,
                                         int m) {
    int a = space.grade_of(a_label), b = space.grade_of(b_label);
    int c = a + b - 1 - m;
    if (m < 0 || !space.populated(c)) return {};
    std::vector<Rational> out(space.dim(c), 0);
    const auto& labels = space.labels(c);
    for (int i = 0; i < static_cast<int>(labels.size()); ++i)
        out[i] = f.get(a_label, b_label, labels[i]);
    return out;
}

/// The full block of the reduced Jacobi expression for fixed (A,B,C) and
/// target grade e: block[m2][E-index] over m2 = 0..n, n = a+b+c-e-2, with
/// m1 = n - m2 implicit. Entries are rational functions of the regulator.
inline std::vector<std::vector<RegulatedScalar>> rji_block(const ReducedSpace& space,
                                                           const StructureConstants& f,
                                                           const std::string& al,
                                                           const std::string& bl,
                                                           const std::string& cl, int e,
                                                           RegulatorSet reg = RegulatorSet::Pow3) {
    int a = space.grade_of(al), b = space.grade_of(bl), c = space.grade_of(cl);
    int n = a + b + c - e - 2;
    if (n < 0) return {};
    int de = space.dim(e);

    // inner products: t[m'][E] = sum_{E2} F^{E}_{X E2} F^{E2}_{Y Z}
    auto nested = [&](const std::string& x, const std::string& y, const std::string& z, int inner_b,
                      int inner_c) {
        std::vector<std::vector<Rational>> t(n + 1, std::vector<Rational>(de, 0));
        for (int m2 = 0; m2 <= n; ++m2) {
            int e2 = inner_b + inner_c - m2 - 1;
            if (!space.populated(e2)) continue;
            for (const auto& e2l : space.labels(e2)) {
                Rational finner = f.get(y, z, e2l);
                if (finner == 0) continue;
                for (int i = 0; i < de; ++i) {
                    Rational fouter = f.get(x, e2l, space.labels(e)[i]);
                    if (fouter != 0) t[m2][i] += fouter * finner;
                }
            }
        }
        return t;
    };
    auto t1 = nested(al, bl, cl, b, c);
    auto t2 = nested(bl, cl, al, c, a);
    auto t3 = nested(cl, al, bl, a, b);

    auto dims = regulate({a, b, c}, reg);
    RegulatedScalar da = dims[0].scalar(), db = dims[1].scalar(), dc = dims[2].scalar();
    const auto& ybca = y_cached(db, dc, da, n);
    const auto& ycab = y_cached(dc, da, db, n);

    std::vector<std::vector<RegulatedScalar>> out(n + 1,
                                                  std::vector<RegulatedScalar>(de, RegulatedScalar(0)));
    for (int m2 = 0; m2 <= n; ++m2)
        for (int i = 0; i < de; ++i) {
            RegulatedScalar acc(t1[m2][i]);
            for (int j = 0; j <= n; ++j) {
                if (t2[j][i] != 0) acc += ybca(m2, j) * RegulatedScalar(t2[j][i]);
                if (t3[j][i] != 0) {
                    RegulatedScalar w(0);
                    for (int k = 0; k <= n; ++k) w += ybca(m2, k) * ycab(k, j);
                    acc += w * RegulatedScalar(t3[j][i]);
                }
            }
            out[m2][i] = acc;
        }
    return out;
}

/// One component of the reduced Jacobi expression, at (m1, m2) with
/// m1 + m2 = a + b + c - e - 2.
inline std::vector<RegulatedScalar> rji_evaluate(const ReducedSpace& space,
                                                 const StructureConstants& f, const std::string& al,
                                                 const std::string& bl, const std::string& cl, int e,
                                                 int m1, int m2,
                                                 RegulatorSet reg = RegulatorSet::Pow3) {
    int a = space.grade_of(al), b = space.grade_of(bl), c = space.grade_of(cl);
    if (m1 < 0 || m2 < 0 || m1 + m2 != a + b + c - e - 2)
        throw std::invalid_argument("require m1 + m2 = a + b + c - e - 2, both nonnegative");
    auto block = rji_block(space, f, al, bl, cl, e, reg);
    return block[m2];
}

struct ConstraintMonomial {
    Rational coeff;
    std::array<std::array<std::string, 3>, 2> vars;  // (A,B,C) keys of F^C_{AB}
};

struct Constraint {
    std::string a, b, c, e;  // field labels of the context
    int m1 = 0, m2 = 0;
    int eps_order = 0;  // power of eps this constraint was read off from
    std::vector<ConstraintMonomial> monomials;
};

struct ConstraintSystem {
    std::vector<Constraint> constraints;
};

namespace detail {

/// Symbolic counterpart of one rji_block component: monomials in the
/// F-variables with rational-function coefficients.
using SymbolicPoly = std::map<std::array<std::array<std::string, 3>, 2>, RegulatedScalar>;

inline void add_monomial(SymbolicPoly& p, std::array<std::string, 3> v1,
                         std::array<std::string, 3> v2, const RegulatedScalar& coeff) {
    if (coeff.is_zero()) return;
    std::array<std::array<std::string, 3>, 2> key =
        v1 <= v2 ? std::array{v1, v2} : std::array{v2, v1};
    auto it = p.find(key);
    if (it == p.end())
        p.emplace(std::move(key), coeff);
    else
        it->second += coeff;
}

}  // namespace detail

/// All quadratic constraints from the reduced Jacobi identity with
/// a + b + c <= max_total_grade. Each context (A,B,C,E,m1,m2) is assembled
/// over rational functions of the regulator, multiplied by the least
/// common denominator, and read off at the lowest eps-order with a
/// nonvanishing coefficient (recorded in eps_order). With
/// emit_higher_orders, every higher order with nonzero coefficients is
/// emitted as a separate constraint as well. Identically-vanishing
/// contexts produce nothing.
inline ConstraintSystem generate_constraints(const ReducedSpace& space, int max_total_grade,
                                             bool emit_higher_orders = false,
                                             RegulatorSet reg = RegulatorSet::Pow3) {
    ConstraintSystem sys;
    std::vector<std::string> all;
    for (const auto& [g, labels] : space.grades())
        for (const auto& l : labels) all.push_back(l);

    for (const auto& al : all)
        for (const auto& bl : all)
            for (const auto& cl : all) {
                int a = space.grade_of(al), b = space.grade_of(bl), c = space.grade_of(cl);
                if (a + b + c > max_total_grade) continue;
                auto dims = regulate({a, b, c}, reg);
                RegulatedScalar da = dims[0].scalar(), db = dims[1].scalar(), dc = dims[2].scalar();
                for (const auto& [e, elabels] : space.grades()) {
                    int n = a + b + c - e - 2;
                    if (n < 0) continue;
                    const auto& ybca = y_cached(db, dc, da, n);
                    const auto& ycab = y_cached(dc, da, db, n);
                    for (const auto& el : elabels)
                        for (int m2 = 0; m2 <= n; ++m2) {
                            detail::SymbolicPoly poly;
                            // term 1: F^E_{A E2} F^{E2}_{BC} at index m2
                            int e2 = b + c - m2 - 1;
                            if (space.populated(e2))
                                for (const auto& e2l : space.labels(e2))
                                    detail::add_monomial(poly, {al, e2l, el}, {bl, cl, e2l},
                                                         RegulatedScalar(1));
                            for (int j = 0; j <= n; ++j) {
                                // term 2: Y_bca-weighted F^E_{B E2} F^{E2}_{CA}
                                int et2 = c + a - j - 1;
                                if (space.populated(et2) && !ybca(m2, j).is_zero())
                                    for (const auto& e2l : space.labels(et2))
                                        detail::add_monomial(poly, {bl, e2l, el}, {cl, al, e2l},
                                                             ybca(m2, j));
                                // term 3: (Y_bca Y_cab)-weighted F^E_{C E2} F^{E2}_{AB}
                                int eh2 = a + b - j - 1;
                                if (space.populated(eh2)) {
                                    RegulatedScalar w(0);
                                    for (int k = 0; k <= n; ++k) w += ybca(m2, k) * ycab(k, j);
                                    if (!w.is_zero())
                                        for (const auto& e2l : space.labels(eh2))
                                            detail::add_monomial(poly, {cl, e2l, el}, {al, bl, e2l},
                                                                 w);
                                }
                            }
                            for (auto it = poly.begin(); it != poly.end();)
                                it = it->second.is_zero() ? poly.erase(it) : std::next(it);
                            if (poly.empty()) continue;
                            // clear denominators: multiply by the lcm in eps
                            EpsPoly lcd(Rational(1));
                            for (const auto& [k, v] : poly) {
                                EpsPoly g = EpsPoly::gcd(lcd, v.den());
                                lcd = EpsPoly::div_exact(lcd, g) * v.den();
                            }
                            std::vector<std::pair<std::array<std::array<std::string, 3>, 2>, EpsPoly>>
                                cleared;
                            int low = -1, high = 0;
                            for (const auto& [k, v] : poly) {
                                EpsPoly p = v.num() * EpsPoly::div_exact(lcd, v.den());
                                int o = p.order_at_zero();
                                if (low < 0 || o < low) low = o;
                                if (p.degree() > high) high = p.degree();
                                cleared.emplace_back(k, std::move(p));
                            }
                            for (int ord = low; ord <= (emit_higher_orders ? high : low); ++ord) {
                                Constraint con;
                                con.a = al;
                                con.b = bl;
                                con.c = cl;
                                con.e = el;
                                con.m1 = n - m2;
                                con.m2 = m2;
                                con.eps_order = ord;
                                for (const auto& [k, p] : cleared) {
                                    Rational cf = p.coeff(ord);
                                    if (cf != 0) con.monomials.push_back({cf, k});
                                }
                                if (!con.monomials.empty()) sys.constraints.push_back(std::move(con));
                            }
                        }
                }
            }
    return sys;
}

struct ConstraintResidual {
    const Constraint* constraint = nullptr;
    Rational value;
};

struct ConstraintReport {
    std::vector<ConstraintResidual> nonzero;
    bool ok() const { return nonzero.empty(); }
};

/// Evaluates every constraint on a concrete structure-constant table;
/// absent table entries count as zero.
inline ConstraintReport check_constraints(const ConstraintSystem& sys,
                                          const StructureConstants& f) {
    ConstraintReport rep;
    for (const auto& con : sys.constraints) {
        Rational acc = 0;
        for (const auto& mono : con.monomials)
            acc += mono.coeff * f.get(mono.vars[0][0], mono.vars[0][1], mono.vars[0][2]) *
                   f.get(mono.vars[1][0], mono.vars[1][1], mono.vars[1][2]);
        if (acc != 0) rep.nonzero.push_back({&con, acc});
    }
    return rep;
}

/// Symmetric per-grade quadratic form (the 2-point amplitudes).
class QuadraticForm {
  public:
    QuadraticForm() = default;

    void set_block(int grade, Matrix<Rational> block) {
        if (block.rows() != block.cols()) throw std::invalid_argument("square block expected");
        for (int i = 0; i < block.rows(); ++i)
            for (int j = 0; j < i; ++j)
                if (block(i, j) != block(j, i))
                    throw std::invalid_argument("quadratic form block must be symmetric");
        blocks_[grade] = std::move(block);
    }

    static QuadraticForm identity(const ReducedSpace& space) {
        QuadraticForm g;
        for (const auto& [grade, labels] : space.grades())
            g.blocks_[grade] = Matrix<Rational>::identity(static_cast<int>(labels.size()));
        return g;
    }

    const std::map<int, Matrix<Rational>>& blocks() const { return blocks_; }

    Rational pair(const ReducedSpace& space, const std::string& x, const std::string& y) const {
        FieldRef fx = space.locate(x), fy = space.locate(y);
        if (fx.grade != fy.grade) return 0;  // grading-respecting
        auto it = blocks_.find(fx.grade);
        if (it == blocks_.end()) return 0;
        return it->second(fx.index, fy.index);
    }

  private:
    std::map<int, Matrix<Rational>> blocks_;
};

struct InvarianceResidual {
    std::string a, b, c;
    Rational value;
};

/// Residuals of the invariance condition relating structure constants and
/// the quadratic form:
///   (-1)^c (2c)_{a+b-c-1} sum_{C'} F^{C'}_{AB} <<C' C>>
///     = (-1)^a (2a)_{b+c-a-1} sum_{A'} F^{A'}_{BC} <<A' A>>.
/// A side with a negative Pochhammer length carries no structure
/// constants and counts as zero.
inline std::vector<InvarianceResidual> invariance_residuals(const ReducedSpace& space,
                                                            const StructureConstants& f,
                                                            const QuadraticForm& g) {
    std::vector<InvarianceResidual> out;
    std::vector<std::string> all;
    for (const auto& [grade, labels] : space.grades())
        for (const auto& l : labels) all.push_back(l);
    auto side = [&](const std::string& x, const std::string& y, const std::string& z) {
        // (-1)^c (2c)_{x+y-c-1} sum_{C'} F^{C'}_{XY} <<C' Z>> with c = grade of Z
        int gx = space.grade_of(x), gy = space.grade_of(y), gz = space.grade_of(z);
        int m = gx + gy - gz - 1;
        if (m < 0) return Rational(0);
        Rational acc = 0;
        for (const auto& cp : space.labels(gz)) {
            Rational fv = f.get(x, y, cp);
            if (fv != 0) acc += fv * g.pair(space, cp, z);
        }
        acc *= pochhammer(Rational(2 * gz), m);
        return (gz % 2 == 0) ? acc : -acc;
    };
    for (const auto& al : all)
        for (const auto& bl : all)
            for (const auto& cl : all) {
                Rational r = side(al, bl, cl) - side(bl, cl, al);
                if (r != 0) out.push_back({al, bl, cl, r});
            }
    return out;
}

struct PositivityResult {
    bool positive = true;
    int failing_grade = 0;
    std::vector<Rational> witness;  // v with <<v, v>> <= 0, in the grade's basis
};

/// Exact positive-definiteness of every grade block, by the leading
/// principal pivots of symmetric elimination (equivalent to the leading
/// principal minor test). On failure the witness vector is returned.
inline PositivityResult gram_positivity_check(const QuadraticForm& g) {
    for (const auto& [grade, block] : g.blocks()) {
        int n = block.rows();
        Matrix<Rational> m = block;
        Matrix<Rational> u = Matrix<Rational>::identity(n);  // rows: m = u * block * u^T
        for (int i = 0; i < n; ++i) {
            if (m(i, i) <= 0) {
                PositivityResult res;
                res.positive = false;
                res.failing_grade = grade;
                res.witness.assign(n, 0);
                if (m(i, i) < 0 || [&] {
                        for (int j = i + 1; j < n; ++j)
                            if (m(i, j) != 0) return false;
                        return true;
                    }()) {
                    // pivot negative, or a zero row: u_i itself is a witness
                    for (int j = 0; j < n; ++j) res.witness[j] = u(i, j);
                } else {
                    // zero pivot with m(i,j) != 0: mix u_i with u_j
                    int j = i + 1;
                    while (m(i, j) == 0) ++j;
                    Rational d = m(j, j);
                    Rational t = -m(i, j) / (1 + (d < 0 ? -d : d));
                    for (int k = 0; k < n; ++k) res.witness[k] = u(i, k) + t * u(j, k);
                }
                return res;
            }
            for (int r = i + 1; r < n; ++r) {
                Rational fct = m(r, i) / m(i, i);
                if (fct == 0) continue;
                for (int c2 = 0; c2 < n; ++c2) {
                    m(r, c2) -= fct * m(i, c2);
                    u(r, c2) -= fct * u(i, c2);
                }
                for (int c2 = 0; c2 < n; ++c2) m(c2, r) -= fct * m(c2, i);
            }
        }
    }
    return {};
}

}  // namespace rla
