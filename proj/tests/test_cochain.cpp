#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rla/cochain.hpp"

using namespace rla;

static ReducedSpace su2_space() { return ReducedSpace({{1, {"X1", "X2", "X3"}}}); }

static StructureConstants levi_civita(const ReducedSpace& sp) {
    StructureConstants f;
    f.set(sp, "X1", "X2", "X3", 1);
    f.set(sp, "X2", "X3", "X1", 1);
    f.set(sp, "X3", "X1", "X2", 1);
    return f;
}

static ReducedSpace mixed_space() { return ReducedSpace({{1, {"J1", "J2"}}, {2, {"T"}}}); }

static StructureConstants mixed_constants(const ReducedSpace& sp) {
    StructureConstants f;
    f.set(sp, "T", "J1", "J1", 1);
    f.set(sp, "T", "J2", "J2", 1);
    f.set(sp, "T", "T", "T", 1);
    return f;
}

TEST_CASE("slot admissibility is right-spine nonnegativity") {
    CHECK(cochain_slot_admissible({1, 1}, {0}));
    CHECK(cochain_slot_admissible({1, 1}, {1}));  // target grade 0 is still nonnegative
    CHECK(!cochain_slot_admissible({1, 1}, {2}));
    CHECK(cochain_slot_admissible({2, 2, 2}, {1, 2}));
    CHECK(!cochain_slot_admissible({2, 2, 2}, {0, 4}));
    CHECK_THROWS_AS(cochain_slot_admissible({2, 2}, {0, 0}), std::invalid_argument);
    CHECK(cochain_target_grade({2, 2, 2}, {1, 1}) == 2);
}

TEST_CASE("b of the identity map is the bracket") {
    auto sp = su2_space();
    auto f = levi_civita(sp);
    Cochain<Rational> idc = [&sp](const std::vector<CochainArg<Rational>>& args,
                                  const std::vector<int>&) {
        std::vector<Rational> out(sp.dim(args[0].grade), 0);
        out[args[0].index] = 1;
        return out;
    };
    auto b1 = coboundary(sp, f, 1, idc);
    auto g = gamma_cochain<Rational>(sp, f);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::vector<CochainArg<Rational>> args{{Rational(1), 1, i}, {Rational(1), 1, j}};
            CHECK(b1(args, {0}) == g(args, {0}));
        }
}

TEST_CASE("the bracket is a 2-cocycle") {
    auto sp = su2_space();
    auto f = levi_civita(sp);
    auto b2g = coboundary(sp, f, 2, gamma_cochain<Rational>(sp, f));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                std::vector<CochainArg<Rational>> args{
                    {Rational(1), 1, i}, {Rational(1), 1, j}, {Rational(1), 1, k}};
                for (const auto& x : b2g(args, {0, 0})) CHECK(x == 0);
            }
}

TEST_CASE("the stress-tensor bracket is a 2-cocycle as a rational function") {
    ReducedSpace vir({{2, {"T"}}});
    StructureConstants ft;
    ft.set(vir, "T", "T", "T", Rational(-1, 2));
    auto b2g = coboundary(vir, ft, 2, gamma_cochain<RegulatedScalar>(vir, ft));
    auto args = regulated_args({{2, 0}, {2, 0}, {2, 0}}, RegulatorSet::Pow3);
    for (int m1 = 0; m1 <= 3; ++m1)
        for (int m2 = 0; m2 <= 3; ++m2)
            for (const auto& x : b2g(args, {m1, m2})) CHECK(x.is_zero());
}

TEST_CASE("b of b vanishes on the mixed space") {
    auto sp = mixed_space();
    auto f = mixed_constants(sp);
    Rational eps0(1, 64);
    std::vector<FieldRef> fields{{1, 0}, {1, 1}, {2, 0}};

    auto q = random_cochain_deg1<Rational>(sp, 7);
    auto b2b1q = coboundary(sp, f, 2, memoized(coboundary(sp, f, 1, q)));
    for (const auto& f1 : fields)
        for (const auto& f2 : fields)
            for (const auto& f3 : fields) {
                auto args = numeric_args({f1, f2, f3}, RegulatorSet::Pow3, eps0);
                int total = f1.grade + f2.grade + f3.grade;
                for (int M = 0; M <= total - 3; ++M)
                    for (const auto& m : m_tuples_of_degree(2, M))
                        for (const auto& x : b2b1q(args, m)) CHECK(x == 0);
            }

    auto w = random_cochain_deg2<Rational>(sp, 11);
    auto b3b2w = coboundary(sp, f, 3, memoized(coboundary(sp, f, 2, w)));
    for (const auto& f1 : fields)
        for (const auto& f2 : fields)
            for (const auto& f3 : fields)
                for (const auto& f4 : fields) {
                    auto args = numeric_args({f1, f2, f3, f4}, RegulatorSet::Pow3, eps0);
                    int total = f1.grade + f2.grade + f3.grade + f4.grade;
                    for (int M = 0; M <= total - 4; ++M)
                        for (const auto& m : m_tuples_of_degree(3, M))
                            for (const auto& x : b3b2w(args, m)) CHECK(x == 0);
                }
}

TEST_CASE("b of b vanishes with the full regulator kept symbolic") {
    auto sp = mixed_space();
    auto f = mixed_constants(sp);
    auto q = random_cochain_deg1<RegulatedScalar>(sp, 7);
    auto b2b1q = coboundary(sp, f, 2, memoized(coboundary(sp, f, 1, q)));
    auto args = regulated_args({{1, 0}, {2, 0}, {1, 1}}, RegulatorSet::Pow5);
    for (int M = 0; M <= 1; ++M)
        for (const auto& m : m_tuples_of_degree(2, M))
            for (const auto& x : b2b1q(args, m)) CHECK(x.is_zero());
}

TEST_CASE("plain and symmetrized coboundary agree on symmetric cochains") {
    auto sp = mixed_space();
    auto f = mixed_constants(sp);
    Rational eps0(1, 64);
    auto w = random_cochain_deg2<Rational>(sp, 23);
    auto plain = coboundary(sp, f, 2, w);
    auto sym = coboundary_symmetrized(sp, f, 2, w);
    std::vector<FieldRef> fields{{1, 0}, {1, 1}, {2, 0}};
    for (const auto& f1 : fields)
        for (const auto& f2 : fields)
            for (const auto& f3 : fields) {
                auto args = numeric_args({f1, f2, f3}, RegulatorSet::Pow3, eps0);
                int total = f1.grade + f2.grade + f3.grade;
                for (int M = 0; M <= total - 3; ++M)
                    for (const auto& m : m_tuples_of_degree(2, M))
                        CHECK(plain(args, m) == sym(args, m));
            }
}

TEST_CASE("symmetry check, projection and covariance of b") {
    auto sp = mixed_space();
    auto f = mixed_constants(sp);
    Rational eps0(1, 64);
    std::vector<FieldRef> fields{{1, 0}, {1, 1}, {2, 0}};
    std::vector<std::vector<CochainArg<Rational>>> pairs;
    for (const auto& f1 : fields)
        for (const auto& f2 : fields)
            pairs.push_back(numeric_args({f1, f2}, RegulatorSet::Pow3, eps0));

    // a raw unsymmetrized cochain fails the adjacent-transposition check
    Cochain<Rational> raw = [&sp](const std::vector<CochainArg<Rational>>& args,
                                  const std::vector<int>& m) -> std::vector<Rational> {
        int e = args[0].grade + args[1].grade - m[0] - 1;
        if (!sp.populated(e)) return {};
        std::vector<Rational> out(sp.dim(e), 0);
        out[0] = Rational(1 + args[0].index) / (2 + 3 * args[1].index + m[0]);
        return out;
    };
    CHECK(!zsym_check(sp, 2, raw, pairs).empty());

    // projection repairs it and is idempotent
    auto proj = zsym_project(sp, 2, raw);
    CHECK(zsym_check(sp, 2, proj, pairs).empty());
    auto proj2 = zsym_project(sp, 2, proj);
    for (const auto& args : pairs) {
        int total = args[0].grade + args[1].grade;
        for (int M = 0; M <= total - 2; ++M) CHECK(proj(args, {M}) == proj2(args, {M}));
    }

    // the generators of the complex are symmetric, and b preserves symmetry
    CHECK(zsym_check(sp, 2, gamma_cochain<Rational>(sp, f), pairs).empty());
    auto w = random_cochain_deg2<Rational>(sp, 5);
    CHECK(zsym_check(sp, 2, w, pairs).empty());
    std::vector<std::vector<CochainArg<Rational>>> triples;
    for (const auto& f1 : fields)
        for (const auto& f2 : fields)
            for (const auto& f3 : fields)
                triples.push_back(numeric_args({f1, f2, f3}, RegulatorSet::Pow3, eps0));
    auto bw = memoized(coboundary(sp, f, 2, w));
    CHECK(zsym_check(sp, 3, bw, triples).empty());
}

TEST_CASE("grade-1 sector flat layout") {
    auto sp = su2_space();
    auto f = levi_civita(sp);
    Grade1Sector sector(sp, f);
    CHECK(sector.field_count() == 3);
    CHECK(sector.slot_count(2) == 27);

    // flatten and unflatten are mutually inverse
    auto w = random_cochain_deg2<Rational>(sp, 3);
    auto flat = sector.flatten(2, w);
    auto back = sector.flatten(2, sector.unflatten(2, flat));
    CHECK(flat == back);

    // apply_b at degree 0 matches the bracket with a fixed element
    std::vector<Rational> x{1, 0, 0};
    auto bx = sector.apply_b(0, x);
    auto g = gamma_cochain<Rational>(sp, f);
    auto direct = sector.flatten(1, [&](const std::vector<CochainArg<Rational>>& args,
                                        const std::vector<int>&) {
        std::vector<Rational> acc(3, 0);
        for (int i = 0; i < 3; ++i) {
            if (x[i] == 0) continue;
            std::vector<CochainArg<Rational>> pair{args[0], {Rational(1), 1, i}};
            auto v = g(pair, {0});
            for (int j = 0; j < 3; ++j) acc[j] += x[i] * v[j];
        }
        return acc;
    });
    CHECK(bx == direct);

    // b^2 = 0 on flat vectors, and the symmetric basis has binomial size
    auto basis2 = sector.symmetric_basis(2);
    CHECK(basis2.size() == 9);  // antisym pairs (3) x target (3)
    for (const auto& v : basis2) {
        auto bb = sector.apply_b(2, sector.apply_b(1, sector.apply_b(0, {v[0], v[1], v[2]})));
        // b0 then b1 then b2: image of an exact cochain dies
        for (const auto& entry : bb) CHECK(entry == 0);
    }
}
