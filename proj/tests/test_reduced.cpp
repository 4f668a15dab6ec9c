#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rla/reduced.hpp"

using namespace rla;

static ReducedSpace su2_space() { return ReducedSpace({{1, {"X1", "X2", "X3"}}}); }

static StructureConstants levi_civita(const ReducedSpace& sp) {
    StructureConstants f;
    f.set(sp, "X1", "X2", "X3", 1);
    f.set(sp, "X2", "X3", "X1", 1);
    f.set(sp, "X3", "X1", "X2", 1);
    return f;
}

static StructureConstants non_lie(const ReducedSpace& sp) {
    // [X1,X2]=X1, [X2,X3]=X2, [X1,X3]=X3: antisymmetric but not Jacobi
    StructureConstants f;
    f.set(sp, "X1", "X2", "X1", 1);
    f.set(sp, "X2", "X3", "X2", 1);
    f.set(sp, "X1", "X3", "X3", 1);
    return f;
}

TEST_CASE("space validation") {
    CHECK_THROWS_WITH_AS(ReducedSpace({{0, {"I"}}}),
                         "grade 0 violates the unitarity bound (grades must be >= 1)",
                         std::invalid_argument);
    CHECK_THROWS_AS(ReducedSpace({{1, {"A", "A"}}}), std::invalid_argument);
    auto sp = su2_space();
    CHECK(sp.dim(1) == 3);
    CHECK(sp.dim(2) == 0);
    CHECK(sp.grade_of("X2") == 1);
    CHECK_THROWS_AS(sp.locate("Q"), std::invalid_argument);
}

TEST_CASE("structure constant completion and conflicts") {
    auto sp = su2_space();
    StructureConstants f;
    f.set(sp, "X1", "X2", "X3", 1);
    // partner filled with sign (-1)^{a+b-c} = -1
    CHECK(f.get("X2", "X1", "X3") == -1);
    // consistent re-insertion is fine, conflicting is not
    CHECK_NOTHROW(f.set(sp, "X2", "X1", "X3", -1));
    CHECK_THROWS_AS(f.set(sp, "X1", "X2", "X3", 2), std::invalid_argument);
    // c > a+b-1 is not reachable by any m >= 0
    ReducedSpace mixed({{1, {"J"}}, {2, {"T"}}});
    StructureConstants g;
    CHECK_THROWS_AS(g.set(mixed, "J", "J", "T", 1), std::invalid_argument);
    CHECK(check_symmetry(sp, f).empty());
}

TEST_CASE("a raw single-orientation edit breaks the graded symmetry") {
    auto sp = su2_space();
    auto f = levi_civita(sp);
    f.set_raw("X1", "X2", "X3", 2);  // partner keeps the old value
    CHECK(check_symmetry(sp, f).size() == 2);
}

TEST_CASE("gamma application") {
    auto sp = su2_space();
    auto f = levi_civita(sp);
    auto v = gamma_apply(sp, f, "X1", "X2", 0);
    REQUIRE(v.size() == 3);
    CHECK(v[0] == 0);
    CHECK(v[1] == 0);
    CHECK(v[2] == 1);
    // unpopulated target grade gives the zero (empty) vector
    CHECK(gamma_apply(sp, f, "X1", "X2", 1).empty());
}

TEST_CASE("grade-1 constraints reduce to the Jacobi identity") {
    auto sp = su2_space();
    auto sys = generate_constraints(sp, 3);
    CHECK(!sys.constraints.empty());
    CHECK(check_constraints(sys, levi_civita(sp)).ok());
    auto rep = check_constraints(sys, non_lie(sp));
    CHECK(!rep.ok());
    // scaled Levi-Civita still a Lie algebra
    StructureConstants scaled;
    scaled.set(sp, "X1", "X2", "X3", Rational(7, 3));
    scaled.set(sp, "X2", "X3", "X1", Rational(7, 3));
    scaled.set(sp, "X3", "X1", "X2", Rational(7, 3));
    CHECK(check_constraints(sys, scaled).ok());
}

TEST_CASE("constraint residuals are quadratically homogeneous") {
    auto sp = su2_space();
    auto sys = generate_constraints(sp, 3);
    auto f = non_lie(sp);
    StructureConstants f3;
    for (const auto& [k, v] : f.entries()) f3.set_raw(k[0], k[1], k[2], Rational(3) * v);
    auto r1 = check_constraints(sys, f);
    auto r3 = check_constraints(sys, f3);
    REQUIRE(r1.nonzero.size() == r3.nonzero.size());
    for (size_t i = 0; i < r1.nonzero.size(); ++i)
        CHECK(r3.nonzero[i].value == Rational(9) * r1.nonzero[i].value);
}

TEST_CASE("a single raw perturbation violates the generated system") {
    auto sp = su2_space();
    auto f = levi_civita(sp);
    f.set_raw("X1", "X2", "X3", 2);
    auto sys = generate_constraints(sp, 3);
    CHECK(check_constraints(sys, f).nonzero.size() == 6);
}

TEST_CASE("virasoro sector is unconstrained") {
    ReducedSpace vir({{2, {"T"}}});
    // every context cancels identically in the regulator, for either set
    CHECK(generate_constraints(vir, 6).constraints.empty());
    CHECK(generate_constraints(vir, 6, false, RegulatorSet::Pow5).constraints.empty());
    // the full RJI block vanishes as a rational function, not just in the limit
    StructureConstants f;
    f.set(vir, "T", "T", "T", Rational(-1, 2));
    auto block = rji_block(vir, f, "T", "T", "T", 2);
    for (const auto& row : block)
        for (const auto& entry : row) CHECK(entry.is_zero());
}

TEST_CASE("rji block is cyclically covariant at degree zero") {
    auto sp = su2_space();
    StructureConstants f;
    f.set(sp, "X1", "X2", "X3", 3);
    f.set(sp, "X2", "X3", "X1", Rational(1, 2));
    f.set(sp, "X3", "X1", "X2", -2);
    // n = 0: the cyclic Y weight is trivial, blocks must match entrywise
    auto rabc = rji_block(sp, f, "X1", "X2", "X3", 1);
    auto rbca = rji_block(sp, f, "X2", "X3", "X1", 1);
    REQUIRE(rabc.size() == 1);
    REQUIRE(rbca.size() == 1);
    for (size_t i = 0; i < rabc[0].size(); ++i) CHECK(rabc[0][i] == rbca[0][i]);
}

TEST_CASE("rji_evaluate validates the mode split") {
    auto sp = su2_space();
    auto f = levi_civita(sp);
    CHECK_THROWS_AS(rji_evaluate(sp, f, "X1", "X2", "X3", 1, 1, 1), std::invalid_argument);
    auto row = rji_evaluate(sp, f, "X1", "X2", "X3", 1, 0, 0);
    for (const auto& v : row) CHECK(v.is_zero());
}

TEST_CASE("invariance of the two-point form") {
    auto sp = su2_space();
    auto f = levi_civita(sp);
    CHECK(invariance_residuals(sp, f, QuadraticForm::identity(sp)).empty());
    QuadraticForm g;
    Matrix<Rational> blk = Matrix<Rational>::identity(3);
    blk(2, 2) = 2;
    g.set_block(1, blk);
    CHECK(!invariance_residuals(sp, f, g).empty());
    // any multiple of the identity is invariant
    QuadraticForm g5;
    Matrix<Rational> five = Matrix<Rational>::identity(3);
    for (int i = 0; i < 3; ++i) five(i, i) = Rational(5, 7);
    g5.set_block(1, five);
    CHECK(invariance_residuals(sp, f, g5).empty());
}

static Rational witness_value(const Matrix<Rational>& blk, const std::vector<Rational>& w) {
    Rational val = 0;
    for (int i = 0; i < blk.rows(); ++i)
        for (int j = 0; j < blk.cols(); ++j) val += w[i] * blk(i, j) * w[j];
    return val;
}

TEST_CASE("gram positivity with certified witnesses") {
    QuadraticForm id;
    id.set_block(1, Matrix<Rational>::identity(3));
    CHECK(gram_positivity_check(id).positive);

    Matrix<Rational> good(2, 2);
    good(0, 0) = 2; good(0, 1) = 1; good(1, 0) = 1; good(1, 1) = 2;
    QuadraticForm g1;
    g1.set_block(1, good);
    CHECK(gram_positivity_check(g1).positive);

    // indefinite, negative and singular blocks all yield a witness with
    // <<v, v>> <= 0
    for (auto bad : {std::array<long, 4>{0, 1, 1, 0}, std::array<long, 4>{1, 0, 0, -1},
                     std::array<long, 4>{1, 1, 1, 1}}) {
        Matrix<Rational> blk(2, 2);
        blk(0, 0) = bad[0]; blk(0, 1) = bad[1]; blk(1, 0) = bad[2]; blk(1, 1) = bad[3];
        QuadraticForm g;
        g.set_block(2, blk);
        auto res = gram_positivity_check(g);
        CHECK(!res.positive);
        CHECK(res.failing_grade == 2);
        REQUIRE(res.witness.size() == 2);
        bool nonzero = false;
        for (const auto& x : res.witness)
            if (x != 0) nonzero = true;
        CHECK(nonzero);
        CHECK(witness_value(blk, res.witness) <= 0);
    }
    CHECK_THROWS_AS(g1.set_block(1, Matrix<Rational>(2, 3)), std::invalid_argument);
}

TEST_CASE("higher eps orders can be emitted") {
    auto sp = su2_space();
    auto base = generate_constraints(sp, 3);
    auto extended = generate_constraints(sp, 3, true);
    CHECK(extended.constraints.size() >= base.constraints.size());
    for (const auto& con : base.constraints) CHECK(con.eps_order >= 0);
    // at grade 1 every context factors through the Jacobi bilinear, so a
    // genuine Lie bracket satisfies all orders, not just the leading one
    CHECK(check_constraints(extended, levi_civita(sp)).ok());
    CHECK(!check_constraints(extended, non_lie(sp)).ok());
}
