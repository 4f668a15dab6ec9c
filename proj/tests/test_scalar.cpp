#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rla/dimension.hpp"
#include "rla/regulated.hpp"

using namespace rla;

TEST_CASE("rational string round trip") {
    for (const char* s : {"0", "1", "-1", "7/3", "-22/7", "123456789123456789/2"}) {
        CHECK(rat_to_string(rat_from_string(s)) == s);
    }
    // non-canonical input canonicalizes
    CHECK(rat_to_string(rat_from_string("4/6")) == "2/3");
    CHECK(rat_to_string(rat_from_string("-4/2")) == "-2");
    CHECK_THROWS_AS(rat_from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_string("abc"), std::invalid_argument);
}

TEST_CASE("pochhammer product rule (x)_{m+n} = (x)_m (x+m)_n") {
    for (long p = -5; p <= 5; ++p)
        for (long q = 1; q <= 3; ++q) {
            Rational x = rat(p, q);
            for (int m = 0; m <= 4; ++m)
                for (int n = 0; n <= 4; ++n) {
                    Rational shifted = x + m;
                    CHECK(pochhammer(x, m + n) == pochhammer(x, m) * pochhammer(shifted, n));
                }
        }
}

TEST_CASE("pochhammer of 1 is the factorial") {
    for (int n = 0; n <= 10; ++n) CHECK(pochhammer(Rational(1), n) == factorial(n));
}

TEST_CASE("binomial matches the factorial quotient") {
    for (int n = 0; n <= 10; ++n)
        for (int k = 0; k <= n; ++k)
            CHECK(binomial(n, k) == factorial(n) / (factorial(k) * factorial(n - k)));
    CHECK(binomial(4, 7) == 0);
    CHECK(binomial(4, -1) == 0);
}

static EpsPoly poly(std::initializer_list<long> cs) {
    std::vector<Rational> v;
    for (long c : cs) v.push_back(Rational(c));
    return EpsPoly(std::move(v));
}

TEST_CASE("polynomial division and gcd") {
    EpsPoly a = poly({-1, 0, 1});   // eps^2 - 1
    EpsPoly b = poly({1, 1});       // eps + 1
    CHECK(EpsPoly::div_exact(a, b) == poly({-1, 1}));
    CHECK(EpsPoly::rem(a, b).is_zero());
    CHECK(EpsPoly::gcd(a, b) == b);  // gcd comes out monic
    CHECK_THROWS_AS(EpsPoly::div_exact(poly({1, 1, 1}), b), std::logic_error);

    // gcd divides both and the cofactors are coprime
    EpsPoly g = poly({2, 1});
    EpsPoly p = g * poly({1, 0, 3});
    EpsPoly q = g * poly({-1, 2});
    EpsPoly d = EpsPoly::gcd(p, q);
    CHECK(EpsPoly::rem(p, d).is_zero());
    CHECK(EpsPoly::rem(q, d).is_zero());
    CHECK(EpsPoly::gcd(EpsPoly::div_exact(p, d), EpsPoly::div_exact(q, d)).degree() == 0);
}

TEST_CASE("polynomial valuation and shift") {
    EpsPoly p = poly({0, 0, 3, 1});
    CHECK(p.order_at_zero() == 2);
    CHECK(p.shifted_down(2) == poly({3, 1}));
    CHECK(p.eval(Rational(2)) == Rational(20));
    CHECK_THROWS_AS(EpsPoly().order_at_zero(), std::logic_error);
}

TEST_CASE("regulated scalar stays canonical") {
    // (eps^2 - 1) / (eps + 1) reduces to eps - 1
    RegulatedScalar v(poly({-1, 0, 1}), poly({1, 1}));
    CHECK(v.num() == poly({-1, 1}));
    CHECK(v.den() == poly({1}));
    // denominator normalizes monic
    RegulatedScalar w(poly({1}), poly({0, 2}));
    CHECK(w.den() == poly({0, 1}));
    CHECK(w.num() == EpsPoly(Rational(1, 2)));
    CHECK_THROWS_AS(RegulatedScalar(poly({1}), EpsPoly()), std::invalid_argument);
}

TEST_CASE("regulated scalar field arithmetic") {
    RegulatedScalar eps = RegulatedScalar::eps();
    RegulatedScalar a = RegulatedScalar(1) / (eps + RegulatedScalar(1));
    RegulatedScalar b = eps / (eps - RegulatedScalar(2));
    CHECK((a + b) - b == a);
    CHECK((a * b) / b == a);
    CHECK(a * (b + RegulatedScalar(1)) == a * b + a);
    CHECK((a - a).is_zero());
    CHECK_THROWS_AS(a / RegulatedScalar(0), std::domain_error);
    // evaluation agrees with the arithmetic at a sample point
    Rational x(1, 3);
    CHECK((a * b + a).eval(x) == a.eval(x) * b.eval(x) + a.eval(x));
}

TEST_CASE("regulated limit, finite and pole") {
    RegulatedScalar eps = RegulatedScalar::eps();
    RegulatedScalar smooth = (eps + RegulatedScalar(3)) / (eps - RegulatedScalar(2));
    auto lim = regulated_limit(smooth);
    REQUIRE(std::holds_alternative<Rational>(lim));
    CHECK(std::get<Rational>(lim) == Rational(-3, 2));
    CHECK(limit_or_throw(smooth) == Rational(-3, 2));

    RegulatedScalar singular = (eps + RegulatedScalar(5)) / (eps * eps);
    auto plim = regulated_limit(singular);
    REQUIRE(std::holds_alternative<PoleReport>(plim));
    CHECK(std::get<PoleReport>(plim).order == 2);
    CHECK(std::get<PoleReport>(plim).leading == Rational(5));
    CHECK_THROWS_AS(limit_or_throw(singular), std::domain_error);

    // removable: eps/eps canonicalizes to 1 before the limit
    CHECK(limit_or_throw(eps / eps) == 1);
    CHECK(std::get<Rational>(regulated_limit(RegulatedScalar(0))) == 0);
}

TEST_CASE("regulator multiplier sets") {
    auto d3 = regulate({2, 3, 2}, RegulatorSet::Pow3);
    CHECK(d3.size() == 3);
    CHECK(d3[0].base == 2);
    CHECK(d3[0].mult == 1);
    CHECK(d3[1].mult == 3);
    CHECK(d3[2].mult == 9);
    auto d5 = regulate({2, 3, 2}, RegulatorSet::Pow5);
    CHECK(d5[1].mult == 5);
    CHECK(d5[2].mult == 25);
    auto dn = regulate({2, 3, 2}, RegulatorSet::None);
    CHECK(dn[2].mult == 0);
    // scalar() carries base + mult * eps
    CHECK(d3[1].scalar().eval(Rational(1, 7)) == Rational(3) + Rational(3, 7));
}
