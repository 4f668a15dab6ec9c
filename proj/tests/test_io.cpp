#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rla/io.hpp"

using namespace rla;

static std::string message_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const IoError& e) {
        return e.what();
    }
    return "";
}

TEST_CASE("space serialization") {
    auto sp = parse_space(R"({"grades":[{"dim":1,"fields":["X1","X2","X3"]},{"dim":2,"fields":["T"]}]})");
    CHECK(sp.dim(1) == 3);
    CHECK(sp.dim(2) == 1);
    auto sp2 = parse_space(dump_stable(emit_space(sp)));
    CHECK(emit_space(sp) == emit_space(sp2));

    auto msg = message_of([] { parse_space(R"({"grades":[{"dim":0,"fields":["I"]}]})"); });
    CHECK(msg.find("unitarity bound") != std::string::npos);
    CHECK_THROWS_AS(parse_space("not json"), IoError);
    CHECK_THROWS_AS(parse_space(R"({"grades":[{"dim":1}]})"), IoError);
    CHECK_THROWS_AS(
        parse_space(R"({"grades":[{"dim":1,"fields":["A"]},{"dim":1,"fields":["B"]}]})"), IoError);
    CHECK_THROWS_AS(parse_space(R"({"grades":[{"dim":1,"fields":["A","A"]}]})"), IoError);
}

TEST_CASE("structure constant serialization completes the partner") {
    auto sp = parse_space(R"({"grades":[{"dim":1,"fields":["X1","X2","X3"]}]})");
    auto f = parse_structure_constants(R"([{"A":"X1","B":"X2","C":"X3","value":"1"}])", sp);
    CHECK(f.get("X1", "X2", "X3") == 1);
    CHECK(f.get("X2", "X1", "X3") == -1);
    auto fj = emit_structure_constants(f);
    auto f2 = parse_structure_constants(dump_stable(fj), sp);
    CHECK(emit_structure_constants(f2) == fj);

    CHECK_THROWS_AS(parse_structure_constants(R"([{"A":"X1","B":"X2","C":"Q","value":"1"}])", sp),
                    IoError);
    CHECK_THROWS_AS(parse_structure_constants(R"([{"A":"X1","B":"X2","C":"X3","value":"1/0"}])", sp),
                    IoError);
    // conflicting orientations of the same entry
    CHECK_THROWS_AS(parse_structure_constants(
                        R"([{"A":"X1","B":"X2","C":"X3","value":"1"},)"
                        R"({"A":"X2","B":"X1","C":"X3","value":"1"}])", sp),
                    IoError);
}

TEST_CASE("gram serialization") {
    auto sp = parse_space(R"({"grades":[{"dim":1,"fields":["X1","X2","X3"]}]})");
    auto g = parse_gram(R"({"1":[["1","0","0"],["0","1","0"],["0","0","2"]]})", sp);
    CHECK(g.pair(sp, "X3", "X3") == 2);
    CHECK(emit_gram(parse_gram(dump_stable(emit_gram(g)), sp)) == emit_gram(g));

    CHECK_THROWS_AS(parse_gram(R"({"2":[["1"]]})", sp), IoError);          // absent grade
    CHECK_THROWS_AS(parse_gram(R"({"1":[["1","0"],["0","1"]]})", sp), IoError);  // wrong size
    CHECK_THROWS_AS(
        parse_gram(R"({"1":[["1","2","0"],["0","1","0"],["0","0","1"]]})", sp),
        IoError);  // asymmetric
}

TEST_CASE("constraint systems round trip and stay checkable") {
    auto sp = parse_space(R"({"grades":[{"dim":1,"fields":["X1","X2","X3"]}]})");
    StructureConstants eps3;
    eps3.set(sp, "X1", "X2", "X3", 1);
    eps3.set(sp, "X2", "X3", "X1", 1);
    eps3.set(sp, "X3", "X1", "X2", 1);
    auto sys = generate_constraints(sp, 3);
    auto cj = emit_constraints(sys);
    auto sys2 = parse_constraints(dump_stable(cj));
    CHECK(emit_constraints(sys2) == cj);
    CHECK(check_constraints(sys2, eps3).ok());
    CHECK_THROWS_AS(parse_constraints(R"([{"epsOrder":0}])"), IoError);
}

TEST_CASE("grade-1 cochains and series round trip") {
    auto sp = parse_space(R"({"grades":[{"dim":1,"fields":["X1","X2","X3"]}]})");
    StructureConstants eps3;
    eps3.set(sp, "X1", "X2", "X3", 1);
    eps3.set(sp, "X2", "X3", "X1", 1);
    eps3.set(sp, "X3", "X1", "X2", 1);
    Grade1Sector sec(sp, eps3);
    auto flat = sec.flatten(2, gamma_cochain<Rational>(sp, eps3));
    auto cj = emit_cochain2(flat, sec);
    CHECK(parse_cochain2(dump_stable(cj), sec) == flat);

    auto ser = parse_series(dump_stable(Json::array({cj, cj})), sec);
    REQUIRE(ser.size() == 2);
    CHECK(ser[0] == flat);
    CHECK(ser[1] == flat);

    CHECK_THROWS_AS(parse_cochain2(
                        R"([{"A":"X1","B":"X2","C":"X3","value":"1"},)"
                        R"({"A":"X1","B":"X2","C":"X3","value":"2"}])", sec),
                    IoError);  // duplicate component
}

TEST_CASE("regulated values serialize under each policy") {
    // smooth value: the limit policy gives a bare rational string
    auto y = y_closed(Dim{2, 1}, Dim{2, 3}, Dim{2, 9}, 1);
    auto jl = matrix_json(y, EpsPolicy::Limit);
    CHECK(jl["entries"][0][0] == "-1/2");
    CHECK(jl["entries"][1][0] == "3/2");

    // a pole reports its order and leading coefficient
    auto pole = RegulatedScalar(EpsPoly(Rational(1)), EpsPoly::eps());
    auto pj = regulated_json(pole, EpsPolicy::Limit);
    CHECK(pj["poleOrder"] == 1);
    CHECK(pj["leading"] == "1");

    // laurent data: leading order plus a fixed window of coefficients
    auto lj = regulated_json(pole, EpsPolicy::Laurent);
    CHECK(lj["leadingOrder"] == -1);
    CHECK(lj["coefficients"].size() == 5);
    CHECK(lj["coefficients"][0] == "1");
    CHECK(lj["coefficients"][1] == "0");

    // generic policy keeps the full rational function
    auto gj = regulated_json(y(0, 0), EpsPolicy::Generic);
    CHECK(gj.contains("num"));
    CHECK(gj.contains("den"));

    // stable bytes: two dumps agree
    CHECK(dump_stable(matrix_json(y, EpsPolicy::Laurent)) ==
          dump_stable(matrix_json(y_closed(Dim{2, 1}, Dim{2, 3}, Dim{2, 9}, 1), EpsPolicy::Laurent)));
    CHECK(dump_stable(jl).back() == '\n');
}

TEST_CASE("laurent expansion of a smooth value starts at its limit") {
    auto y = y_closed(Dim{2, 1}, Dim{2, 3}, Dim{2, 9}, 1);
    auto lj = laurent_json(y(1, 0), 3);
    CHECK(lj["leadingOrder"].get<int>() == 0);
    CHECK(lj["coefficients"][0] == "3/2");
}
