#pragma once

// JSON input parsing and byte-stable serialization. All numbers travel as
// canonical rational strings; objects serialize with sorted keys, so equal
// data always produces equal bytes.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rla/cochain.hpp"
#include "rla/reduced.hpp"

namespace rla {

using Json = nlohmann::json;  // object keys kept sorted

/// Input-validation failure; messages carry the JSON path of the offender.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// How regulated values appear in output files.
enum class EpsPolicy { Generic, Limit, Laurent };

inline std::string dump_stable(const Json& j) { return j.dump() + "\n"; }

// ---------------------------------------------------------------------------
// scalar serialization

inline Json poly_json(const EpsPoly& p) {
    Json arr = Json::array();
    for (const auto& c : p.coeffs()) arr.push_back(rat_to_string(c));
    return arr;
}

/// Truncated Laurent series of v at eps = 0, `terms` coefficients starting
/// at the leading order.
inline Json laurent_json(const RegulatedScalar& v, int terms = 5) {
    Json out;
    if (v.is_zero()) {
        out["leadingOrder"] = 0;
        out["coefficients"] = Json::array({"0"});
        return out;
    }
    int nord = v.num().order_at_zero();
    int dord = v.den().order_at_zero();
    EpsPoly num = v.num().shifted_down(nord);
    EpsPoly den = v.den().shifted_down(dord);
    // power-series division, den has a unit constant term
    std::vector<Rational> series(terms, 0);
    Rational d0 = den.coeff(0);
    for (int k = 0; k < terms; ++k) {
        Rational acc = num.coeff(k);
        for (int j = 1; j <= k; ++j) acc -= den.coeff(j) * series[k - j];
        series[k] = acc / d0;
    }
    out["leadingOrder"] = nord - dord;
    Json arr = Json::array();
    for (const auto& c : series) arr.push_back(rat_to_string(c));
    out["coefficients"] = arr;
    return out;
}

inline Json regulated_json(const RegulatedScalar& v, EpsPolicy policy) {
    switch (policy) {
        case EpsPolicy::Generic: {
            Json out;
            out["num"] = poly_json(v.num());
            out["den"] = poly_json(v.den());
            return out;
        }
        case EpsPolicy::Limit: {
            auto lim = regulated_limit(v);
            if (std::holds_alternative<Rational>(lim))
                return rat_to_string(std::get<Rational>(lim));
            auto& p = std::get<PoleReport>(lim);
            Json out;
            out["poleOrder"] = p.order;
            out["leading"] = rat_to_string(p.leading);
            return out;
        }
        case EpsPolicy::Laurent:
            return laurent_json(v);
    }
    throw std::logic_error("unreachable");
}

inline Json matrix_json(const Matrix<Rational>& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rat_to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    Json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    out["entries"] = std::move(rows);
    return out;
}

inline Json matrix_json(const Matrix<RegulatedScalar>& m, EpsPolicy policy) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(regulated_json(m(i, j), policy));
        rows.push_back(std::move(row));
    }
    Json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    out["entries"] = std::move(rows);
    return out;
}

// ---------------------------------------------------------------------------
// parsing helpers

namespace detail {

inline Json parse_json(const std::string& bytes) {
    Json j = Json::parse(bytes, nullptr, false);
    if (j.is_discarded()) throw IoError("input is not valid JSON");
    return j;
}

inline Rational parse_rational(const Json& j, const std::string& path) {
    if (!j.is_string()) throw IoError(path + ": expected a rational string");
    try {
        return rat_from_string(j.get<std::string>());
    } catch (const std::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

inline std::string parse_label(const Json& j, const std::string& path) {
    if (!j.is_string() || j.get<std::string>().empty())
        throw IoError(path + ": expected a non-empty field label");
    return j.get<std::string>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// reduced space

inline ReducedSpace parse_space(const std::string& bytes) {
    Json j = detail::parse_json(bytes);
    if (!j.is_object() || !j.contains("grades") || !j["grades"].is_array())
        throw IoError("space: expected an object with a \"grades\" array");
    std::map<int, std::vector<std::string>> grades;
    int idx = 0;
    for (const auto& g : j["grades"]) {
        std::string path = "space.grades[" + std::to_string(idx++) + "]";
        if (!g.is_object() || !g.contains("dim") || !g.contains("fields"))
            throw IoError(path + ": expected {\"dim\": grade, \"fields\": [...]}");
        if (!g["dim"].is_number_integer()) throw IoError(path + ".dim: expected an integer");
        int grade = g["dim"].get<int>();
        if (grade < 1)
            throw IoError(path + ".dim: grade " + std::to_string(grade) +
                          " violates the unitarity bound (grades must be >= 1)");
        if (!g["fields"].is_array()) throw IoError(path + ".fields: expected an array");
        if (grades.count(grade)) throw IoError(path + ".dim: duplicate grade");
        std::vector<std::string> labels;
        int fi = 0;
        for (const auto& f : g["fields"])
            labels.push_back(detail::parse_label(f, path + ".fields[" + std::to_string(fi++) + "]"));
        grades[grade] = std::move(labels);
    }
    try {
        return ReducedSpace(std::move(grades));
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("space: ") + e.what());
    }
}

inline Json emit_space(const ReducedSpace& space) {
    Json arr = Json::array();
    for (const auto& [grade, labels] : space.grades()) {
        Json g;
        g["dim"] = grade;
        g["fields"] = labels;
        arr.push_back(std::move(g));
    }
    Json out;
    out["grades"] = std::move(arr);
    return out;
}

// ---------------------------------------------------------------------------
// structure constants

inline StructureConstants parse_structure_constants(const std::string& bytes,
                                                    const ReducedSpace& space) {
    Json j = detail::parse_json(bytes);
    if (!j.is_array()) throw IoError("F: expected an array of {A, B, C, value} entries");
    StructureConstants f;
    int idx = 0;
    for (const auto& e : j) {
        std::string path = "F[" + std::to_string(idx++) + "]";
        if (!e.is_object() || !e.contains("A") || !e.contains("B") || !e.contains("C") ||
            !e.contains("value"))
            throw IoError(path + ": expected {\"A\", \"B\", \"C\", \"value\"}");
        std::string a = detail::parse_label(e["A"], path + ".A");
        std::string b = detail::parse_label(e["B"], path + ".B");
        std::string c = detail::parse_label(e["C"], path + ".C");
        Rational v = detail::parse_rational(e["value"], path + ".value");
        try {
            f.set(space, a, b, c, v);
        } catch (const std::invalid_argument& err) {
            throw IoError(path + ": " + err.what());
        }
    }
    return f;
}

inline Json emit_structure_constants(const StructureConstants& f) {
    Json arr = Json::array();
    for (const auto& [key, value] : f.entries()) {
        Json e;
        e["A"] = key[0];
        e["B"] = key[1];
        e["C"] = key[2];
        e["value"] = rat_to_string(value);
        arr.push_back(std::move(e));
    }
    return arr;
}

// ---------------------------------------------------------------------------
// quadratic form (gram)

inline QuadraticForm parse_gram(const std::string& bytes, const ReducedSpace& space) {
    Json j = detail::parse_json(bytes);
    if (!j.is_object()) throw IoError("gram: expected an object keyed by grade");
    QuadraticForm g;
    for (const auto& [key, val] : j.items()) {
        std::string path = "gram[\"" + key + "\"]";
        int grade;
        try {
            size_t pos = 0;
            grade = std::stoi(key, &pos);
            if (pos != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw IoError(path + ": key must be a grade integer");
        }
        if (!space.populated(grade)) throw IoError(path + ": grade not present in the space");
        int d = space.dim(grade);
        if (!val.is_array() || static_cast<int>(val.size()) != d)
            throw IoError(path + ": expected a " + std::to_string(d) + "x" + std::to_string(d) +
                          " matrix");
        Matrix<Rational> block(d, d);
        for (int i = 0; i < d; ++i) {
            const auto& row = val[i];
            if (!row.is_array() || static_cast<int>(row.size()) != d)
                throw IoError(path + "[" + std::to_string(i) + "]: expected " + std::to_string(d) +
                              " entries");
            for (int k = 0; k < d; ++k)
                block(i, k) = detail::parse_rational(
                    row[k], path + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
        }
        try {
            g.set_block(grade, std::move(block));
        } catch (const std::invalid_argument& e) {
            throw IoError(path + ": " + e.what());
        }
    }
    return g;
}

inline Json emit_gram(const QuadraticForm& g) {
    Json out = Json::object();
    for (const auto& [grade, block] : g.blocks()) {
        Json rows = Json::array();
        for (int i = 0; i < block.rows(); ++i) {
            Json row = Json::array();
            for (int j = 0; j < block.cols(); ++j) row.push_back(rat_to_string(block(i, j)));
            rows.push_back(std::move(row));
        }
        out[std::to_string(grade)] = std::move(rows);
    }
    return out;
}

// ---------------------------------------------------------------------------
// constraint systems

inline Json emit_constraints(const ConstraintSystem& sys) {
    Json arr = Json::array();
    for (const auto& con : sys.constraints) {
        Json c;
        Json ctx;
        ctx["A"] = con.a;
        ctx["B"] = con.b;
        ctx["C"] = con.c;
        ctx["E"] = con.e;
        ctx["m1"] = con.m1;
        ctx["m2"] = con.m2;
        c["context"] = std::move(ctx);
        c["epsOrder"] = con.eps_order;
        Json monos = Json::array();
        for (const auto& m : con.monomials) {
            Json mj;
            mj["coeff"] = rat_to_string(m.coeff);
            mj["vars"] = Json::array({Json(m.vars[0]), Json(m.vars[1])});
            monos.push_back(std::move(mj));
        }
        c["monomials"] = std::move(monos);
        arr.push_back(std::move(c));
    }
    return arr;
}

inline ConstraintSystem parse_constraints(const std::string& bytes) {
    Json j = detail::parse_json(bytes);
    if (!j.is_array()) throw IoError("constraints: expected an array");
    ConstraintSystem sys;
    int idx = 0;
    for (const auto& c : j) {
        std::string path = "constraints[" + std::to_string(idx++) + "]";
        if (!c.is_object() || !c.contains("context") || !c.contains("monomials") ||
            !c.contains("epsOrder"))
            throw IoError(path + ": expected {context, monomials, epsOrder}");
        const auto& ctx = c["context"];
        Constraint con;
        con.a = detail::parse_label(ctx["A"], path + ".context.A");
        con.b = detail::parse_label(ctx["B"], path + ".context.B");
        con.c = detail::parse_label(ctx["C"], path + ".context.C");
        con.e = detail::parse_label(ctx["E"], path + ".context.E");
        if (!ctx["m1"].is_number_integer() || !ctx["m2"].is_number_integer())
            throw IoError(path + ".context: m1/m2 must be integers");
        con.m1 = ctx["m1"].get<int>();
        con.m2 = ctx["m2"].get<int>();
        if (!c["epsOrder"].is_number_integer()) throw IoError(path + ".epsOrder: expected integer");
        con.eps_order = c["epsOrder"].get<int>();
        int mi = 0;
        for (const auto& m : c["monomials"]) {
            std::string mpath = path + ".monomials[" + std::to_string(mi++) + "]";
            if (!m.is_object() || !m.contains("coeff") || !m.contains("vars") ||
                !m["vars"].is_array() || m["vars"].size() != 2)
                throw IoError(mpath + ": expected {coeff, vars: [[A,B,C],[A,B,C]]}");
            ConstraintMonomial mono;
            mono.coeff = detail::parse_rational(m["coeff"], mpath + ".coeff");
            for (int v = 0; v < 2; ++v) {
                const auto& trip = m["vars"][v];
                if (!trip.is_array() || trip.size() != 3)
                    throw IoError(mpath + ".vars[" + std::to_string(v) + "]: expected [A,B,C]");
                for (int t = 0; t < 3; ++t)
                    mono.vars[v][t] = detail::parse_label(
                        trip[t], mpath + ".vars[" + std::to_string(v) + "]");
            }
            con.monomials.push_back(std::move(mono));
        }
        sys.constraints.push_back(std::move(con));
    }
    return sys;
}

// ---------------------------------------------------------------------------
// grade-1 sector cochains (deformation inputs)

/// Degree-2 cochain component map on the grade-1 sector:
/// [{"A", "B", "C", "value"}] gives the C-component of omega(A, B) at m = 0.
inline std::vector<Rational> parse_cochain2(const std::string& bytes, const Grade1Sector& sector,
                                            const std::string& what = "cochain") {
    Json j = detail::parse_json(bytes);
    if (!j.is_array()) throw IoError(what + ": expected an array of {A, B, C, value} entries");
    const auto& space = sector.space();
    int d = sector.field_count();
    std::vector<Rational> flat(sector.slot_count(2), 0);
    std::vector<bool> seen(flat.size(), false);
    int idx = 0;
    for (const auto& e : j) {
        std::string path = what + "[" + std::to_string(idx++) + "]";
        if (!e.is_object() || !e.contains("A") || !e.contains("B") || !e.contains("C") ||
            !e.contains("value"))
            throw IoError(path + ": expected {\"A\", \"B\", \"C\", \"value\"}");
        FieldRef fa, fb, fc;
        try {
            fa = space.locate(detail::parse_label(e["A"], path + ".A"));
            fb = space.locate(detail::parse_label(e["B"], path + ".B"));
            fc = space.locate(detail::parse_label(e["C"], path + ".C"));
        } catch (const std::invalid_argument& err) {
            throw IoError(path + ": " + err.what());
        }
        if (fa.grade != 1 || fb.grade != 1 || fc.grade != 1)
            throw IoError(path + ": all labels must be grade-1 fields");
        size_t slot = (static_cast<size_t>(fa.index) * d + fb.index) * d + fc.index;
        if (seen[slot]) throw IoError(path + ": duplicate component");
        seen[slot] = true;
        flat[slot] = detail::parse_rational(e["value"], path + ".value");
    }
    return flat;
}

inline Json emit_cochain2(const std::vector<Rational>& flat, const Grade1Sector& sector) {
    const auto& labels = sector.space().labels(1);
    int d = sector.field_count();
    Json arr = Json::array();
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) {
                const Rational& v = flat[(static_cast<size_t>(a) * d + b) * d + c];
                if (v == 0) continue;
                Json e;
                e["A"] = labels[a];
                e["B"] = labels[b];
                e["C"] = labels[c];
                e["value"] = rat_to_string(v);
                arr.push_back(std::move(e));
            }
    return arr;
}

/// Series file: JSON list of degree-2 component maps, ascending order in
/// the perturbation parameter.
inline std::vector<std::vector<Rational>> parse_series(const std::string& bytes,
                                                       const Grade1Sector& sector) {
    Json j = detail::parse_json(bytes);
    if (!j.is_array()) throw IoError("series: expected an array of component maps");
    std::vector<std::vector<Rational>> out;
    for (size_t i = 0; i < j.size(); ++i)
        out.push_back(
            parse_cochain2(j[i].dump(), sector, "series[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace rla
