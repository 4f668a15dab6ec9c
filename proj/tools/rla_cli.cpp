// Command-line front end: every module reachable as a subcommand, all
// machine-readable output as byte-stable JSON (sorted keys, rational
// strings). Exit codes: 0 success, 1 a check found violations, 2 bad input.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rla/deform.hpp"
#include "rla/intertwiner.hpp"
#include "rla/io.hpp"

using namespace rla;

namespace {

struct Options {
    std::string out;
    unsigned long long seed = 0;
    std::string regulator_set = "3pow";
    std::string eps = "generic";
};

RegulatorSet regulator_of(const Options& opt) {
    if (opt.regulator_set == "3pow") return RegulatorSet::Pow3;
    if (opt.regulator_set == "5pow") return RegulatorSet::Pow5;
    throw IoError("unknown regulator set '" + opt.regulator_set + "'");
}

EpsPolicy eps_policy_of(const Options& opt) {
    if (opt.eps == "generic") return EpsPolicy::Generic;
    if (opt.eps == "limit") return EpsPolicy::Limit;
    if (opt.eps == "laurent") return EpsPolicy::Laurent;
    throw IoError("unknown eps policy '" + opt.eps + "'");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read input file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const Options& opt, const Json& j) {
    std::string bytes = dump_stable(j);
    if (opt.out.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw IoError("cannot write output file " + opt.out);
    out << bytes;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            out.push_back(std::stoi(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw IoError(what + ": expected a comma-separated integer list");
        }
    }
    if (out.empty()) throw IoError(what + ": empty list");
    return out;
}

Json cochain3_entries(const std::vector<Rational>& flat, const Grade1Sector& sector) {
    const auto& labels = sector.space().labels(1);
    int d = sector.field_count();
    Json arr = Json::array();
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e) {
                    const Rational& v = flat[((static_cast<size_t>(a) * d + b) * d + c) * d + e];
                    if (v == 0) continue;
                    Json entry;
                    entry["A"] = labels[a];
                    entry["B"] = labels[b];
                    entry["C"] = labels[c];
                    entry["D"] = labels[e];
                    entry["value"] = rat_to_string(v);
                    arr.push_back(std::move(entry));
                }
    return arr;
}

Json constraint_context(const Constraint& con) {
    Json ctx;
    ctx["A"] = con.a;
    ctx["B"] = con.b;
    ctx["C"] = con.c;
    ctx["E"] = con.e;
    ctx["m1"] = con.m1;
    ctx["m2"] = con.m2;
    return ctx;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact representation data of chiral W-algebra brackets"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--out", opt.out, "output file (stdout when omitted)");
    app.add_option("--seed", opt.seed, "seed for randomized drivers");
    app.add_option("--regulator-set", opt.regulator_set, "regulator multipliers")
        ->check(CLI::IsMember({"3pow", "5pow"}));
    app.add_option("--eps", opt.eps, "regulated-value output policy")
        ->check(CLI::IsMember({"generic", "limit", "laurent"}));

    int a = 0, b = 0, c = 0, n = 0, e = 0, order = 0, degree = 0;
    int max_total_grade = 0, cutoff = 2;
    bool higher_orders = false, eps_limit_flag = false;
    std::string dims_str, perm_str, method = "closed", sector_name = "grade1", degree_range;
    std::string space_path, f_path, gram_path, gamma1_path, series_path, constraints_path;

    auto* lambda_cmd = app.add_subcommand("lambda", "bilinear intertwiner coefficient table");
    lambda_cmd->add_option("--a", a)->required();
    lambda_cmd->add_option("--b", b)->required();
    lambda_cmd->add_option("--c", c)->required();

    auto* tbasis_cmd = app.add_subcommand("tbasis", "iterated intertwiner basis");
    tbasis_cmd->add_option("--dims", dims_str)->required();
    tbasis_cmd->add_option("--e", e)->required();

    auto* ymatrix_cmd = app.add_subcommand("ymatrix", "cyclic basis-transformation matrix");
    ymatrix_cmd->add_option("--a", a)->required();
    ymatrix_cmd->add_option("--b", b)->required();
    ymatrix_cmd->add_option("--c", c)->required();
    ymatrix_cmd->add_option("--n", n)->required();
    ymatrix_cmd->add_option("--method", method)->check(CLI::IsMember({"closed", "recursive", "oracle"}));
    ymatrix_cmd->add_flag("--eps-limit", eps_limit_flag, "shorthand for --eps limit");

    auto* zmatrix_cmd = app.add_subcommand("zmatrix", "permutation transformation matrix");
    zmatrix_cmd->add_option("--dims", dims_str)->required();
    zmatrix_cmd->add_option("--perm", perm_str, "1-based images of the slots")->required();
    zmatrix_cmd->add_option("--n", n, "total mode degree of the block");

    auto* con_cmd = app.add_subcommand("constraints", "reduced Jacobi constraint systems");
    con_cmd->require_subcommand(1);
    auto* con_gen = con_cmd->add_subcommand("generate");
    con_gen->add_option("--space", space_path)->required();
    con_gen->add_option("--max-total-grade", max_total_grade)->required();
    con_gen->add_flag("--higher-orders", higher_orders);
    auto* con_check = con_cmd->add_subcommand("check");
    con_check->add_option("--space", space_path)->required();
    con_check->add_option("--f", f_path)->required();
    con_check->add_option("--constraints", constraints_path, "pre-generated system (else generated)");
    con_check->add_option("--max-total-grade", max_total_grade);

    auto* inv_cmd = app.add_subcommand("invariance", "invariance of the quadratic form");
    inv_cmd->require_subcommand(1);
    auto* inv_check = inv_cmd->add_subcommand("check");
    inv_check->add_option("--space", space_path)->required();
    inv_check->add_option("--f", f_path)->required();
    inv_check->add_option("--gram", gram_path)->required();

    auto* gram_cmd = app.add_subcommand("gram", "positivity of the quadratic form");
    gram_cmd->require_subcommand(1);
    auto* gram_check = gram_cmd->add_subcommand("check");
    gram_check->add_option("--space", space_path)->required();
    gram_check->add_option("--gram", gram_path)->required();

    auto* coh_cmd = app.add_subcommand("cohomology", "cochain complex");
    coh_cmd->require_subcommand(1);
    auto* coh_dims = coh_cmd->add_subcommand("dims");
    coh_dims->add_option("--space", space_path)->required();
    coh_dims->add_option("--f", f_path)->required();
    coh_dims->add_option("--degree", degree)->required();
    coh_dims->add_option("--sector", sector_name);
    auto* coh_bb = coh_cmd->add_subcommand("bb-test");
    coh_bb->add_option("--space", space_path)->required();
    coh_bb->add_option("--f", f_path)->required();
    coh_bb->add_option("--degree", degree_range, "cochain degree, single or lo..hi")->required();
    coh_bb->add_option("--cutoff", cutoff, "max argument grade");

    auto* def_cmd = app.add_subcommand("deform", "order-by-order deformations");
    def_cmd->require_subcommand(1);
    auto* def_first = def_cmd->add_subcommand("check-first-order");
    def_first->add_option("--space", space_path)->required();
    def_first->add_option("--f", f_path)->required();
    def_first->add_option("--gamma1", gamma1_path)->required();
    auto* def_obs = def_cmd->add_subcommand("obstruct");
    def_obs->add_option("--space", space_path)->required();
    def_obs->add_option("--f", f_path)->required();
    def_obs->add_option("--order", order)->required();
    def_obs->add_option("--series", series_path)->required();
    auto* def_int = def_cmd->add_subcommand("integrate");
    def_int->add_option("--space", space_path)->required();
    def_int->add_option("--f", f_path)->required();
    def_int->add_option("--order", order)->required();
    def_int->add_option("--series", series_path)->required();

    // allow the global flags after the subcommand as well
    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (eps_limit_flag) opt.eps = "limit";
        RegulatorSet reg = regulator_of(opt);
        EpsPolicy policy = eps_policy_of(opt);

        if (lambda_cmd->parsed()) {
            if (a < 1 || b < 1 || c < 0 || c >= a + b)
                throw IoError("lambda requires a, b >= 1 and 0 <= c < a+b");
            Json out = Json::object();
            int m = a + b - c - 1;
            for (int p = 0; p <= m; ++p)
                out["(" + std::to_string(p) + "," + std::to_string(m - p) + ")"] =
                    rat_to_string(lambda_coeff(a, b, c, p, m - p));
            write_output(opt, out);
            return 0;
        }

        if (tbasis_cmd->parsed()) {
            auto dims = parse_int_list(dims_str, "--dims");
            auto scheme = BracketScheme::right_comb(static_cast<int>(dims.size()));
            auto basis = enumerate_m_tuples(scheme, dims, e);
            Json arr = Json::array();
            for (const auto& elem : basis) {
                Json item;
                item["m"] = elem.m_tuple;
                item["intermediateDims"] = intermediate_dims(elem.dims, elem.m_tuple);
                arr.push_back(std::move(item));
            }
            Json out;
            out["dims"] = dims;
            out["target"] = e;
            out["basis"] = std::move(arr);
            write_output(opt, out);
            return 0;
        }

        if (ymatrix_cmd->parsed()) {
            auto dims = regulate({a, b, c}, reg);
            Matrix<RegulatedScalar> y =
                method == "closed"      ? y_closed(dims[0], dims[1], dims[2], n)
                : method == "recursive" ? y_recursive(dims[0], dims[1], dims[2], n)
                                        : y_oracle(dims[0], dims[1], dims[2], n);
            if (policy == EpsPolicy::Limit) {
                // golden form: plain nested array of limit values
                Json rows = Json::array();
                for (int i = 0; i <= n; ++i) {
                    Json row = Json::array();
                    for (int j = 0; j <= n; ++j) row.push_back(regulated_json(y(i, j), policy));
                    rows.push_back(std::move(row));
                }
                write_output(opt, rows);
            } else {
                write_output(opt, matrix_json(y, policy));
            }
            return 0;
        }

        if (zmatrix_cmd->parsed()) {
            auto grades = parse_int_list(dims_str, "--dims");
            auto perm1 = parse_int_list(perm_str, "--perm");
            if (perm1.size() != grades.size())
                throw IoError("--perm length must match --dims");
            std::vector<int> perm;
            for (int p : perm1) {
                if (p < 1 || p > static_cast<int>(grades.size()))
                    throw IoError("--perm entries must be 1.." + std::to_string(grades.size()));
                perm.push_back(p - 1);
            }
            auto dims = regulate(grades, reg);
            auto z = z_matrix(dims, perm, n);
            write_output(opt, matrix_json(z, policy));
            return 0;
        }

        if (con_gen->parsed()) {
            auto space = parse_space(slurp(space_path));
            auto sys = generate_constraints(space, max_total_grade, higher_orders, reg);
            write_output(opt, emit_constraints(sys));
            return 0;
        }

        if (con_check->parsed()) {
            auto space = parse_space(slurp(space_path));
            auto f = parse_structure_constants(slurp(f_path), space);
            ConstraintSystem sys;
            if (!constraints_path.empty()) {
                sys = parse_constraints(slurp(constraints_path));
            } else {
                int mtg = max_total_grade;
                if (mtg == 0) {
                    int gmax = space.grades().rbegin()->first;
                    mtg = 3 * gmax;
                }
                sys = generate_constraints(space, mtg, false, reg);
            }
            auto rep = check_constraints(sys, f);
            Json viols = Json::array();
            for (const auto& r : rep.nonzero) {
                Json v;
                v["context"] = constraint_context(*r.constraint);
                v["value"] = rat_to_string(r.value);
                viols.push_back(std::move(v));
            }
            Json out;
            out["checked"] = static_cast<int>(sys.constraints.size());
            out["violations"] = std::move(viols);
            write_output(opt, out);
            return rep.ok() ? 0 : 1;
        }

        if (inv_check->parsed()) {
            auto space = parse_space(slurp(space_path));
            auto f = parse_structure_constants(slurp(f_path), space);
            auto g = parse_gram(slurp(gram_path), space);
            auto res = invariance_residuals(space, f, g);
            Json viols = Json::array();
            for (const auto& r : res) {
                Json v;
                v["A"] = r.a;
                v["B"] = r.b;
                v["C"] = r.c;
                v["value"] = rat_to_string(r.value);
                viols.push_back(std::move(v));
            }
            Json out;
            out["violations"] = std::move(viols);
            write_output(opt, out);
            return res.empty() ? 0 : 1;
        }

        if (gram_check->parsed()) {
            auto space = parse_space(slurp(space_path));
            auto g = parse_gram(slurp(gram_path), space);
            auto res = gram_positivity_check(g);
            Json out;
            out["positive"] = res.positive;
            if (!res.positive) {
                out["failingGrade"] = res.failing_grade;
                Json w = Json::array();
                for (const auto& x : res.witness) w.push_back(rat_to_string(x));
                out["witness"] = std::move(w);
            }
            write_output(opt, out);
            return res.positive ? 0 : 1;
        }

        if (coh_dims->parsed()) {
            auto space = parse_space(slurp(space_path));
            auto f = parse_structure_constants(slurp(f_path), space);
            auto r = rlh_dims(space, f, degree, sector_name);
            Json out;
            out["dimZ"] = r.dim_z;
            out["dimB"] = r.dim_b;
            out["dimRLH"] = r.dim_rlh;
            write_output(opt, out);
            return 0;
        }

        if (coh_bb->parsed()) {
            auto space = parse_space(slurp(space_path));
            auto f = parse_structure_constants(slurp(f_path), space);
            int lo, hi;
            auto dots = degree_range.find("..");
            try {
                if (dots == std::string::npos) {
                    lo = hi = std::stoi(degree_range);
                } else {
                    lo = std::stoi(degree_range.substr(0, dots));
                    hi = std::stoi(degree_range.substr(dots + 2));
                }
            } catch (const std::exception&) {
                throw IoError("--degree: expected an integer or lo..hi range");
            }
            if (lo < 1 || hi < lo) throw IoError("--degree: range must be ascending from >= 1");
            // exact evaluation at a fixed generic regulator value
            const Rational eps0(1, 64);
            std::vector<FieldRef> fields;
            for (const auto& [g, labels] : space.grades()) {
                if (g > cutoff) continue;
                for (int i = 0; i < static_cast<int>(labels.size()); ++i)
                    fields.push_back({g, i});
            }
            Json failures = Json::array();
            int slots = 0;
            for (int deg = lo; deg <= hi; ++deg) {
                if (deg > 2) throw IoError("--degree: random cochains available up to degree 2");
                Cochain<Rational> w = deg == 1
                                          ? random_cochain_deg1<Rational>(space, opt.seed)
                                          : random_cochain_deg2<Rational>(space, opt.seed);
                auto bw = memoized(coboundary(space, f, deg, std::move(w)));
                auto bbw = coboundary(space, f, deg + 1, bw);
                std::vector<size_t> pick(deg + 2, 0);
                bool done = fields.empty();
                while (!done) {
                    std::vector<FieldRef> tuple;
                    int total = 0;
                    for (size_t i : pick) {
                        tuple.push_back(fields[i]);
                        total += fields[i].grade;
                    }
                    auto args = numeric_args(tuple, reg, eps0);
                    for (int M = 0; M <= total - deg - 2; ++M)
                        for (const auto& m : m_tuples_of_degree(deg + 1, M)) {
                            auto v = bbw(args, m);
                            ++slots;
                            for (size_t j = 0; j < v.size(); ++j)
                                if (v[j] != 0) {
                                    Json fail;
                                    Json labels = Json::array();
                                    for (const auto& fr : tuple)
                                        labels.push_back(
                                            space.labels(fr.grade)[fr.index]);
                                    fail["args"] = std::move(labels);
                                    fail["m"] = m;
                                    fail["component"] = static_cast<int>(j);
                                    fail["value"] = rat_to_string(v[j]);
                                    fail["degree"] = deg;
                                    failures.push_back(std::move(fail));
                                }
                        }
                    done = true;
                    for (int i = static_cast<int>(pick.size()) - 1; i >= 0; --i) {
                        if (++pick[i] < fields.size()) {
                            done = false;
                            break;
                        }
                        pick[i] = 0;
                    }
                }
            }
            Json out;
            out["pass"] = failures.empty();
            out["slotsChecked"] = slots;
            out["failures"] = failures;
            write_output(opt, out);
            return failures.empty() ? 0 : 1;
        }

        if (def_first->parsed() || def_obs->parsed() || def_int->parsed()) {
            auto space = parse_space(slurp(space_path));
            auto f = parse_structure_constants(slurp(f_path), space);
            Grade1Sector sector(space, f);

            if (def_first->parsed()) {
                auto gamma1 = parse_cochain2(slurp(gamma1_path), sector, "gamma1");
                auto chk = first_order_cocycle_check(sector, gamma1);
                int nonzero = 0;
                for (const auto& v : chk.residual)
                    if (v != 0) ++nonzero;
                Json out;
                out["ok"] = chk.ok;
                out["residualNonzero"] = nonzero;
                write_output(opt, out);
                return chk.ok ? 0 : 1;
            }

            DeformationSeries series{parse_series(slurp(series_path), sector)};
            if (def_obs->parsed()) {
                auto g = obstruction_Gn(sector, series, order);
                Json out;
                out["entries"] = cochain3_entries(g, sector);
                out["bGzero"] = bG_test(sector, series, order);
                write_output(opt, out);
                return 0;
            }

            auto res = integrate_step(sector, series, order);
            Json out;
            out["obstructed"] = res.obstructed;
            out["ambiguityDim"] = res.ambiguity_dim;
            out["bGzero"] = res.bg_zero;
            if (res.obstructed)
                out["witness"] = cochain3_entries(res.witness, sector);
            else
                out["gamma"] = emit_cochain2(res.gamma, sector);
            write_output(opt, out);
            return res.obstructed ? 1 : 0;
        }

        throw IoError("no command handled");
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
