#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dalg/atlas.hpp"
#include "dalg/classifiers.hpp"
#include "dalg/constant_search.hpp"
#include "dalg/integrate.hpp"
#include "dalg/parse.hpp"
#include "dalg/riccati.hpp"

namespace dalg {

using json = nlohmann::ordered_json;

/// One command invocation's result; serializes to the fixed machine
/// schema {command, input, status, witness, certificate, citations}.
struct CommandResult {
    std::string command;
    json input = json::object();
    std::string status = "ok";
    json witness = nullptr;
    json certificate = nullptr;
    std::vector<std::string> citations;
    std::string text;
    int exit_code = 0;

    json to_json() const {
        json j = json::object();
        j["command"] = command;
        j["input"] = input;
        j["status"] = status;
        j["witness"] = witness;
        j["certificate"] = certificate;
        j["citations"] = citations;
        return j;
    }
};

struct CommandOutcome {
    std::vector<CommandResult> results;
    bool as_json = false;
    int exit_code = 0;

    std::string render() const {
        std::ostringstream os;
        bool first = true;
        for (const auto& r : results) {
            if (!first) os << (as_json ? "\n" : "\n\n");
            first = false;
            if (as_json) os << r.to_json().dump();
            else os << r.text;
        }
        return os.str();
    }
};

namespace cmd_detail {

inline void set_provenance(CommandResult& r, const std::string& branch) {
    if (r.certificate.is_null()) r.certificate = json::object();
    r.certificate["provenance"] = branch;
}

inline int severity(int code) { return code == 1 ? 2 : code == 2 ? 1 : 0; }

inline json witness_json(const LogDerivWitness& w) {
    json j = json::object();
    j["u"] = w.factors_string();
    j["c"] = w.c.to_string();
    if (w.symmetric_pair_b) j["symmetric_pair_b"] = w.symmetric_pair_b->to_string();
    json fs = json::array();
    for (const auto& fe : w.factors) {
        json f = json::object();
        f["base"] = fe.base.to_string();
        f["exponent"] = fe.exponent;
        fs.push_back(f);
    }
    j["factors"] = fs;
    return j;
}

inline json witness_json(const ConstantWitness& w) {
    json j = json::object();
    j["kind"] = to_string(w.kind);
    j["z"] = w.z.to_string();
    if (w.c) j["c"] = w.c->to_string();
    return j;
}

inline std::string describe(const LogDerivVerdict& v) {
    std::string s = to_string(v.status);
    if (v.certificate) s += " (" + to_string(*v.certificate) + ")";
    if (!v.detail.empty()) s += ": " + v.detail;
    return s;
}

/// Splits a comma-separated list of expressions.
inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline GroupDescriptor parse_group(const std::string& s) {
    auto trim = [](std::string x) {
        while (!x.empty() && x.front() == ' ') x.erase(x.begin());
        while (!x.empty() && x.back() == ' ') x.pop_back();
        return x;
    };
    std::string t = trim(s);
    auto xpos = t.find('x');
    if (xpos != std::string::npos && t.rfind("SL", 0) != std::string::npos) {
        // product form A x B x ...
        std::vector<GroupDescriptor> fs;
        std::size_t start = 0;
        for (;;) {
            auto p = t.find('x', start);
            std::string piece = trim(t.substr(start, p == std::string::npos ? p : p - start));
            fs.push_back(parse_group(piece));
            if (p == std::string::npos) break;
            start = p + 1;
        }
        return GroupDescriptor::product(std::move(fs));
    }
    if (t == "G2") return GroupDescriptor::G2();
    if (t == "Gm") return GroupDescriptor::Gm();
    if (t == "Ga") return GroupDescriptor::Ga();
    auto num = [&](std::size_t off) -> unsigned {
        unsigned n = static_cast<unsigned>(std::stoul(t.substr(off)));
        return n;
    };
    if (t.rfind("SL", 0) == 0) return GroupDescriptor::SL_n(num(2));
    if (t.rfind("SP", 0) == 0) {
        unsigned n = num(2);
        if (n % 2) throw std::invalid_argument("SP size must be even: " + t);
        return GroupDescriptor::SP(n / 2);
    }
    if (t.rfind("SO", 0) == 0) {
        unsigned n = num(2);
        if (n % 2 == 0) throw std::invalid_argument("only odd orthogonal groups are tabled: " + t);
        return GroupDescriptor::SO((n - 1) / 2);
    }
    throw std::invalid_argument("unknown group '" + t + "'");
}

}  // namespace cmd_detail

// ---------------------------------------------------------------------------
// Individual commands (library surface used by both the CLI and tests)
// ---------------------------------------------------------------------------

inline CommandResult cmd_riccati(const std::string& op_src) {
    CommandResult r;
    r.command = "riccati";
    r.input["operator"] = op_src;
    auto L = to_operator(parse_expression(op_src));
    auto R = riccati_of(L);
    r.witness = json::object();
    r.witness["riccati"] = R.to_string();
    r.witness["order"] = R.max_derivative_order() + 1;
    cmd_detail::set_provenance(r, "diff-operator/riccati_of");
    r.citations = {"logarithmic-derivative correspondence: w = y'/y solves R_L iff L(y) = 0"};
    r.text = "riccati(" + L.monic().to_string() + "):\n  " + R.to_string();
    return r;
}

inline CommandResult cmd_sympow(const std::string& op_src, unsigned d) {
    CommandResult r;
    r.command = "sympow";
    r.input["operator"] = op_src;
    r.input["d"] = d;
    auto L = to_operator(parse_expression(op_src));
    auto S = sym_power(L, d);
    r.witness = json::object();
    r.witness["operator"] = S.to_string();
    r.witness["order"] = S.order();
    cmd_detail::set_provenance(r, "diff-operator/sym_power");
    r.citations = {"minimal monic annihilator of d-fold products of solutions"};
    r.text = "sym^" + std::to_string(d) + ":\n  " + S.to_string();
    return r;
}

inline CommandResult cmd_opmul(const std::string& a_src, const std::string& b_src) {
    CommandResult r;
    r.command = "opmul";
    r.input["lhs"] = a_src;
    r.input["rhs"] = b_src;
    auto A = to_operator(parse_expression(a_src));
    auto B = to_operator(parse_expression(b_src));
    auto P = A * B;
    r.witness = json::object();
    r.witness["operator"] = P.to_string();
    r.witness["order"] = P.order();
    cmd_detail::set_provenance(r, "diff-operator/op_mul");
    r.text = "product:\n  " + P.to_string();
    return r;
}

inline CommandResult cmd_series(const std::string& op_src, std::optional<std::string> point_src,
                                unsigned truncation) {
    CommandResult r;
    r.command = "series";
    r.input["operator"] = op_src;
    r.input["truncation"] = truncation;
    auto L = to_operator(parse_expression(op_src));
    BigRat point = point_src ? to_rational_constant(parse_expression(*point_src))
                             : L.default_expansion_point();
    r.input["point"] = point.to_string();
    auto basis = L.series_solutions(point, truncation);
    json arr = json::array();
    std::ostringstream os;
    os << "series basis at " << point.to_string() << " (truncation " << truncation << "):";
    for (const auto& y : basis) {
        arr.push_back(y.to_string());
        os << "\n  " << y.to_string();
    }
    r.witness = json::object();
    r.witness["basis"] = arr;
    cmd_detail::set_provenance(r, "diff-operator/series_solutions");
    r.text = os.str();
    return r;
}

inline std::string sole_variable_of(const Expr& e, const std::string& fallback = "t") {
    std::set<std::string> names;
    collect_variables(e, names);
    if (names.empty()) return fallback;
    if (names.size() == 1) return *names.begin();
    std::string all;
    for (const auto& n : names) all += (all.empty() ? "" : ", ") + n;
    throw std::invalid_argument("expected a univariate expression, found variables " + all);
}

inline CommandResult cmd_antiderivative(const std::string& src) {
    CommandResult r;
    r.command = "antiderivative";
    r.input["expression"] = src;
    Expr ast = parse_expression(src);
    const std::string var = sole_variable_of(ast);
    auto f = to_rational_function(ast, {var});
    auto g = rational_antiderivative(f, var);
    if (g) {
        r.status = "Yes";
        r.witness = json::object();
        r.witness["antiderivative"] = g->to_string();
        r.text = "antiderivative: " + g->to_string();
    } else {
        auto h = hermite_reduce(f, var);
        r.status = "No";
        r.certificate = json::object();
        r.certificate["tag"] = "LogPartNonzero";
        r.certificate["log_part"] = h.log_part.to_string();
        r.text = "no rational antiderivative; logarithmic part " + h.log_part.to_string();
    }
    cmd_detail::set_provenance(r, "integrability/rational_antiderivative");
    return r;
}

inline CommandResult cmd_logderiv(const std::string& src, bool scaled) {
    CommandResult r;
    r.command = scaled ? "scaledlogderiv" : "logderiv";
    r.input["expression"] = src;
    Expr ast = parse_expression(src);
    const std::string var = sole_variable_of(ast);
    auto f = to_rational_function(ast, {var});
    LogDerivVerdict v = scaled ? is_scaled_log_derivative(f, var) : is_log_derivative(f, var);
    r.status = to_string(v.status);
    if (v.witness) r.witness = cmd_detail::witness_json(*v.witness);
    if (v.certificate) {
        r.certificate = json::object();
        r.certificate["tag"] = to_string(*v.certificate);
        if (!v.detail.empty()) r.certificate["detail"] = v.detail;
    }
    cmd_detail::set_provenance(r, scaled ? "integrability/is_scaled_log_derivative"
                                         : "integrability/is_log_derivative");
    r.exit_code = v.status == VerdictStatus::Undecided ? 2 : 0;
    std::ostringstream os;
    os << r.command << " " << f.to_string() << ": " << cmd_detail::describe(v);
    if (v.witness && !v.witness->factors.empty()) {
        os << "\n  u = " << v.witness->factors_string();
        if (scaled) os << ", c = " << v.witness->c.to_string();
    }
    r.text = os.str();
    return r;
}

inline CommandResult cmd_rosenlicht(const std::string& src) {
    CommandResult r;
    r.command = "rosenlicht";
    r.input["f"] = src;
    Expr ast = parse_expression(src);
    const std::string var = sole_variable_of(ast, "x");
    auto f = to_rational_function(ast, {var});
    auto rep = rosenlicht_new_constants(f, var);
    r.status = to_string(rep.status);
    std::ostringstream os;
    os << "rosenlicht x' = f(x) with f = " << f.to_string() << ": " << r.status;
    if (rep.status == VerdictStatus::Yes) {
        r.witness = json::object();
        if (rep.kind == NewConstantKind::Exact) {
            r.witness["kind"] = "Exact";
            r.witness["u"] = rep.antiderivative->to_string();
            os << "\n  new constants exist: 1/f = u' for u = " << rep.antiderivative->to_string();
        } else {
            r.witness["kind"] = "ScaledLog";
            r.witness["scaled"] = cmd_detail::witness_json(*rep.scaled.witness);
            os << "\n  new constants exist: 1/f = u'/(c u), "
               << (rep.scaled.witness->symmetric_pair_b
                       ? rep.scaled.detail
                       : "u = " + rep.scaled.witness->factors_string() +
                             ", c = " + rep.scaled.witness->c.to_string());
        }
    } else {
        r.certificate = json::object();
        json tags = json::array();
        if (rep.scaled.certificate) tags.push_back(to_string(*rep.scaled.certificate));
        tags.push_back("LogPartNonzero");
        r.certificate["tags"] = tags;
        r.certificate["exact_branch"] = rep.exact_obstruction;
        r.certificate["scaled_branch"] = cmd_detail::describe(rep.scaled);
        os << "\n  exact branch: " << rep.exact_obstruction;
        os << "\n  scaled branch: " << cmd_detail::describe(rep.scaled);
    }
    cmd_detail::set_provenance(r, "integrability/rosenlicht_new_constants");
    r.citations = {"Rosenlicht's criterion: new constants in k(x) iff 1/f is du/dx or (1/cu)du/dx"};
    r.exit_code = rep.status == VerdictStatus::Undecided ? 2 : 0;
    r.text = os.str();
    return r;
}

inline CommandResult cmd_constants(const std::string& field_src, unsigned deg_max, unsigned pow_max) {
    CommandResult r;
    r.command = "constants";
    r.input["field"] = field_src;
    r.input["deg_max"] = deg_max;
    r.input["pow_max"] = pow_max;
    auto pieces = cmd_detail::split_list(field_src);
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < pieces.size(); ++i) vars.push_back("x" + std::to_string(i + 1));
    std::vector<RationalFunction> comps;
    for (const auto& p : pieces) comps.push_back(to_rational_function(parse_expression(p), vars));
    VectorFieldDerivation D(vars, comps);
    auto v = ej_classify(D, deg_max, pow_max);
    std::ostringstream os;
    os << "constant search for D = (" << field_src << "), deg_max " << deg_max << ", pow_max "
       << pow_max << ": ";
    if (v.found) {
        r.status = "Yes";
        r.witness = cmd_detail::witness_json(*v.witness);
        os << "Yes\n  " << to_string(v.witness->kind) << " witness z = " << v.witness->z.to_string();
        if (v.witness->c) os << " with Dz = " << v.witness->c->to_string() << " z";
        else if (v.witness->kind == WitnessKind::FirstIntegral) os << " with Dz = 0";
        else os << " with Dz = 1";
    } else {
        r.status = "BoundedNo";
        r.certificate = json::object();
        r.certificate["note"] = "no witness up to degree " + std::to_string(deg_max) +
                                " and denominator powers " + std::to_string(pow_max) +
                                "; not a nonexistence proof";
        r.exit_code = 2;
        os << "BoundedNo (no witness at these bounds; nonexistence is not claimed)";
    }
    cmd_detail::set_provenance(r, "constant-search/ej_classify");
    r.citations = {"three-alternative search: Dz = 0, Dz = 1, Dz = cz with z rational over Q"};
    r.text = os.str();
    return r;
}

inline CommandResult cmd_poizat(const std::string& h_src, std::optional<std::string> c_src) {
    CommandResult r;
    r.command = "poizat";
    r.input["h"] = h_src;
    auto h = to_rational_function(parse_expression(h_src), {"t"});
    auto rep = poizat_classify(h, "t");
    std::ostringstream os;
    os << "poizat t'' = t' h(t) with h = " << h.to_string() << ":";
    os << "\n  generic solutions " << (rep.generic_exists ? "exist" : "do not exist");
    os << "\n  " << rep.family_note;
    json w = json::object();
    w["generic_exists"] = rep.generic_exists;
    if (rep.g) w["g"] = rep.g->to_string();
    if (rep.generic_exists) {
        r.status = "GenericInfinite";
    } else if (!c_src) {
        r.status = "ReducedFamily";
    }
    if (c_src) {
        r.input["c"] = *c_src;
        if (rep.generic_exists) {
            os << "\n  --c ignored: the reduced family only arises when h = g'";
        } else {
            BigRat c = to_rational_constant(parse_expression(*c_src));
            auto fam = reduced_family_classify(*rep.g, c, "t");
            r.status = to_string(fam.verdict.status);
            w["reduced_c"] = c.to_string();
            if (fam.antiderivative) w["u"] = fam.antiderivative->to_string();
            else if (fam.scaled.witness) w["scaled"] = cmd_detail::witness_json(*fam.scaled.witness);
            r.certificate = json::object();
            r.certificate["reason"] = fam.verdict.reason;
            r.exit_code = fam.verdict.status == SolutionSetStatus::Undecided ? 2 : 0;
            os << "\n  reduced family t' = g - c at c = " << c.to_string() << ": "
               << to_string(fam.verdict.status) << "\n  " << fam.verdict.reason;
        }
    }
    r.witness = w;
    cmd_detail::set_provenance(r, "classifiers/poizat");
    r.citations = {
        "generic solutions exist iff h is not an exact derivative; generic solution sets are "
        "infinite",
        "singleton solution sets in the reduced family iff 1/(g-c) is exact or a scaled "
        "logarithmic derivative"};
    r.text = os.str();
    return r;
}

inline CommandResult cmd_lv(const std::string& a, const std::string& b, const std::string& g,
                            const std::string& d) {
    CommandResult r;
    r.command = "lv";
    r.input["alpha"] = a;
    r.input["beta"] = b;
    r.input["gamma"] = g;
    r.input["delta"] = d;
    auto rep = lotka_volterra_classify(
        to_rational_constant(parse_expression(a)), to_rational_constant(parse_expression(b)),
        to_rational_constant(parse_expression(g)), to_rational_constant(parse_expression(d)));
    r.status = to_string(rep.verdict.status);
    std::ostringstream os;
    os << "lotka-volterra (" << a << ", " << b << ", " << g << ", " << d
       << "): " << r.status << "\n  " << rep.verdict.reason;
    if (rep.witness) r.witness = cmd_detail::witness_json(*rep.witness);
    r.certificate = json::object();
    r.certificate["reason"] = rep.verdict.reason;
    cmd_detail::set_provenance(r, "classifiers/lotka_volterra");
    r.citations = {"generic solution free of additive/eigen elements exists iff alpha != gamma"};
    r.exit_code = rep.verdict.status == SolutionSetStatus::Undecided ? 2 : 0;
    r.text = os.str();
    return r;
}

inline CommandResult cmd_rosfamily(const std::string& coeffs_src, bool constants_base) {
    CommandResult r;
    r.command = "rosfamily";
    r.input["coefficients"] = coeffs_src;
    r.input["constants_base"] = constants_base;
    std::vector<RationalFunction> coeffs;
    for (const auto& p : cmd_detail::split_list(coeffs_src))
        coeffs.push_back(to_rational_function(parse_expression(p), {"t"}));
    auto rep = rosenlicht_family_classify(coeffs, constants_base, "t");
    r.status = to_string(rep.verdict.status);
    r.certificate = json::object();
    r.certificate["reason"] = rep.verdict.reason;
    r.certificate["a2"] = rep.a2_note;
    r.certificate["a3"] = rep.a3_note;
    cmd_detail::set_provenance(r, "classifiers/rosenlicht_family");
    r.citations = {
        "t' + a_n t^n + ... + a_2 t^2 = 0 has infinite solution sets when neither a_2 nor a_3 is a "
        "derivative in the base field"};
    r.exit_code = rep.verdict.status == SolutionSetStatus::Undecided ? 2 : 0;
    r.text = "rosenlicht family with (a_2..a_n) = (" + coeffs_src + ")" +
             (constants_base ? " over constants" : " over Q(t)") + ": " + r.status + "\n  " +
             rep.verdict.reason + "\n  a_2: " + rep.a2_note + "\n  a_3: " + rep.a3_note;
    return r;
}

inline CommandResult cmd_atlas(std::optional<unsigned> solvability_d,
                               std::optional<std::string> dim_group,
                               std::optional<std::string> check_rd, bool g2) {
    CommandResult r;
    r.command = "atlas";
    std::ostringstream os;
    json w = json::object();
    if (solvability_d) {
        r.input["solvability"] = *solvability_d;
        auto v = solvability_bound(*solvability_d);
        w["d"] = v.d;
        w["bound_kind"] = to_string(v.bound_kind);
        json groups = json::array();
        for (const auto& gd : v.candidate_groups) groups.push_back(gd.name());
        w["candidate_groups"] = groups;
        r.citations.push_back(v.citation);
        os << "solvability at transcendence degree " << v.d << ": " << to_string(v.bound_kind);
        if (!v.candidate_groups.empty()) {
            os << "; candidates:";
            for (const auto& gd : v.candidate_groups) os << " " << gd.name();
        }
        os << "\n  " << v.citation;
    } else if (dim_group) {
        r.input["dim"] = *dim_group;
        auto gd = cmd_detail::parse_group(*dim_group);
        w["group"] = gd.name();
        w["rank"] = gd.rank();
        w["dimension"] = dim_of(gd);
        os << gd.name() << ": rank " << gd.rank() << ", dimension " << dim_of(gd);
    } else if (check_rd) {
        r.input["check"] = *check_rd;
        auto pieces = cmd_detail::split_list(*check_rd);
        if (pieces.size() != 2) throw std::invalid_argument("--check expects r,d");
        unsigned rr = static_cast<unsigned>(std::stoul(pieces[0]));
        unsigned dd = static_cast<unsigned>(std::stoul(pieces[1]));
        bool ok = rank_bound_check(rr, dd);
        w["r"] = rr;
        w["d"] = dd;
        w["within_bounds"] = ok;
        os << "rank window r <= d <= r(r+2) for r = " << rr << ", d = " << dd << ": "
           << (ok ? "holds" : "fails");
    } else if (g2) {
        r.input["g2"] = true;
        auto rep = g2_counterexample();
        w["group"] = rep.group.name();
        w["dimension"] = rep.dim_group;
        w["maximal_reductive_subgroup"] = rep.maximal_reductive_subgroup.name();
        w["subgroup_dimension"] = rep.dim_subgroup;
        w["trdeg"] = rep.trdeg;
        w["six_solvable"] = rep.six_solvable;
        w["rank_bound_satisfied"] = rep.rank_bound_satisfied;
        r.citations.push_back("d-solvability tables for simple algebraic groups");
        os << rep.note;
    } else {
        throw CLI::CallForHelp();
    }
    r.witness = w;
    cmd_detail::set_provenance(r, "solvability-atlas");
    r.text = os.str();
    return r;
}

// ---------------------------------------------------------------------------
// Argument handling
// ---------------------------------------------------------------------------

namespace cmd_detail {

/// Expands a positional argument of the form @path into one entry per
/// nonempty line.
inline std::vector<std::string> expand_at_file(const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return {arg};
    std::ifstream in(arg.substr(1));
    if (!in) throw std::invalid_argument("cannot open input file " + arg.substr(1));
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        lines.push_back(line);
    }
    if (lines.empty()) throw std::invalid_argument("input file " + arg.substr(1) + " is empty");
    return lines;
}

}  // namespace cmd_detail

/// Parses argv (without the program name) and runs the selected
/// subcommand. Exit codes: 0 decided, 1 usage/parse error, 2 undecided or
/// bounded-negative verdicts.
inline CommandOutcome run_command(const std::vector<std::string>& argv) {
    CommandOutcome out;

    CLI::App app{"exact differential-algebra toolkit"};
    app.require_subcommand(1);
    bool want_json = false;
    app.add_flag("--json", want_json, "machine-readable output");

    std::string expr_a, expr_b, field, coeffs, h_src;
    std::string alpha, beta, gamma, delta;
    std::string point_src, c_src, dim_src, check_src;
    unsigned d_power = 2, truncation = 24, deg_max = 4, pow_max = 4, solv_d = 0;
    bool constants_base = false, g2 = false;
    bool have_point = false, have_c = false, have_solv = false, have_dim = false, have_check = false;

    auto* riccati = app.add_subcommand("riccati", "Riccati equation of an operator");
    riccati->add_option("operator", expr_a, "operator expression, e.g. \"D^2 + a1*D + a0\"")->required();

    auto* sympow = app.add_subcommand("sympow", "symmetric power of an operator");
    sympow->add_option("operator", expr_a)->required();
    sympow->add_option("--d", d_power, "power d >= 1")->required();

    auto* opmul = app.add_subcommand("opmul", "noncommutative operator product");
    opmul->add_option("lhs", expr_a)->required();
    opmul->add_option("rhs", expr_b)->required();

    auto* series = app.add_subcommand("series", "series solution basis at an ordinary point");
    series->add_option("operator", expr_a)->required();
    series->add_option("--truncation", truncation, "truncation order (default 24)");
    series->add_option("--point", point_src)->each([&](const std::string&) { have_point = true; });

    auto* anti = app.add_subcommand("antiderivative", "exact rational antiderivative");
    anti->add_option("expression", expr_a)->required();

    auto* logd = app.add_subcommand("logderiv", "is f = u'/u for rational u");
    logd->add_option("expression", expr_a)->required();

    auto* slogd = app.add_subcommand("scaledlogderiv", "is f = u'/(c u) for rational u, constant c");
    slogd->add_option("expression", expr_a)->required();

    auto* ros = app.add_subcommand("rosenlicht", "new-constant criterion for x' = f(x)");
    ros->add_option("f", expr_a)->required();

    auto* consts = app.add_subcommand("constants", "multivariate new-constant search");
    consts->add_option("--field", field, "components f1,...,fn in x1..xn")->required();
    consts->add_option("--deg-max", deg_max, "witness degree bound (default 4)");
    consts->add_option("--pow-max", pow_max, "denominator power bound (default 4)");

    auto* poizat = app.add_subcommand("poizat", "Poizat equation t'' = t' h(t)");
    poizat->set_help_flag("--help", "print help");  // frees -h for the coefficient option
    poizat->add_option("--h", h_src, "rational function h(t)")->required();
    poizat->add_option("--c", c_src)->each([&](const std::string&) { have_c = true; });

    auto* lv = app.add_subcommand("lv", "Lotka-Volterra classifier");
    lv->add_option("--alpha", alpha)->required();
    lv->add_option("--beta", beta)->required();
    lv->add_option("--gamma", gamma)->required();
    lv->add_option("--delta", delta)->required();

    auto* rosf = app.add_subcommand("rosfamily", "family t' + a_n t^n + ... + a_2 t^2 = 0");
    rosf->add_option("--coeffs", coeffs, "a_2,...,a_n")->required();
    rosf->add_flag("--constants", constants_base, "base field Q with zero derivation");

    auto* atlas = app.add_subcommand("atlas", "group dimensions and solvability tables");
    atlas->add_option("--solvability", solv_d)->each([&](const std::string&) { have_solv = true; });
    atlas->add_option("--dim", dim_src)->each([&](const std::string&) { have_dim = true; });
    atlas->add_option("--check", check_src, "r,d")->each([&](const std::string&) { have_check = true; });
    atlas->add_flag("--g2", g2, "the G2 obstruction report");

    for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    std::vector<std::string> args(argv.rbegin(), argv.rend());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        CommandResult r;
        r.command = "help";
        std::ostringstream os;
        os << app.help();
        r.text = os.str();
        r.status = "ok";
        out.results.push_back(std::move(r));
        out.as_json = false;
        return out;
    } catch (const CLI::ParseError& e) {
        CommandResult r;
        r.command = "error";
        r.status = "UsageError";
        r.text = std::string("usage error: ") + e.what();
        r.exit_code = 1;
        out.results.push_back(std::move(r));
        out.exit_code = 1;
        return out;
    }
    out.as_json = want_json;

    auto run_many = [&](const std::string& positional, auto&& fn) {
        for (const auto& line : cmd_detail::expand_at_file(positional)) {
            try {
                out.results.push_back(fn(line));
            } catch (const CLI::Error&) {
                throw;
            } catch (const std::exception& e) {
                CommandResult r;
                r.command = "error";
                r.status = "InputError";
                r.input["expression"] = line;
                r.text = std::string("error: ") + e.what();
                r.exit_code = 1;
                out.results.push_back(std::move(r));
            }
        }
    };

    try {
        if (riccati->parsed()) run_many(expr_a, [&](const std::string& s) { return cmd_riccati(s); });
        else if (sympow->parsed()) run_many(expr_a, [&](const std::string& s) { return cmd_sympow(s, d_power); });
        else if (opmul->parsed()) out.results.push_back(cmd_opmul(expr_a, expr_b));
        else if (series->parsed())
            run_many(expr_a, [&](const std::string& s) {
                return cmd_series(s, have_point ? std::optional<std::string>(point_src) : std::nullopt,
                                  truncation);
            });
        else if (anti->parsed()) run_many(expr_a, [&](const std::string& s) { return cmd_antiderivative(s); });
        else if (logd->parsed()) run_many(expr_a, [&](const std::string& s) { return cmd_logderiv(s, false); });
        else if (slogd->parsed()) run_many(expr_a, [&](const std::string& s) { return cmd_logderiv(s, true); });
        else if (ros->parsed()) run_many(expr_a, [&](const std::string& s) { return cmd_rosenlicht(s); });
        else if (consts->parsed()) out.results.push_back(cmd_constants(field, deg_max, pow_max));
        else if (poizat->parsed())
            out.results.push_back(
                cmd_poizat(h_src, have_c ? std::optional<std::string>(c_src) : std::nullopt));
        else if (lv->parsed()) out.results.push_back(cmd_lv(alpha, beta, gamma, delta));
        else if (rosf->parsed()) out.results.push_back(cmd_rosfamily(coeffs, constants_base));
        else if (atlas->parsed())
            out.results.push_back(cmd_atlas(have_solv ? std::optional<unsigned>(solv_d) : std::nullopt,
                                            have_dim ? std::optional<std::string>(dim_src) : std::nullopt,
                                            have_check ? std::optional<std::string>(check_src) : std::nullopt,
                                            g2));
    } catch (const CLI::CallForHelp&) {
        CommandResult r;
        r.command = "help";
        r.text = app.help();
        out.results.push_back(std::move(r));
    } catch (const std::exception& e) {
        CommandResult r;
        r.command = "error";
        r.status = "InputError";
        r.text = std::string("error: ") + e.what();
        r.exit_code = 1;
        out.results.push_back(std::move(r));
    }

    for (const auto& r : out.results)
        if (cmd_detail::severity(r.exit_code) > cmd_detail::severity(out.exit_code))
            out.exit_code = r.exit_code;
    return out;
}

}  // namespace dalg
