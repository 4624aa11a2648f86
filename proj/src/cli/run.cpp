#include <algorithm>

#include "hk/cli.hpp"

namespace hk::cli {

using exactalg::CoeffRing;
using groups::GroupDesc;
using json_io::to_json;

namespace {

const std::vector<std::string> kCommands = {"homology", "hatted",  "bs-cohomology", "crosscheck",
                                            "specseq",  "hk-check", "verify"};

std::size_t get_count(const json& j, const char* key, std::size_t dflt) {
    return j.contains(key) ? json_io::count_from_json(j[key], std::string("/") + key) : dflt;
}

std::string get_string(const json& j, const char* key, const std::string& dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_string()) throw InputError("expected a string", std::string("/") + key);
    return j[key].get<std::string>();
}

GroupDesc group_shorthand(const std::string& s) {
    if (!s.empty() && s.front() == '{') {
        json j;
        try {
            j = json::parse(s);
        } catch (const json::parse_error& e) {
            throw InputError(std::string("group is not valid JSON: ") + e.what(), "/group");
        }
        return json_io::group_from_json(j, "/group");
    }
    if (s == "trivial" || s == "1") return GroupDesc::trivial();
    if (s == "Z") return GroupDesc::integers();
    if (s == "Dinf" || s == "D_inf") return GroupDesc::infinite_dihedral();
    if (s.size() > 1 && (s[0] == 'Z' || s[0] == 'C') &&
        std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; }) && s.size() < 8)
        return GroupDesc::cyclic(std::stoll(s.substr(1)));
    throw InputError("unknown group \"" + s + "\" (use trivial, Z<m>, Z, Dinf or a JSON group)", "/group");
}

Problem load_problem(const RunSpec& spec) {
    if (spec.preset && spec.input) throw InputError("give either a preset or an input, not both", "/input");
    Problem p;
    if (spec.preset)
        p = preset(*spec.preset);
    else if (spec.input)
        p = problem_from_json(*spec.input, "/input");
    else if (spec.command != "verify")
        throw InputError("a preset or an input document is needed", "/preset");
    if (spec.truncation_level) {
        if (!p.odometer) throw InputError("truncation_level needs an odometer", "/truncation_level");
        if (*spec.truncation_level < 1 || *spec.truncation_level > p.odometer->chain.indices.size())
            throw InputError("truncation_level must lie in 1.." + std::to_string(p.odometer->chain.indices.size()),
                             "/truncation_level");
        p.odometer->truncation_level = *spec.truncation_level;
    }
    return p;
}

json header(const RunSpec& spec, const Problem& p) {
    json h{{"schema_version", kSchemaVersion}, {"command", spec.command}, {"coeffs", spec.coeffs.name()},
           {"max_degree", spec.max_degree}};
    if (!p.name.empty()) h["problem"] = p.name;
    return h;
}

json classes_json(const hkpipeline::LevelwiseHomology& h) {
    json out = json::array();
    for (const auto& c : h.classes) {
        const auto& g = c.cls.centralizer.parent;
        out.push_back({{"representative", c.cls.representative},
                       {"display", g.format(c.cls.representative)},
                       {"order", c.cls.order},
                       {"fixed_counts", c.fixed_counts}});
    }
    return out;
}

json levelwise_json(const hkpipeline::LevelwiseHomology& h, const gsets::OdometerSpec& spec) {
    json levels = json::array();
    for (std::size_t k = 0; k < h.tables.size(); ++k)
        levels.push_back({{"level", k + 1}, {"index", spec.index(k + 1)}, {"table", to_json(h.tables[k].groups)}});
    json colim = json::array();
    for (int n = 0; n <= static_cast<int>(h.depth); ++n) {
        json e{{"degree", n}, {"pattern", h.pattern.at(n)}, {"identified", h.colimit.count(n) > 0}};
        if (h.colimit.count(n)) e["group"] = to_json(h.colimit.at(n));
        colim.push_back(e);
    }
    json out{{"route", h.route}, {"truncation_level", h.levels}, {"window", h.window}, {"levels", levels},
             {"colimit", colim}, {"truncated", h.truncated()}};
    if (h.route == "hatted") {
        out["classes"] = classes_json(h);
        out["twisted_orbits"] = h.twisted_rank();
    }
    return out;
}

RunOutput homology(const RunSpec& spec, const Problem& p, bool hatted) {
    if (spec.max_degree < 0) throw InputError("max_degree must be non-negative", "/max_degree");
    const auto depth = static_cast<std::size_t>(spec.max_degree);
    RunOutput out;
    out.report = header(spec, p);
    if (p.odometer) {
        auto h = hatted ? hkpipeline::hatted_homology(*p.odometer, spec.coeffs, depth, spec.window)
                        : hkpipeline::groupoid_homology(*p.odometer, spec.coeffs, depth, spec.window);
        out.report["odometer"] = to_json(*p.odometer);
        out.report["result"] = levelwise_json(h, *p.odometer);
        out.report["verdict"] = h.truncated() ? "truncated" : "identified";
    } else if (p.gset) {
        auto t = hatted ? hkpipeline::hatted_homology(*p.gset, spec.coeffs, depth)
                        : hkpipeline::groupoid_homology(*p.gset, spec.coeffs, depth);
        out.report["gset"] = to_json(*p.gset);
        out.report["result"] = {{"route", t.route}, {"table", to_json(t.groups)}};
        out.report["verdict"] = "computed";
    } else {
        throw InputError("the problem has no G-space", "/input/gset");
    }
    return out;
}

gcomplex::GSimplicialComplex complex_of(const Problem& p) {
    if (!p.complex) throw InputError("the problem has no simplicial model", "/input/complex");
    return json_io::complex_from_json(*p.complex, "/input/complex", p.group());
}

gsets::FiniteGSet top_level_set(const Problem& p) {
    if (p.gset) return *p.gset;
    if (p.odometer) return gsets::level_gset(*p.odometer, p.odometer->truncation_level).set;
    throw InputError("the problem has no G-space", "/input/gset");
}

RunOutput bs(const RunSpec& spec, const Problem& p) {
    auto y = complex_of(p);
    auto x = top_level_set(p);
    auto t = gcomplex::bs_cohomology(y, x, spec.coeffs, -spec.max_degree, spec.max_degree);
    RunOutput out;
    out.report = header(spec, p);
    out.report["complex"] = to_json(y);
    out.report["gset"] = to_json(x);
    if (p.odometer) out.report["level"] = p.odometer->truncation_level;
    out.report["result"] = {{"route", "bs_cohomology"}, {"table", to_json(t)}};
    out.report["verdict"] = "computed";
    return out;
}

json crosscheck_json(const hkpipeline::CrosscheckReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"degree", row.degree},
                        {"hatted", to_json(row.hatted)},
                        {"bs", to_json(row.bs)},
                        {"equal", row.equal}});
    return {{"level", r.level}, {"invertible", r.invertible}, {"agree", r.agree()}, {"rows", rows}};
}

RunOutput crosscheck(const RunSpec& spec, const Problem& p) {
    auto y = complex_of(p);
    std::vector<hkpipeline::CrosscheckReport> reps;
    if (p.odometer)
        reps = hkpipeline::bcr_gh_crosscheck(y, *p.odometer, spec.coeffs, spec.max_degree);
    else
        reps.push_back(hkpipeline::bcr_gh_crosscheck(y, top_level_set(p), spec.coeffs, spec.max_degree));
    RunOutput out;
    out.report = header(spec, p);
    json list = json::array();
    bool disagree = false, expected_unequal = false;
    for (const auto& r : reps) {
        list.push_back(crosscheck_json(r));
        if (!r.agree()) (r.invertible ? disagree : expected_unequal) = true;
    }
    out.report["checks"] = list;
    // Without the inverses the two routes need not agree; that outcome is
    // reported but is not a failure.
    out.report["verdict"] = disagree ? "disagree" : expected_unequal ? "unequal_noninvertible" : "agree";
    out.exit_code = disagree ? kExitVerdictFailed : kExitOk;
    return out;
}

std::pair<std::size_t, std::size_t> k_ranks(const hkpipeline::KTheoryInput& k) {
    return {k.group(0).rational_rank(), k.group(1).rational_rank()};
}

json solve_json(const hkpipeline::E2Page& page, const hkpipeline::TwoRowResult& r, std::size_t even, std::size_t odd) {
    const auto rows = page.rows();
    const int lo = rows.size() == 2 ? rows[1] : 0;
    json sols = json::array();
    for (const auto& s : r.solutions) {
        json d = json::array();
        for (const auto& [p, rank] : s)
            d.push_back({{"source", {p, lo}}, {"target", {p - 2, lo + 1}}, {"rank", rank}});
        sols.push_back(d);
    }
    return {{"page", json_io::to_json(page)},
            {"e2_totals", {{"even", r.e2_even}, {"odd", r.e2_odd}}},
            {"targets", {{"even", even}, {"odd", odd}}},
            {"status", hkpipeline::to_string(r.status)},
            {"solutions", sols}};
}

RunOutput specseq(const RunSpec& spec, const Problem& p) {
    if (!p.e2) throw InputError("the problem has no E2 data", "/input/e2");
    std::pair<std::size_t, std::size_t> t;
    if (spec.targets)
        t = *spec.targets;
    else if (p.ktheory)
        t = k_ranks(*p.ktheory);
    else
        throw InputError("targets are needed when the problem has no K-theory", "/targets");
    auto r = hkpipeline::two_row_solve(*p.e2, t.first, t.second);
    RunOutput out;
    out.report = header(spec, p);
    out.report["result"] = solve_json(*p.e2, r, t.first, t.second);
    out.report["verdict"] = hkpipeline::to_string(r.status);
    out.exit_code = r.status == hkpipeline::TwoRowResult::Status::Inconsistent ? kExitVerdictFailed : kExitOk;
    return out;
}

RunOutput hk_check(const RunSpec& spec, const Problem& p) {
    if (!p.ktheory) throw InputError("the problem has no K-theory input", "/input/ktheory");
    if (spec.max_degree < 0) throw InputError("max_degree must be non-negative", "/max_degree");
    RunOutput out;
    out.report = header(spec, p);
    out.report["ktheory"] = to_json(*p.ktheory);
    const auto depth = static_cast<std::size_t>(spec.max_degree);
    std::map<int, exactalg::AbGroup> h;
    bool truncated = false;
    if (p.odometer) {
        auto lw = hkpipeline::hatted_homology(*p.odometer, CoeffRing::integers(), depth, spec.window);
        for (int n = 0; n <= spec.max_degree; ++n) {
            if (lw.colimit.count(n)) {
                h[n] = lw.colimit.at(n);
            } else {
                // rank of the last level stands in for an unidentified colimit
                h[n] = exactalg::AbGroup::from(lw.tables.back().groups.at(n));
                truncated = true;
            }
        }
        out.report["method"] = "hatted_colimit";
        out.report["twisted_orbits"] = lw.twisted_rank();
    } else if (p.gset) {
        for (const auto& [n, g] : hkpipeline::hatted_homology(*p.gset, CoeffRing::integers(), depth).groups)
            h[n] = exactalg::AbGroup::from(g);
        out.report["method"] = "hatted_finite";
    } else if (p.e2) {
        const auto [even, odd] = k_ranks(*p.ktheory);
        auto r = hkpipeline::two_row_solve(*p.e2, even, odd);
        out.report["method"] = "spectral_sequence";
        out.report["result"] = solve_json(*p.e2, r, even, odd);
        const bool ok = r.status != hkpipeline::TwoRowResult::Status::Inconsistent;
        out.report["verdict"] = ok ? "pass" : "fail";
        out.exit_code = ok ? kExitOk : kExitVerdictFailed;
        return out;
    } else {
        throw InputError("the problem has no G-space or E2 data", "/input");
    }
    auto v = hkpipeline::hk_compare(h, *p.ktheory);
    out.report["homology"] = to_json(h);
    out.report["ranks"] = {{"k0", v.k0_rank}, {"k1", v.k1_rank}, {"h_even", v.h_even_rank}, {"h_odd", v.h_odd_rank}};
    out.report["mismatches"] = v.mismatches;
    out.report["truncated"] = truncated;
    out.report["verdict"] = v.pass ? "pass" : "fail";
    out.exit_code = v.pass ? kExitOk : kExitVerdictFailed;
    return out;
}

RunOutput verify(const RunSpec& spec, const Problem& p) {
    RunOutput out;
    out.report = header(spec, p);
    out.report["suite"] = spec.suite;
    if (spec.suite == "contraction") {
        GroupDesc g = spec.group ? group_shorthand(*spec.group) : p.group() ? *p.group() : GroupDesc::trivial();
        if (!g.is_finite()) throw InputError("the contraction suite needs a finite group", "/group");
        gcomplex::ContractionOperator op;
        if (spec.contraction_operator == "cone")
            op = gcomplex::ContractionOperator::Cone;
        else if (spec.contraction_operator == "single_insertion")
            op = gcomplex::ContractionOperator::SingleInsertion;
        else
            throw InputError("operator must be cone or single_insertion", "/operator");
        json cases = json::array();
        bool ok = true;
        const std::vector<std::pair<std::string, gsets::FiniteGSet>> spaces = {
            {"point", gsets::FiniteGSet::point(g)}, {"level_3", gsets::block_cycle_set(g, 3)}};
        for (const auto& [label, x] : spaces) {
            auto r = gcomplex::verify_contraction(x, spec.dim_cap, op);
            ok = ok && r.failures == 0;
            cases.push_back({{"space", label},
                             {"vertices", r.vertices},
                             {"chains", r.chains},
                             {"checked", r.checked},
                             {"skipped", r.skipped},
                             {"failures", r.failures},
                             {"failure_examples", r.failure_examples}});
        }
        out.report["group"] = to_json(g);
        out.report["operator"] = spec.contraction_operator;
        out.report["dim_cap"] = spec.dim_cap;
        out.report["cases"] = cases;
        out.report["verdict"] = ok ? "pass" : "fail";
        out.exit_code = ok ? kExitOk : kExitVerdictFailed;
    } else if (spec.suite == "structure") {
        auto y = complex_of(p);
        auto s = gcomplex::check_structure(y);
        out.report["complex"] = to_json(y);
        out.report["structure"] = {{"proper", s.proper},
                                   {"g_finite", s.g_finite},
                                   {"type_preserving", s.type_preserving},
                                   {"orientable", s.orientable},
                                   {"orientation", s.orientation},
                                   {"witnesses", s.witnesses}};
        out.report["verdict"] = s.all() ? "pass" : "fail";
        out.exit_code = s.all() ? kExitOk : kExitVerdictFailed;
    } else {
        throw InputError("unknown suite \"" + spec.suite + "\" (contraction, structure)", "/suite");
    }
    return out;
}

}  // namespace

RunSpec runspec_from_json(const json& j) {
    if (!j.is_object()) throw InputError("a request must be an object", "");
    RunSpec s;
    s.command = get_string(j, "command", "");
    if (std::find(kCommands.begin(), kCommands.end(), s.command) == kCommands.end())
        throw InputError("unknown command \"" + s.command + "\"", "/command");
    if (j.contains("preset")) s.preset = get_string(j, "preset", "");
    if (j.contains("input") && j.contains("input_text"))
        throw InputError("give either input or input_text", "/input_text");
    if (j.contains("input")) s.input = j["input"];
    if (j.contains("input_text")) {
        try {
            s.input = json::parse(get_string(j, "input_text", ""));
        } catch (const json::parse_error& e) {
            throw InputError(std::string("input is not valid JSON: ") + e.what(), "/input_text");
        }
    }
    if (j.contains("coeffs")) s.coeffs = json_io::coeffs_from_json(j["coeffs"], "/coeffs");
    if (j.contains("max_degree")) {
        const long long d = json_io::int_from_json(j["max_degree"], "/max_degree");
        if (d < 0 || d > 64) throw InputError("max_degree must lie in 0..64", "/max_degree");
        s.max_degree = static_cast<int>(d);
    }
    if (j.contains("truncation_level")) {
        s.truncation_level = get_count(j, "truncation_level", 0);
        if (*s.truncation_level < 1) throw InputError("truncation_level must be at least 1", "/truncation_level");
    }
    s.window = get_count(j, "window", s.window);
    if (s.window < 1) throw InputError("window must be at least 1", "/window");
    s.format = get_string(j, "format", s.format);
    if (s.format != "json" && s.format != "table") throw InputError("format must be json or table", "/format");
    s.suite = get_string(j, "suite", s.suite);
    if (j.contains("group")) s.group = j["group"].is_string() ? j["group"].get<std::string>() : j["group"].dump();
    s.dim_cap = get_count(j, "dim_cap", s.dim_cap);
    s.contraction_operator = get_string(j, "operator", s.contraction_operator);
    if (j.contains("targets")) {
        const json& t = j["targets"];
        if (!t.is_array() || t.size() != 2) throw InputError("targets must be [even, odd]", "/targets");
        s.targets = std::make_pair(json_io::count_from_json(t[0], "/targets/0"),
                                   json_io::count_from_json(t[1], "/targets/1"));
    }
    return s;
}

RunOutput run(const RunSpec& spec) {
    const Problem p = load_problem(spec);
    if (spec.command == "homology") return homology(spec, p, false);
    if (spec.command == "hatted") return homology(spec, p, true);
    if (spec.command == "bs-cohomology") return bs(spec, p);
    if (spec.command == "crosscheck") return crosscheck(spec, p);
    if (spec.command == "specseq") return specseq(spec, p);
    if (spec.command == "hk-check") return hk_check(spec, p);
    if (spec.command == "verify") return verify(spec, p);
    throw InputError("unknown command \"" + spec.command + "\"", "/command");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace hk::cli
