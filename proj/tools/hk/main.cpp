// hk: command-line front end over the C API.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "hk/hk.h"

using nlohmann::json;

namespace {

struct Options {
    std::string preset;
    std::string input;
    std::string coeffs = "Z";
    int max_degree = 3;
    std::size_t levels = 0;
    std::size_t window = 2;
    std::string format = "table";
    std::string suite = "contraction";
    std::string group;
    std::size_t dim_cap = 3;
    std::string op = "cone";
    std::vector<std::size_t> targets;
};

int emit(hk_status s, hk_result* r, const std::string& format) {
    const bool failed = s != HK_OK && s != HK_VERDICT_FAILED;
    std::ostream& os = failed ? std::cerr : std::cout;
    os << (format == "json" ? hk_result_json(r) : hk_result_text(r));
    hk_result_free(r);
    if (s == HK_OK) return 0;
    if (s == HK_VERDICT_FAILED) return 2;
    return 1;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Homology of ample groupoids from group actions"};
    app.set_version_flag("--version", std::string(hk_version()));
    app.require_subcommand(1);

    Options o;
    std::vector<std::pair<std::string, CLI::App*>> commands;
    auto add = [&](const std::string& name, const std::string& help) {
        CLI::App* c = app.add_subcommand(name, help);
        c->add_option("--preset", o.preset, "Named example (see `hk presets`)");
        c->add_option("--input", o.input, "Problem document (JSON file, - for stdin)");
        c->add_option("--coeffs", o.coeffs, "Coefficients: Z, Q, Z[1/p,...]")->capture_default_str();
        c->add_option("--max-degree", o.max_degree, "Highest degree computed")->capture_default_str();
        c->add_option("--levels,--truncation-level", o.levels, "Odometer truncation level");
        c->add_option("--window", o.window, "Stationarity window for colimits")->capture_default_str();
        c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "json"}))->capture_default_str();
        commands.emplace_back(name, c);
        return c;
    };
    add("homology", "Groupoid homology H_*(G x X), levelwise with colimit");
    add("hatted", "Homology of the blown-up space (hatted groupoid)");
    add("bs-cohomology", "Equivariant cohomology of the basic complex");
    add("crosscheck", "Compare hatted homology with the basic complex");
    add("specseq", "Two-row spectral sequence solver")
        ->add_option("--targets", o.targets, "Target ranks: even odd")
        ->expected(2);
    add("hk-check", "Compare homology with the problem's K-theory");
    CLI::App* verify = add("verify", "Structural checks");
    verify->add_option("--suite", o.suite, "contraction or structure")->capture_default_str();
    verify->add_option("--group", o.group, "Finite group: trivial, Z2, C3, or a JSON group");
    verify->add_option("--dim-cap", o.dim_cap, "Largest simplex dimension checked")->capture_default_str();
    verify->add_option("--operator", o.op, "cone or single_insertion")->capture_default_str();
    CLI::App* presets = app.add_subcommand("presets", "List the built-in examples");
    presets->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "json"}));

    CLI11_PARSE(app, argc, argv);

    if (presets->parsed()) {
        hk_result* r = nullptr;
        const hk_status s = hk_presets(&r);
        return emit(s, r, o.format);
    }

    std::string command;
    CLI::App* sub = nullptr;
    for (auto& [name, c] : commands)
        if (c->parsed()) command = name, sub = c;

    json req{{"command", command}, {"coeffs", o.coeffs}, {"max_degree", o.max_degree},
             {"window", o.window}, {"format", o.format}};
    if (!o.preset.empty()) req["preset"] = o.preset;
    if (!o.input.empty()) {
        std::string text;
        if (o.input == "-") {
            std::ostringstream ss;
            ss << std::cin.rdbuf();
            text = ss.str();
        } else if (!read_file(o.input, text)) {
            std::cerr << "error (input): cannot read " << o.input << "\n";
            return 1;
        }
        req["input_text"] = text;
    }
    if (sub->count("--levels") > 0) req["truncation_level"] = o.levels;
    if (command == "specseq" && o.targets.size() == 2) req["targets"] = o.targets;
    if (command == "verify") {
        req["suite"] = o.suite;
        req["dim_cap"] = o.dim_cap;
        req["operator"] = o.op;
        if (!o.group.empty()) req["group"] = o.group;
    }

    hk_result* r = nullptr;
    const hk_status s = hk_run(req.dump().c_str(), &r);
    return emit(s, r, o.format);
}
