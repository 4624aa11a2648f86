#include <algorithm>

#include "hk/cli.hpp"

namespace hk::cli {

namespace detail {
extern const std::vector<std::pair<std::string, std::string>> kPresetFiles;
}


const groups::GroupDesc* Problem::group() const {
    if (odometer) return &odometer->chain.group;
    if (gset) return &gset->group;
    return nullptr;
}

Problem problem_from_json(const json& j, const std::string& ptr) {
    if (!j.is_object()) throw InputError("a problem must be an object", ptr);
    if (j.contains("schema_version") && j["schema_version"] != kSchemaVersion)
        throw InputError("unsupported schema_version", ptr + "/schema_version");
    Problem p;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw InputError("name must be a string", ptr + "/name");
        p.name = j["name"].get<std::string>();
    }
    if (j.contains("note") && j["note"].is_string()) p.note = j["note"].get<std::string>();
    if (j.contains("odometer")) p.odometer = json_io::odometer_from_json(j["odometer"], ptr + "/odometer");
    if (j.contains("gset")) p.gset = json_io::gset_from_json(j["gset"], ptr + "/gset");
    if (p.odometer && p.gset) throw InputError("give either an odometer or a finite G-set, not both", ptr + "/gset");
    if (j.contains("complex")) {
        p.complex = j["complex"];
        json_io::complex_from_json(*p.complex, ptr + "/complex", p.group());  // validate now
    }
    if (j.contains("ktheory")) p.ktheory = json_io::ktheory_from_json(j["ktheory"], ptr + "/ktheory");
    if (j.contains("e2")) p.e2 = json_io::e2_from_json(j["e2"], ptr + "/e2");
    return p;
}

namespace {

bool parse_suffix(const std::string& name, const std::string& prefix, long long& v) {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return false;
    const std::string rest = name.substr(prefix.size());
    if (!std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; }) || rest.size() > 6)
        return false;
    v = std::stoll(rest);
    return true;
}

Problem cyclic_point(long long m) {
    if (m < 1) throw InputError("cyclic-point needs m >= 1", "/preset");
    json doc{{"name", "cyclic-point-" + std::to_string(m)},
             {"note", "C_" + std::to_string(m) +
                          " on a point. K0(C*(C_m)) is the representation ring Z^m, K1 = 0."},
             {"gset", {{"group", {{"family", "finite_cyclic"}, {"m", m}}}, {"size", 1}}},
             {"complex", {{"preset", "point"}}},
             {"ktheory", {{"K0", json::array({json{{"Z", m}}})}, {"K1", json::array()}}}};
    return problem_from_json(doc, "");
}

// Surface group of genus g acting on the circle at infinity; only field
// dimensions and K-theory are known to the engine.
Problem surface(long long g) {
    if (g < 2) throw InputError("surface-genus needs g >= 2", "/preset");
    json k0 = json::array();
    if (2 * g - 2 >= 2) k0.push_back(json{{"Zmod", 2 * g - 2}});
    k0.push_back(json{{"Z", 2 * g + 1}});
    json doc{{"name", "surface-genus-" + std::to_string(g)},
             {"note", "Closed genus-" + std::to_string(g) +
                          " surface group on its circle at infinity. H_p(G, C) = C, C^2g, C; H^0 = H^1 = C. "
                          "K-theory from Emerson (2006), Example 34: K_even = Z/(2g-2) + Z^(2g+1), K_odd = Z^(2g+1)."},
             {"e2", {{"group_homology", json::array({1, 2 * g, 1})}, {"cohomology", {{"0", 1}, {"1", 1}}}}},
             {"ktheory", {{"K0", k0}, {"K1", json::array({json{{"Z", 2 * g + 1}}})}}}};
    return problem_from_json(doc, "");
}

}  // namespace

std::vector<PresetInfo> preset_registry() {
    std::vector<PresetInfo> out;
    for (const auto& [name, body] : detail::kPresetFiles) out.push_back({name, json::parse(body).value("note", "")});
    out.push_back({"cyclic-point-3", cyclic_point(3).note});
    out.push_back({"surface-genus-2", surface(2).note});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

Problem preset(const std::string& name) {
    for (const auto& [n, body] : detail::kPresetFiles)
        if (n == name) {
            Problem p = problem_from_json(json::parse(body), "");
            if (p.name.empty()) p.name = n;
            return p;
        }
    long long v = 0;
    if (parse_suffix(name, "cyclic-point-", v)) return cyclic_point(v);
    if (parse_suffix(name, "surface-genus-", v)) return surface(v);
    throw InputError("unknown preset \"" + name + "\"", "/preset");
}

}  // namespace hk::cli
