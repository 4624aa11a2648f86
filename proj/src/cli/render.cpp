#include <algorithm>
#include <sstream>

#include "hk/cli.hpp"

namespace hk::cli {

namespace {

using Row = std::vector<std::string>;

std::string aligned(const std::vector<Row>& rows) {
    std::vector<std::size_t> w;
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (w.size() <= i) w.push_back(0);
            w[i] = std::max(w[i], r[i].size());
        }
    std::ostringstream out;
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
            line += r[i];
            if (i + 1 < r.size()) line += std::string(w[i] - r[i].size() + 2, ' ');
        }
        out << line << "\n";
    }
    return out.str();
}

std::string text(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_object() && j.contains("display")) return j["display"].get<std::string>();
    return j.dump();
}

std::string degree_table(const json& table) {
    std::vector<Row> rows{{"degree", "group"}};
    for (const auto& e : table) rows.push_back({text(e["degree"]), text(e["group"])});
    return aligned(rows);
}

std::string levelwise(const json& r) {
    std::ostringstream out;
    out << "route " << text(r["route"]) << ", levels 1.." << text(r["truncation_level"]) << ", window "
        << text(r["window"]) << "\n\n";
    Row head{"degree"};
    for (const auto& l : r["levels"]) head.push_back("k=" + text(l["level"]) + " (n=" + text(l["index"]) + ")");
    head.push_back("colimit");
    head.push_back("pattern");
    std::vector<Row> rows{head};
    for (const auto& c : r["colimit"]) {
        Row row{text(c["degree"])};
        const int n = c["degree"].get<int>();
        for (const auto& l : r["levels"])
            for (const auto& e : l["table"])
                if (e["degree"].get<int>() == n) row.push_back(text(e["group"]));
        row.push_back(c["identified"].get<bool>() ? text(c["group"]) : "?");
        row.push_back(text(c["pattern"]));
        rows.push_back(row);
    }
    out << aligned(rows);
    if (r.contains("classes")) {
        out << "\n";
        std::vector<Row> cls{{"class", "order", "fixed points per level"}};
        for (const auto& c : r["classes"]) {
            std::string f;
            for (const auto& v : c["fixed_counts"]) f += (f.empty() ? "" : " ") + text(v);
            cls.push_back({text(c["display"]), text(c["order"]), f});
        }
        out << aligned(cls);
        out << "twisted orbits: " << text(r["twisted_orbits"]) << "\n";
    }
    out << "truncated: " << (r["truncated"].get<bool>() ? "yes" : "no") << "\n";
    return out.str();
}

std::string solve(const json& r) {
    std::ostringstream out;
    std::vector<Row> rows{{"q \\ p"}};
    std::size_t width = 0;
    for (const auto& [q, row] : r["page"]["rows"].items()) width = std::max(width, row.size());
    for (std::size_t p = 0; p < width; ++p) rows[0].push_back(std::to_string(p));
    std::vector<std::pair<int, Row>> body;
    for (const auto& [q, row] : r["page"]["rows"].items()) {
        Row line{q};
        for (std::size_t p = 0; p < width; ++p) line.push_back(p < row.size() ? text(row[p]) : "0");
        body.emplace_back(std::stoi(q), line);
    }
    std::sort(body.begin(), body.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (auto& b : body) rows.push_back(b.second);
    out << "E2 page\n" << aligned(rows);
    out << "E2 totals: even " << text(r["e2_totals"]["even"]) << ", odd " << text(r["e2_totals"]["odd"]) << "\n";
    out << "targets:   even " << text(r["targets"]["even"]) << ", odd " << text(r["targets"]["odd"]) << "\n";
    out << "status: " << text(r["status"]) << "\n";
    std::size_t i = 0;
    for (const auto& s : r["solutions"]) {
        out << "solution " << ++i << ":";
        if (s.empty()) out << " all d2 zero";
        for (const auto& d : s)
            out << " d2 (" << text(d["source"][0]) << "," << text(d["source"][1]) << ")->(" << text(d["target"][0])
                << "," << text(d["target"][1]) << ") rank " << text(d["rank"]);
        out << "\n";
    }
    return out.str();
}

}  // namespace

std::string render_table(const json& report) {
    if (report.contains("error")) {
        const json& e = report["error"];
        std::string s = "error (" + text(e["kind"]) + "): " + text(e["message"]);
        if (e.contains("pointer") && !e["pointer"].get<std::string>().empty()) s += " at " + text(e["pointer"]);
        return s + "\n";
    }
    if (report.contains("presets")) {
        std::vector<Row> rows{{"preset", "note"}};
        for (const auto& p : report["presets"]) rows.push_back({text(p["name"]), text(p["note"])});
        return aligned(rows);
    }
    std::ostringstream out;
    out << text(report["command"]);
    if (report.contains("problem")) out << " " << text(report["problem"]);
    out << " over " << text(report["coeffs"]) << ", degrees up to " << text(report["max_degree"]) << "\n";
    const std::string cmd = report["command"].get<std::string>();
    if (cmd == "homology" || cmd == "hatted" || cmd == "bs-cohomology") {
        const json& r = report["result"];
        if (r.contains("levels"))
            out << levelwise(r);
        else
            out << "route " << text(r["route"]) << (report.contains("level") ? ", level " + text(report["level"]) : "")
                << "\n" << degree_table(r["table"]);
    } else if (cmd == "crosscheck") {
        for (const auto& c : report["checks"]) {
            out << "level " << text(c["level"]) << ", coefficients invert stabilizer orders: "
                << (c["invertible"].get<bool>() ? "yes" : "no") << "\n";
            std::vector<Row> rows{{"n", "hatted H_n", "bs H^-n", "equal"}};
            for (const auto& r : c["rows"])
                rows.push_back({text(r["degree"]), text(r["hatted"]), text(r["bs"]), r["equal"].get<bool>() ? "yes" : "NO"});
            out << aligned(rows);
        }
    } else if (cmd == "specseq") {
        out << solve(report["result"]);
    } else if (cmd == "hk-check") {
        out << "method " << text(report["method"]) << "\n";
        if (report.contains("result")) {
            out << solve(report["result"]);
        } else {
            out << degree_table(report["homology"]);
            const json& r = report["ranks"];
            out << aligned({{"", "even", "odd"},
                            {"K rank", text(r["k0"]), text(r["k1"])},
                            {"H rank", text(r["h_even"]), text(r["h_odd"])}});
            for (const auto& m : report["mismatches"]) out << "mismatch: " << text(m) << "\n";
            if (report["truncated"].get<bool>()) out << "some colimits were not identified; last level used\n";
        }
    } else if (cmd == "verify") {
        out << "suite " << text(report["suite"]) << "\n";
        if (report.contains("cases")) {
            out << "operator " << text(report["operator"]) << ", dim_cap " << text(report["dim_cap"]) << "\n";
            std::vector<Row> rows{{"space", "vertices", "chains", "checked", "skipped", "failures"}};
            for (const auto& c : report["cases"])
                rows.push_back({text(c["space"]), text(c["vertices"]), text(c["chains"]), text(c["checked"]),
                                text(c["skipped"]), text(c["failures"])});
            out << aligned(rows);
            for (const auto& c : report["cases"])
                for (const auto& e : c["failure_examples"]) out << text(c["space"]) << ": " << text(e) << "\n";
        } else {
            const json& s = report["structure"];
            std::vector<Row> rows;
            for (const char* k : {"proper", "g_finite", "type_preserving", "orientable"})
                rows.push_back({k, s[k].get<bool>() ? "yes" : "no"});
            out << aligned(rows);
            for (const auto& w : s["witnesses"]) out << "witness: " << text(w) << "\n";
        }
    }
    out << "verdict: " << text(report["verdict"]) << "\n";
    return out.str();
}

}  // namespace hk::cli
