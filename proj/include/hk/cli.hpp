#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hk/json_io.hpp"

namespace hk::cli {

using json_io::json;

constexpr int kSchemaVersion = 1;

// Exit codes of a run.
constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitVerdictFailed = 2;

// A worked example: a G-space (odometer or finite set), optional model for
// the classifying space of proper actions, K-theory data and an E^2 page.
struct Problem {
    std::string name;
    std::string note;
    std::optional<gsets::OdometerSpec> odometer;
    std::optional<gsets::FiniteGSet> gset;
    std::optional<json> complex;  // parsed lazily against the problem's group
    std::optional<hkpipeline::KTheoryInput> ktheory;
    std::optional<hkpipeline::E2Page> e2;

    const groups::GroupDesc* group() const;
};

Problem problem_from_json(const json& j, const std::string& ptr);

struct PresetInfo {
    std::string name;
    std::string note;
};

// Fixed presets plus one instance of each parameterized family
// (cyclic-point-3, surface-genus-2).
std::vector<PresetInfo> preset_registry();
// Also accepts cyclic-point-<m> and surface-genus-<g>.
Problem preset(const std::string& name);

struct RunSpec {
    std::string command;  // homology, hatted, bs-cohomology, crosscheck, specseq, hk-check, verify
    std::optional<std::string> preset;
    std::optional<json> input;  // a problem document
    exactalg::CoeffRing coeffs;
    int max_degree = 3;
    std::optional<std::size_t> truncation_level;
    std::size_t window = 2;
    std::string format = "json";
    // verify
    std::string suite = "contraction";
    std::optional<std::string> group;  // shorthand (Z2, trivial, Z, Dinf) or JSON text
    std::size_t dim_cap = 3;
    std::string contraction_operator = "cone";
    // specseq: targets default to the ranks of the problem's K-theory
    std::optional<std::pair<std::size_t, std::size_t>> targets;
};

// Request objects as accepted by the C API:
// {"command": ..., "preset": ..., "input": {...} | "input_text": "...", "coeffs": "Z",
//  "max_degree": 3, "truncation_level": 6, "window": 2, "format": "json", "suite": ...,
//  "group": ..., "dim_cap": 3, "operator": "cone", "targets": [even, odd]}
RunSpec runspec_from_json(const json& j);

struct RunOutput {
    int exit_code = kExitOk;
    json report;
};

// Errors escape as InputError, BudgetError or DomainError.
RunOutput run(const RunSpec& spec);

// Aligned text view of a report; shows exactly the fields of the JSON.
std::string render_table(const json& report);

// Deterministic serialization used for every emitted document.
std::string dump(const json& j);

}  // namespace hk::cli
