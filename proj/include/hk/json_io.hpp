#pragma once

#include <json.hpp>
#include <string>

#include "hk/hkpipeline.hpp"

namespace hk::json_io {

using nlohmann::json;

// Integers that fit in 64 bits are numbers, larger ones decimal strings.
json to_json(const BigInt& v);
BigInt bigint_from_json(const json& j, const std::string& ptr);

json to_json(const exactalg::CoeffRing& r);
exactalg::CoeffRing coeffs_from_json(const json& j, const std::string& ptr);

json to_json(const exactalg::FgAbGroup& g);
exactalg::FgAbGroup fg_from_json(const json& j, const std::string& ptr);
json to_json(const exactalg::AbGroup& g);
exactalg::AbGroup ab_from_json(const json& j, const std::string& ptr);
json to_json(const exactalg::IntMatrix& m);
exactalg::IntMatrix matrix_from_json(const json& j, const std::string& ptr);

// {"family": "finite_cyclic", "m": 2} and friends; also "trivial", "integers".
json to_json(const groups::GroupDesc& g);
groups::GroupDesc group_from_json(const json& j, const std::string& ptr);
groups::Element element_from_json(const groups::GroupDesc& g, const json& j, const std::string& ptr);

// {"group": ..., "size": n, "action": [[perm of generator 0], ...]}; no action
// means every point is fixed.
json to_json(const gsets::FiniteGSet& x);
gsets::FiniteGSet gset_from_json(const json& j, const std::string& ptr);

// {"group": ..., "odometer_indices": [...], "truncation_level": T}
json to_json(const gsets::OdometerSpec& s);
gsets::OdometerSpec odometer_from_json(const json& j, const std::string& ptr);

// {"preset": "dihedral_tree"} or
// {"group": ..., "vertices": [{"stabilizer": [gens]}], "simplices": [{"dim": d,
//  "vertices": [[orbit, element], ...]}], "orientation": [ranks]}
json to_json(const gcomplex::GSimplicialComplex& y);
gcomplex::GSimplicialComplex complex_from_json(const json& j, const std::string& ptr,
                                               const groups::GroupDesc* default_group = nullptr);

// {"K0": [{"Z": 1}, {"Zmod": 2}, {"Zinv": [2]}], "K1": []}
json to_json(const hkpipeline::KTheoryInput& k);
hkpipeline::KTheoryInput ktheory_from_json(const json& j, const std::string& ptr);

// {"rows": {"0": [...], "-1": [...]}} or {"group_homology": [...], "cohomology": {"0": 1, ...}}
hkpipeline::E2Page e2_from_json(const json& j, const std::string& ptr);
json to_json(const hkpipeline::E2Page& p);

// [{"degree": n, "group": {...}}, ...] in increasing degree
json to_json(const std::map<int, exactalg::FgAbGroup>& table);
json to_json(const std::map<int, exactalg::AbGroup>& table);

// Typed accessors that raise InputError with the pointer of the offending field.
const json& field(const json& j, const std::string& key, const std::string& ptr);
std::size_t count_from_json(const json& j, const std::string& ptr);
long long int_from_json(const json& j, const std::string& ptr);

}  // namespace hk::json_io
