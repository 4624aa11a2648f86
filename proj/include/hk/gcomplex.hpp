#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hk/equivmod.hpp"

namespace hk::gcomplex {

using equivmod::EquivariantMap;
using equivmod::InducedModule;
using exactalg::CoeffRing;
using exactalg::FgAbGroup;
using groups::Element;
using groups::GroupDesc;
using groups::Subgroup;

// The vertex g . v_orbit. Canonical when g is the least element of its coset
// g Stab(v_orbit).
struct Vertex {
    std::size_t orbit = 0;
    Element g;

    auto operator<=>(const Vertex&) const = default;
};

using Simplex = std::vector<Vertex>;  // sorted

struct SimplexOrbit {
    Simplex rep;
    Subgroup stabilizer;  // setwise
};

// Orbit data of a G-simplicial complex. Vertex stabilizers must be finite
// subgroups so that vertices have canonical names.
class GSimplicialComplex {
public:
    // simplices[d - 1] lists representative vertex tuples of the d-simplex
    // orbits. Canonicalizes, computes setwise stabilizers, rejects duplicate
    // orbits and faces that are not simplices.
    static GSimplicialComplex build(const GroupDesc& g, const std::vector<Subgroup>& vertex_stabilizers,
                                    const std::vector<std::vector<std::vector<Vertex>>>& simplices,
                                    std::optional<std::vector<std::size_t>> orientation = std::nullopt);

    const GroupDesc& group() const { return group_; }
    std::size_t dimension() const { return orbits_.size() - 1; }
    // orbits(0) are the vertex orbits, rep {(i, e)}
    const std::vector<SimplexOrbit>& orbits(std::size_t d) const { return orbits_.at(d); }
    const Subgroup& vertex_stabilizer(std::size_t orbit) const { return vstab_.at(orbit); }
    std::size_t vertex_orbit_count() const { return vstab_.size(); }
    // Rank of each vertex orbit in a G-invariant order, when one was supplied.
    const std::optional<std::vector<std::size_t>>& orientation() const { return orientation_; }

    Vertex canonical(const Vertex& v) const;
    Vertex act(const Element& g, const Vertex& v) const;
    Simplex act(const Element& g, const Simplex& s) const;
    // (orbit index, u) with u . orbits(d)[orbit].rep == s, if s is a simplex
    std::optional<std::pair<std::size_t, Element>> locate(const Simplex& s) const;
    // All g with g . a == b.
    std::vector<Element> transporters(const Simplex& a, const Simplex& b) const;

private:
    GroupDesc group_;
    std::vector<Subgroup> vstab_;
    std::vector<std::vector<Element>> vstab_elements_;
    std::vector<std::vector<SimplexOrbit>> orbits_;
    std::optional<std::vector<std::size_t>> orientation_;
};

struct StructureReport {
    bool proper = true;
    bool g_finite = true;
    bool type_preserving = true;
    bool orientable = true;
    std::vector<std::size_t> orientation;  // rank per vertex orbit, when orientable
    std::vector<std::string> witnesses;    // why a flag failed

    bool all() const { return proper && g_finite && type_preserving && orientable; }
};

StructureReport check_structure(const GSimplicialComplex& y);
// The vertices of s in orientation order (ranks from the report).
Simplex oriented(const Simplex& s, const std::vector<std::size_t>& ranks);

GSimplicialComplex barycentric_subdivision(const GSimplicialComplex& y);

// Presets: a point for a finite group, the Bass-Serre tree of D_inf or of
// C_a * C_b (one edge orbit), the standard n-simplex for the trivial group,
// and Z acting on the line with a single vertex orbit.
GSimplicialComplex point_complex(const GroupDesc& g);
GSimplicialComplex tree_complex(const GroupDesc& g);
GSimplicialComplex full_simplex(std::size_t n);
GSimplicialComplex z_line();
// "point", "dihedral_tree", "amalgam_tree", "full_simplex(n)", "z_line"
GSimplicialComplex preset(const std::string& name, const GroupDesc& g);

// Modules at consecutive degrees lo, lo+1, ... with maps raising the degree.
struct ModuleCochainComplex {
    int lo = 0;
    std::vector<InducedModule> modules;
    std::vector<EquivariantMap> maps;  // maps[i]: modules[i] -> modules[i+1]

    int hi() const { return lo + static_cast<int>(modules.size()) - 1; }
    bool squares_to_zero() const;
    // Coinvariants in each degree as a chain complex with negated degrees
    // (cochain degree n sits at chain degree -n). Every coinvariant module
    // must be free over Z.
    exactalg::ChainComplex coinvariant_complex(const CoeffRing& coeffs) const;
};

// Degree i holds the sum over i-simplex orbits of Ind k[G_sigma] (conjugation
// action); the coface maps restrict along G_eta <= G_sigma.
ModuleCochainComplex basic_complex(const GSimplicialComplex& y, const CoeffRing& coeffs = {});

// X_sigma = {(x, g) : g in G_sigma, g x = x}, in lexicographic order.
std::vector<std::pair<std::size_t, Element>> blowup_pairs(const gsets::FiniteGSet& x, const Subgroup& stabilizer);

// Rows q = 0..m, each a cochain complex in p; vertical[q][i] maps
// rows[q].modules[i] to rows[q+1].modules[i].
struct DoubleComplex {
    std::vector<ModuleCochainComplex> rows;
    std::vector<std::vector<EquivariantMap>> vertical;

    bool squares_to_zero() const;
    bool anticommutes() const;
    // Coinvariant total complex, cochain degrees negated as above.
    exactalg::ChainComplex coinvariant_total(const CoeffRing& coeffs) const;
};

// Single row C^{-p,0} = sum over p-simplex orbits of Ind k[X_sigma]; the
// horizontal maps are signed inclusions along faces.
DoubleComplex dc1_build(const GSimplicialComplex& y, const gsets::FiniteGSet& x, const CoeffRing& coeffs = {});

// Cohomology of the coinvariant total complex, keyed by (non-positive)
// degree, for degrees lo..hi. Rejects coefficient rings that do not invert
// a simplex-stabilizer order unless `enforce_invertible` is false.
std::map<int, FgAbGroup> bs_cohomology(const GSimplicialComplex& y, const gsets::FiniteGSet& x,
                                       const CoeffRing& coeffs, int lo, int hi, bool enforce_invertible = true);

struct ContractionReport {
    std::size_t vertices = 0;     // |V_0|
    std::size_t chains = 0;       // simplices of the truncated subdivision
    std::size_t checked = 0;      // basis elements where s d + d s = id was tested
    std::size_t skipped = 0;      // s leaves the truncation
    std::size_t failures = 0;
    std::vector<std::string> failure_examples;

    bool pass() const { return failures == 0 && checked > 0; }
};

// Chain homotopies on the augmented row, both built from the partition that
// sends g to the least vertex alpha with g in G_alpha.
enum class ContractionOperator {
    // Inserts sigma_{i-1} u {alpha} at every position where it fits strictly,
    // with sign (-1)^i. Fails already for two vertices: on ({v}) with v != alpha
    // it returns ({v}) - ({v, alpha}) + ({alpha}).
    SingleInsertion,
    // Prism from the identity to S -> S u {alpha}, followed by the cone at
    // {alpha}; a genuine contraction.
    Cone,
};

// Builds V^(b) (chains of finite subsets of the disjoint union of all G/H)
// up to dimension dim_cap and the augmented row of k[X_sigma] modules; checks
// s d + d s = id on every basis element whose s-image stays in range, and that
// s never leaves the X_eta it should land in.
ContractionReport verify_contraction(const gsets::FiniteGSet& x, std::size_t dim_cap,
                                     ContractionOperator op = ContractionOperator::Cone);

}  // namespace hk::gcomplex
