#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "hk/gsets.hpp"

namespace hk::equivmod {

using exactalg::CoeffRing;
using exactalg::FgAbGroup;
using exactalg::IntMatrix;
using groups::Element;
using groups::GroupDesc;
using groups::Subgroup;

// Ind_H^G N. H may be infinite as long as it is described by a Subgroup
// (level subgroups of an odometer are); maps and restriction need finite H.
struct ModuleBlock {
    Subgroup H;
    groups::Representation N;  // over H.abstract

    static ModuleBlock trivial(const Subgroup& h, std::size_t rank = 1);
    IntMatrix act(const Element& h) const;  // h a parent element of H
};

struct InducedModule {
    GroupDesc group;
    std::vector<ModuleBlock> blocks;
    CoeffRing coeffs;

    void validate() const;
    // k[S] as one trivial block per orbit, induced from the stabilizer.
    static InducedModule permutation_module(const gsets::FiniteGSet& s, const CoeffRing& coeffs = {});
    // Explicit representation on the basis (coset representative, basis vector);
    // finite G only.
    groups::Representation to_representation() const;
};

// The generator n of a source block goes to sum over entries of t . (1 (x) matrix n)
// in the target block.
struct MapEntry {
    Element t;
    std::size_t target = 0;
    IntMatrix matrix;  // target rank x source rank
};

struct EquivariantMap {
    InducedModule source, target;
    std::vector<std::vector<MapEntry>> entries;  // per source block

    // Shapes and equivariance on the generators of each source stabilizer;
    // target stabilizers must be finite.
    void validate() const;
    // Every block generator maps to zero (normal forms in finite target blocks).
    bool is_zero() const;
    static EquivariantMap identity(const InducedModule& m);
    static EquivariantMap zero(const InducedModule& s, const InducedModule& t);
};

// g o f
EquivariantMap compose(const EquivariantMap& g, const EquivariantMap& f);
EquivariantMap add(const EquivariantMap& f, const EquivariantMap& g);

// f(1 (x) n) = sum_{h in H} h t (x) m rho(h^-1) n : always equivariant.
std::vector<MapEntry> averaged_entries(const ModuleBlock& source, const Element& t, std::size_t target,
                                       const IntMatrix& m);

// Block-wise coinvariants over Z. Generators are listed block by block;
// within a block, torsion first in increasing order, then free.
struct Coinvariants {
    FgAbGroup group;                    // tensored with the module's coeffs
    std::vector<BigInt> orders;         // order of each generator, 0 for free
    std::vector<std::size_t> offset;    // first generator of each block
    std::vector<IntMatrix> projection;  // per block: generators x rank
    std::vector<IntMatrix> lift;        // per block: rank x generators

    std::size_t generator_count() const { return orders.size(); }
    // Coordinates of a block vector, reduced modulo the orders.
    std::vector<BigInt> project(std::size_t block, const std::vector<BigInt>& v) const;
};

Coinvariants coinvariants(const InducedModule& m);
// Coinvariants of an explicit representation: coker of the stacked (g - 1).
Coinvariants coinvariants(const groups::Representation& r, const CoeffRing& coeffs = {});

// Matrix between presentations, entries reduced modulo target orders.
IntMatrix coinvariants_of_map(const EquivariantMap& f, const Coinvariants& src, const Coinvariants& tgt);
IntMatrix coinvariants_of_map(const EquivariantMap& f);

struct ShapiroTerm {
    groups::TorsionClass cls;
    gsets::FiniteGSet set;  // X^{g_c} over Z(g_c)
    InducedModule module;   // k[X^{g_c}] over Z(g_c)
};

std::vector<ShapiroTerm> shapiro_decompose(const gsets::BlowupLevel& b, const CoeffRing& coeffs = {});

struct Restriction {
    InducedModule module;  // over K.abstract
    bool complete = true;  // every double coset was found
    std::size_t radius = 0;
};

// Mackey decomposition of Res_K M over the double cosets K x H. K must be
// finite (or the whole group); infinite G is searched up to `radius`.
Restriction restrict_module(const InducedModule& m, const Subgroup& k, std::size_t radius = 6);

// H_*(G, M) via Shapiro on each block: H_*(H, N) computed from H's resolution.
std::map<int, FgAbGroup> group_homology(const InducedModule& m, std::size_t depth);

}  // namespace hk::equivmod
