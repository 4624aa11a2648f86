#pragma once

#include <cstddef>
#include <vector>

#include "hk/groups.hpp"

namespace hk::gsets {

using groups::Element;
using groups::GroupDesc;
using groups::Subgroup;
using groups::SubgroupChain;
using groups::TorsionClass;

// Action of G on {0, ..., size-1}, one permutation per generator.
struct FiniteGSet {
    GroupDesc group;
    std::size_t size = 0;
    std::vector<std::vector<std::size_t>> gen_action;   // gen_action[s][p] = s . p
    std::vector<std::vector<std::size_t>> gen_inverse;  // inverse permutations

    // Validates and fills in inverses.
    static FiniteGSet make(const GroupDesc& g, std::size_t size, std::vector<std::vector<std::size_t>> gen_action);
    static FiniteGSet point(const GroupDesc& g) { return trivial(g, 1); }
    static FiniteGSet trivial(const GroupDesc& g, std::size_t size);

    std::size_t act(const Element& g, std::size_t p) const;
    std::vector<std::size_t> permutation(const Element& g) const;
    // Generator permutations are permutations and relators act trivially
    // (the whole multiplication table for permutation groups).
    void validate() const;
    groups::Representation representation() const;
};

// Finite cyclic (or trivial) G on n points: the generator cycles each full
// block of |G| consecutive points and fixes the remainder.
FiniteGSet block_cycle_set(const GroupDesc& g, std::size_t n);

struct OdometerSpec {
    SubgroupChain chain;
    std::size_t truncation_level = 0;

    void validate() const;
    std::size_t index(std::size_t k) const;  // n_k, with n_0 = 1
};

struct Level {
    FiniteGSet set;
    std::vector<std::size_t> projection;  // to level k-1; empty at k = 0
};

// G/G_k with left translation; point j is the coset of the j-th translation
// (residue classes mod n_k for the built-in families).
Level level_gset(const OdometerSpec& spec, std::size_t k);

struct Orbit {
    std::vector<std::size_t> points;       // points[0] is the base point, others ascending by discovery
    std::vector<Element> transversal;      // transversal[i] . points[0] = points[i]
    Subgroup stabilizer;                   // of points[0]
};

std::vector<Orbit> orbits_and_stabilizers(const FiniteGSet& s);

struct FixedSet {
    Element element;
    Subgroup centralizer;
    std::vector<std::size_t> points;  // ascending, indices into the ambient set
    FiniteGSet set;                   // over centralizer.abstract, point i = points[i]
};

FixedSet fixed_points(const FiniteGSet& s, const Element& g);

struct BlowupPiece {
    TorsionClass cls;
    FixedSet fixed;
    bool empty = false;
    // fixed point i at level k maps to fixed point projection[i] at level k-1
    std::vector<std::size_t> projection;
};

struct BlowupLevel {
    std::size_t level = 0;
    FiniteGSet base;
    std::vector<BlowupPiece> pieces;

    // Sum over classes of [G : Z(g_c)] * |X^{g_c}|; finite groups only.
    std::size_t pair_count() const;
};

BlowupLevel blowup(const FiniteGSet& s);
BlowupLevel blowup_level(const OdometerSpec& spec, std::size_t k);

}  // namespace hk::gsets
