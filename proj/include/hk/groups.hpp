#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hk/exactalg.hpp"

namespace hk::groups {

using exactalg::CoeffRing;
using exactalg::FgAbGroup;
using exactalg::IntMatrix;

// Canonical element encoding, per family:
//   Trivial            []
//   FiniteCyclic(m)    [r], 0 <= r < m
//   FreeAbelianRank1   [n]
//   InfiniteDihedral   [n, i], i in {0, 1}; (n,i)(m,j) = (n + (-1)^i m, i + j)
//   Amalgam(a, b)      [f1, e1, f2, e2, ...] reduced syllables; f in {0 (x), 1 (y)},
//                      consecutive factors alternate, 0 < e < order of the factor
//   FinitePermutation  images of 0..degree-1; (gh)(p) = g(h(p))
using Element = std::vector<long long>;

enum class Family { Trivial, FiniteCyclic, FinitePermutation, FreeAbelianRank1, InfiniteDihedral, Amalgam };

// A word in the generators: (generator index, exponent) pairs, left to right.
using Word = std::vector<std::pair<std::size_t, long long>>;

class GroupDesc {
public:
    GroupDesc();  // trivial group

    static GroupDesc trivial();
    static GroupDesc cyclic(long long m);
    static GroupDesc integers();
    static GroupDesc infinite_dihedral();
    static GroupDesc amalgam(long long a, long long b);
    static GroupDesc permutation(std::size_t degree, const std::vector<std::vector<long long>>& generators);

    Family family() const { return family_; }
    long long param_a() const { return a_; }  // m for cyclic, a for amalgam, degree for permutation
    long long param_b() const { return b_; }
    std::string name() const;

    bool is_finite() const;
    bool is_abelian() const;
    // Order of a finite group.
    std::size_t order() const;

    Element identity() const;
    Element multiply(const Element& g, const Element& h) const;
    Element inverse(const Element& g) const;
    Element power(const Element& g, long long k) const;
    Element conjugate(const Element& g, const Element& by) const;  // by * g * by^-1
    bool contains(const Element& g) const;                          // canonical and in range
    // nullopt for elements of infinite order
    std::optional<long long> element_order(const Element& g) const;

    const std::vector<Element>& generators() const { return gens_; }
    Word word(const Element& g) const;
    Element evaluate(const Word& w) const;
    // Words that evaluate to the identity and, together with the generators,
    // present the group (empty for permutation groups, which are checked by
    // enumeration instead).
    std::vector<Word> relators() const;

    // All elements of a finite group, sorted.
    const std::vector<Element>& elements() const;
    std::size_t index_of(const Element& g) const;  // finite groups
    // Elements of word length <= radius in the generators and their inverses.
    std::vector<Element> ball(std::size_t radius) const;

    std::string format(const Element& g) const;

    friend bool operator==(const GroupDesc& x, const GroupDesc& y) {
        return x.family_ == y.family_ && x.a_ == y.a_ && x.b_ == y.b_ && x.gens_ == y.gens_;
    }

private:
    struct FiniteData;
    Family family_ = Family::Trivial;
    long long a_ = 0, b_ = 0;
    std::vector<Element> gens_;
    std::shared_ptr<const FiniteData> fin_;

    void build_finite();
    Element reduce_amalgam(Element w) const;
};

// A subgroup together with its isomorphism type and embedding.
struct Subgroup {
    GroupDesc parent;
    GroupDesc abstract;
    std::vector<Element> gen_images;  // image of each abstract generator
    bool whole = false;
    std::optional<std::size_t> index;  // [parent : H] when finite
    std::function<bool(const Element&)> member;
    std::function<Element(const Element&)> pull;  // parent element in H -> abstract element

    static Subgroup whole_group(const GroupDesc& g);
    // Subgroup generated by `gens`. Finite parents: closure. Infinite parents:
    // family-specific normal forms (translation lattices in Z and D_inf,
    // finite cyclic subgroups elsewhere).
    static Subgroup generated(const GroupDesc& parent, std::vector<Element> gens);

    bool contains(const Element& g) const { return member(g); }
    Element embed(const Element& h) const;
    Element pullback(const Element& g) const { return pull(g); }
    bool is_finite() const { return abstract.is_finite(); }
    std::size_t order() const { return abstract.order(); }
    // Parent elements of a finite subgroup.
    std::vector<Element> elements() const;
};

struct TorsionClass {
    Element representative;
    long long order = 1;
    Subgroup centralizer;
};

std::vector<TorsionClass> torsion_conjugacy_classes(const GroupDesc& g);
Subgroup centralizer(const GroupDesc& g, const Element& x);
// Bounded search for h with h x h^-1 = y (exhaustive for finite groups).
std::optional<Element> find_conjugator(const GroupDesc& g, const Element& x, const Element& y, std::size_t radius);

// Chain of finite-index subgroups G_1 > G_2 > ... of index n_k.
struct SubgroupChain {
    GroupDesc group;
    std::vector<long long> indices;

    void validate() const;
    Subgroup level(std::size_t k) const;  // k >= 1; level 0 is the whole group
};

// Finite-rank integral representation: one matrix per generator.
struct Representation {
    GroupDesc group;
    std::size_t rank = 0;
    std::vector<IntMatrix> gens;
    std::vector<IntMatrix> gens_inv;

    static Representation trivial(const GroupDesc& g, std::size_t rank = 1);
    // from permutations of {0..n-1}, one per generator
    static Representation permutation(const GroupDesc& g, const std::vector<std::vector<std::size_t>>& perms);

    IntMatrix act(const Element& g) const;
    // Relators (or, for permutation groups, the multiplication table) hold and
    // each inverse is an inverse.
    void validate() const;
};

// Group ring element: sorted (element, coefficient) pairs with no zero coefficient.
using GroupRingElt = std::vector<std::pair<Element, long long>>;

GroupRingElt gr_normalize(GroupRingElt x);
GroupRingElt gr_multiply(const GroupDesc& g, const GroupRingElt& x, const GroupRingElt& y);
GroupRingElt gr_add(const GroupRingElt& x, const GroupRingElt& y);

class RingMatrix {
public:
    RingMatrix() = default;
    RingMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::map<std::pair<std::size_t, std::size_t>, GroupRingElt>& entries() const { return e_; }
    GroupRingElt at(std::size_t r, std::size_t c) const;
    void add(std::size_t r, std::size_t c, const GroupRingElt& v);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::map<std::pair<std::size_t, std::size_t>, GroupRingElt> e_;
};

// Free resolution of the trivial module. Entry (j, k) of boundaries[n-1] is the
// coefficient of generator j of F_{n-1} in the boundary of generator k of F_n
// (left modules). augmentation[k] is the image of generator k of F_0 in Z.
struct GResolution {
    GroupDesc group;
    std::string kind;
    std::vector<std::size_t> ranks;
    std::vector<RingMatrix> boundaries;
    std::vector<long long> augmentation;

    std::size_t depth() const { return ranks.empty() ? 0 : ranks.size() - 1; }
    // Symbolic d^2 = 0 and augmentation . d_1 = 0.
    bool is_complex() const;
};

GResolution periodic_resolution(long long m, std::size_t depth);
GResolution z_resolution(std::size_t depth);
GResolution bar_resolution(const GroupDesc& g, std::size_t depth);
GResolution amalgam_resolution(long long a, long long b, std::size_t depth);
// Wall-style resolution for a free product of two finite cyclic subgroups
// generated by x and y of orders a and b.
GResolution wall_resolution(const GroupDesc& g, const Element& x, long long a, const Element& y, long long b,
                            std::size_t depth);
// The family's preferred resolution.
GResolution resolution_for(const GroupDesc& g, std::size_t depth);

// (F tensor_G M) as an integral chain complex, degrees 0..depth of F.
exactalg::ChainComplex tensor_complex(const GResolution& f, const Representation& m, const CoeffRing& coeffs = {});
// Hom_G(F, M) stored with negated degrees (degree -n holds Hom(F_n, M)).
exactalg::ChainComplex hom_complex(const GResolution& f, const Representation& m, const CoeffRing& coeffs = {});

std::map<int, FgAbGroup> group_homology(const Representation& m, std::size_t depth, const CoeffRing& coeffs = {});
std::map<int, FgAbGroup> group_homology(const GResolution& f, const Representation& m, std::size_t depth,
                                        const CoeffRing& coeffs = {});
// H^n for 0 <= n <= depth, keyed by n.
std::map<int, FgAbGroup> group_cohomology(const Representation& m, std::size_t depth, const CoeffRing& coeffs = {});

// Rank of the augmented complex's homology over Q in degrees 0..depth-1
// (all zero for a resolution); computed on trivial coefficients.
bool exact_in_low_degrees(const GResolution& f);

// Chain map F -> F' over the identity of Z, solved degree by degree over Z
// through the regular representation. Finite groups only. Result[n] is the
// (rank'_n * |G|) x (rank_n) integer matrix of images of the generators of F_n
// in the Z-basis (generator, group element) of F'_n.
std::vector<IntMatrix> lift_comparison(const GResolution& f, const GResolution& g);

}  // namespace hk::groups
