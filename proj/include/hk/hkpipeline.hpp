#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hk/gcomplex.hpp"

namespace hk::hkpipeline {

using exactalg::AbGroup;
using exactalg::CoeffRing;
using exactalg::ColimitResult;
using exactalg::FgAbGroup;
using exactalg::IntMatrix;
using gsets::FiniteGSet;
using gsets::OdometerSpec;

struct HomologyTable {
    std::map<int, FgAbGroup> groups;
    CoeffRing coeffs;
    std::string route;  // "groupoid", "hatted", "bs_cohomology"
    std::size_t truncation_level = 0;
};

// H_*(G, k[X]) and the blow-up version sum_c H_*(Z(g_c), k[X^{g_c}]) for one
// finite G-set, degrees 0..depth.
HomologyTable groupoid_homology(const FiniteGSet& x, const CoeffRing& coeffs, std::size_t depth);
HomologyTable hatted_homology(const FiniteGSet& x, const CoeffRing& coeffs, std::size_t depth);

// One torsion class followed through the levels, computed over Z.
struct ClassSequence {
    groups::TorsionClass cls;
    std::vector<std::size_t> fixed_counts;           // |X_k^{g_c}| per level
    std::vector<std::map<int, FgAbGroup>> levels;    // H_*(Z(g_c), Z[X_k^{g_c}])
    std::map<int, std::vector<IntMatrix>> connecting;  // per degree, level i -> i+1
    std::map<int, ColimitResult> colimit;            // per degree
};

struct LevelwiseHomology {
    std::string route;
    CoeffRing coeffs;
    std::size_t depth = 0;
    std::size_t levels = 0;                 // levels 1..levels
    std::vector<HomologyTable> tables;       // per level, over coeffs
    std::vector<ClassSequence> classes;      // identity class first
    std::map<int, AbGroup> colimit;          // identified degrees, over coeffs
    std::map<int, std::string> pattern;      // per degree
    std::size_t window = 0;

    bool truncated() const;
    // Rank over Z of the degree-0 colimit coming from non-identity classes:
    // the number of orbits with nontrivial isotropy in the limit.
    std::size_t twisted_rank() const;
};

// colim_k H_*(G, k[G/G_k]) along the pullbacks k[G/G_{k-1}] -> k[G/G_k].
LevelwiseHomology groupoid_homology(const OdometerSpec& spec, const CoeffRing& coeffs, std::size_t depth,
                                    std::size_t window = 2);
// The same for the blow-up, class by class.
LevelwiseHomology hatted_homology(const OdometerSpec& spec, const CoeffRing& coeffs, std::size_t depth,
                                  std::size_t window = 2);

struct CrosscheckRow {
    int degree = 0;       // hatted degree n; bs degree -n
    FgAbGroup hatted;
    FgAbGroup bs;
    bool equal = false;
};

struct CrosscheckReport {
    CoeffRing coeffs;
    std::size_t level = 0;  // 0 when X was given directly
    bool invertible = true;  // coeffs invert every stabilizer order of Y
    std::vector<CrosscheckRow> rows;

    bool agree() const;
};

// Hatted homology at n against bs_cohomology at -n for |n| <= max_degree.
// When coeffs do not invert the stabilizer orders the bs route is still
// computed (over the given ring) and `invertible` is false.
CrosscheckReport bcr_gh_crosscheck(const gcomplex::GSimplicialComplex& y, const FiniteGSet& x, const CoeffRing& coeffs,
                                   int max_degree);
// At every level 1..truncation_level of the odometer.
std::vector<CrosscheckReport> bcr_gh_crosscheck(const gcomplex::GSimplicialComplex& y, const OdometerSpec& spec,
                                                const CoeffRing& coeffs, int max_degree);

// Field dimensions E^2_{p,q}; rows q <= 0.
struct E2Page {
    std::map<std::pair<int, int>, std::size_t> dims;  // (p, q), zero entries omitted

    std::size_t at(int p, int q) const;
    std::vector<int> rows() const;  // q values with a nonzero entry, descending
    int max_p() const;
};

// rows[q][p] = dim H_p(G, H^{-q}) for each coefficient row q.
E2Page e2_page(const std::map<int, std::vector<std::size_t>>& rows);
// Product form: H^{-q} carries the trivial action, so E_{p,q} = h_p * c_q.
E2Page e2_page(const std::vector<std::size_t>& group_homology_dims, const std::map<int, std::size_t>& cohomology_dims);

struct TwoRowResult {
    enum class Status { Unique, Multiple, Inconsistent };
    Status status = Status::Inconsistent;
    // each solution maps the source column p of d^2: E_{p,q} -> E_{p-2,q+1} to its rank
    std::vector<std::map<int, std::size_t>> solutions;
    std::size_t e2_even = 0, e2_odd = 0;
};

std::string to_string(TwoRowResult::Status s);
// Z/2-graded totals of E^3 = E^infinity after applying the ranks.
std::pair<std::size_t, std::size_t> infinity_totals(const E2Page& page, const std::map<int, std::size_t>& ranks);
TwoRowResult two_row_solve(const E2Page& page, std::size_t even_target, std::size_t odd_target);

struct KSummand {
    enum class Kind { Free, Cyclic, Localized };
    Kind kind = Kind::Free;
    std::size_t count = 1;      // Free: Z^count
    BigInt order = 0;           // Cyclic: Z/order
    std::vector<long> primes;   // Localized: Z[1/primes]

    friend bool operator==(const KSummand&, const KSummand&) = default;
};

struct KTheoryInput {
    std::vector<KSummand> k0, k1;

    void validate() const;
    AbGroup group(int i) const;  // i = 0 or 1
};

struct HkVerdict {
    bool pass = false;
    std::size_t k0_rank = 0, k1_rank = 0, h_even_rank = 0, h_odd_rank = 0;
    std::vector<std::string> mismatches;
};

// rank K_0 against the even-degree total, rank K_1 against the odd one.
HkVerdict hk_compare(const std::map<int, AbGroup>& h, const KTheoryInput& k);
HkVerdict hk_compare(const std::map<int, FgAbGroup>& h, const KTheoryInput& k);

}  // namespace hk::hkpipeline
