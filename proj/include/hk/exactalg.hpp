#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hk/bigint.hpp"
#include "hk/error.hpp"

namespace hk::exactalg {

// Z, Q or Z[1/S]. Only localizations of Z are supported, so base change is
// flat and homology can always be computed over Z first.
struct CoeffRing {
    enum class Kind { Integers, Rationals, IntegersInverted };

    Kind kind = Kind::Integers;
    std::vector<long> primes;  // sorted, nonempty iff kind == IntegersInverted

    static CoeffRing integers() { return {}; }
    static CoeffRing rationals() { return {Kind::Rationals, {}}; }
    static CoeffRing inverted(std::vector<long> primes);
    // "Z", "Q", "Z[1/2]", "Z[1/2,3]", "Z[1/6]" (composites are factored)
    static CoeffRing parse(const std::string& text);

    bool inverts(long prime) const;
    bool inverts_all_primes_of(const BigInt& n) const;
    std::string name() const;

    friend bool operator==(const CoeffRing&, const CoeffRing&) = default;
};

// Sparse integer matrix; entries never hold zero.
class IntMatrix {
public:
    using Key = std::pair<std::size_t, std::size_t>;

    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::map<Key, BigInt>& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }

    BigInt at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const BigInt& v);
    void add(std::size_t r, std::size_t c, const BigInt& v);

    bool is_zero() const { return entries_.empty(); }
    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix scaled(const BigInt& s) const;
    std::vector<BigInt> apply(const std::vector<BigInt>& v) const;

    // Places `block` with its top-left corner at (r0, c0), adding to existing entries.
    void add_block(std::size_t r0, std::size_t c0, const IntMatrix& block);
    IntMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::map<Key, BigInt> entries_;
};

IntMatrix block_diagonal(const IntMatrix& m, std::size_t copies);

// Row-major dense matrix, used internally by the Smith form with transforms.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
    explicit DenseMatrix(const IntMatrix& m);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    DenseMatrix operator*(const DenseMatrix& o) const;
    std::vector<BigInt> apply(const std::vector<BigInt>& v) const;
    IntMatrix to_sparse() const;
    DenseMatrix rows_range(std::size_t r0, std::size_t n) const;
    DenseMatrix cols_range(std::size_t c0, std::size_t n) const;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t r_ = 0;
    std::size_t c_ = 0;
    std::vector<BigInt> a_;
};

struct SmithForm {
    IntMatrix U, D, V;
};

// Full decomposition: U*M*V = D with inverses of both transforms.
struct SmithData {
    DenseMatrix U, Uinv, D, V, Vinv;
    std::size_t rank = 0;
    std::vector<BigInt> diagonal;  // the first `rank` diagonal entries, positive
};

SmithForm smith_normal_form(const IntMatrix& m);
SmithData smith_decompose(const IntMatrix& m);

// Nonzero diagonal of some diagonal form of m (absolute values, unordered
// chain). Sparse elimination without transforms; cheap on large sparse input.
std::vector<BigInt> elimination_diagonal(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);

// Invariant-factor normal form of Z/d_1 + ... ; entries equal to 1 dropped,
// zeros rejected.
std::vector<BigInt> invariant_factors(std::vector<BigInt> diag);

// Integer solution of A x = b with free coordinates (in Smith coordinates)
// set to zero, or nullopt if none exists.
std::optional<std::vector<BigInt>> integer_solve(const IntMatrix& a, const std::vector<BigInt>& b);
std::optional<std::vector<BigInt>> integer_solve(const SmithData& s, const std::vector<BigInt>& b);

// Columns spanning the integer kernel of m.
DenseMatrix kernel_basis(const IntMatrix& m);

struct FgAbGroup {
    std::size_t rank = 0;
    std::vector<BigInt> torsion;  // invariant factors, each >= 2
    CoeffRing ring;

    static FgAbGroup zero(const CoeffRing& ring = {}) { return {0, {}, ring}; }
    static FgAbGroup free(std::size_t rank, const CoeffRing& ring = {}) { return {rank, {}, ring}; }
    // Z^rank + (+) Z/d for d in diag, normalised and base-changed to `ring`.
    static FgAbGroup make(std::size_t rank, std::vector<BigInt> diag, const CoeffRing& ring = {});

    bool is_zero() const { return rank == 0 && torsion.empty(); }
    bool is_torsion() const { return rank == 0; }
    std::size_t generator_count() const { return rank + torsion.size(); }
    // order of each presentation generator: torsion entries then zeros for the free part
    std::vector<BigInt> relation_orders() const;
    std::string to_string() const;

    friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;
};

FgAbGroup tensor_coeffs(const FgAbGroup& g, const CoeffRing& r);
FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b);

// Direct sum of localized free summands Z[1/S]^a (S possibly "all primes")
// and finite cyclic summands. Carries colimits such as Z[1/2] (+) Z.
struct AbGroup {
    struct Localization {
        bool all = false;         // Q
        std::vector<long> primes;  // sorted; empty means Z
        auto operator<=>(const Localization&) const = default;
    };

    std::map<Localization, std::size_t> free;
    std::vector<BigInt> torsion;  // invariant factors

    static AbGroup from(const FgAbGroup& g);
    static AbGroup localized(std::vector<long> primes, std::size_t mult = 1);

    std::size_t rational_rank() const;
    bool is_zero() const { return rational_rank() == 0 && torsion.empty(); }
    AbGroup tensor(const CoeffRing& r) const;
    std::string to_string() const;

    friend bool operator==(const AbGroup&, const AbGroup&) = default;
};

AbGroup direct_sum(const AbGroup& a, const AbGroup& b);

class ChainComplex {
public:
    ChainComplex() = default;
    // boundaries[i] maps degree lo+i+1 to degree lo+i. Rejects shape
    // mismatches and nonzero composites.
    ChainComplex(int lo, std::vector<std::size_t> ranks, std::vector<IntMatrix> boundaries,
                 CoeffRing coeffs = {});

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
    bool empty() const { return ranks_.empty(); }
    bool contains(int n) const { return !ranks_.empty() && n >= lo() && n <= hi(); }
    std::size_t rank_at(int n) const;
    // boundary out of degree n (zero matrix to degree n-1 at the bottom)
    IntMatrix boundary(int n) const;
    const CoeffRing& coeffs() const { return coeffs_; }
    const std::vector<std::size_t>& ranks() const { return ranks_; }

private:
    int lo_ = 0;
    std::vector<std::size_t> ranks_;
    std::vector<IntMatrix> d_;
    CoeffRing coeffs_;
};

FgAbGroup homology_at(const ChainComplex& c, int n);
// all degrees at once, each boundary eliminated once
std::map<int, FgAbGroup> homology_all(const ChainComplex& c);

// Explicit generators for H_n over Z and a projection from cycles to
// coordinates in those generators (torsion generators first).
struct HomologyBasis {
    FgAbGroup group;
    DenseMatrix generators;  // chain rank x generator count
    DenseMatrix projection;  // generator count x chain rank
    std::vector<BigInt> orders;

    std::vector<BigInt> coordinates(const std::vector<BigInt>& cycle) const;
};

HomologyBasis homology_basis(const ChainComplex& c, int n);
// Matrix of the map on homology induced by a degree-n chain map.
IntMatrix induced_map(const HomologyBasis& src, const HomologyBasis& tgt, const IntMatrix& chain_map);

struct ColimitSequence {
    std::vector<FgAbGroup> terms;
    std::vector<IntMatrix> connecting;  // connecting[i]: terms[i] -> terms[i+1]

    void validate() const;
};

struct ColimitResult {
    bool identified = false;
    AbGroup group;           // valid when identified
    std::string pattern;     // stationary, stable_image, localized, undecided
    FgAbGroup final_term;
};

ColimitResult colimit_identify(const ColimitSequence& s, std::size_t window);

using GradedTable = std::map<int, AbGroup>;

enum class CompareMode { Exact, Rational, Z2GradedRational };

struct CompareReport {
    bool pass = false;
    std::vector<std::string> mismatches;
    std::size_t even_a = 0, odd_a = 0, even_b = 0, odd_b = 0;
};

CompareReport graded_table_compare(const GradedTable& a, const GradedTable& b, CompareMode mode);
CompareReport graded_table_compare(const std::map<int, FgAbGroup>& a, const std::map<int, FgAbGroup>& b,
                                   CompareMode mode);

}  // namespace hk::exactalg
