#include "hk/exactalg.hpp"

namespace hk::exactalg {

ChainComplex::ChainComplex(int lo, std::vector<std::size_t> ranks, std::vector<IntMatrix> boundaries,
                           CoeffRing coeffs)
    : lo_(lo), ranks_(std::move(ranks)), d_(std::move(boundaries)), coeffs_(std::move(coeffs)) {
    if (ranks_.empty()) {
        if (!d_.empty()) throw InputError("chain complex without degrees cannot carry boundaries");
        return;
    }
    if (d_.size() + 1 != ranks_.size())
        throw InputError("chain complex needs exactly one boundary per adjacent pair of degrees");
    for (std::size_t i = 0; i < d_.size(); ++i) {
        const int deg = lo_ + static_cast<int>(i) + 1;
        if (d_[i].rows() != ranks_[i] || d_[i].cols() != ranks_[i + 1])
            throw InputError("boundary out of degree " + std::to_string(deg) + " has shape " +
                             std::to_string(d_[i].rows()) + "x" + std::to_string(d_[i].cols()) + ", expected " +
                             std::to_string(ranks_[i]) + "x" + std::to_string(ranks_[i + 1]));
    }
    for (std::size_t i = 0; i + 1 < d_.size(); ++i)
        if (!(d_[i] * d_[i + 1]).is_zero())
            throw InputError("boundary composite into degree " + std::to_string(lo_ + static_cast<int>(i)) +
                             " is nonzero");
}

std::size_t ChainComplex::rank_at(int n) const { return contains(n) ? ranks_[n - lo_] : 0; }

IntMatrix ChainComplex::boundary(int n) const {
    if (!contains(n)) return IntMatrix(rank_at(n - 1), 0);
    if (n == lo_) return IntMatrix(0, ranks_[0]);
    return d_[n - lo_ - 1];
}

namespace {

struct DegreeData {
    std::size_t rank = 0;
    std::vector<BigInt> diag;
};

FgAbGroup assemble(std::size_t rank_n, const std::vector<BigInt>& out_diag, const std::vector<BigInt>& in_diag,
                   const CoeffRing& coeffs) {
    std::size_t free = rank_n - out_diag.size() - in_diag.size();
    return FgAbGroup::make(free, in_diag, coeffs);
}

}  // namespace

FgAbGroup homology_at(const ChainComplex& c, int n) {
    if (!c.contains(n))
        throw InputError("homology degree " + std::to_string(n) + " outside [" + std::to_string(c.lo()) + ", " +
                         std::to_string(c.hi()) + "]");
    auto out_diag = elimination_diagonal(c.boundary(n));
    std::vector<BigInt> in_diag;
    if (n < c.hi()) in_diag = elimination_diagonal(c.boundary(n + 1));
    return assemble(c.rank_at(n), out_diag, in_diag, c.coeffs());
}

std::map<int, FgAbGroup> homology_all(const ChainComplex& c) {
    std::map<int, FgAbGroup> out;
    if (c.empty()) return out;
    std::map<int, std::vector<BigInt>> diag;  // diag[n] for the boundary out of degree n
    for (int n = c.lo() + 1; n <= c.hi(); ++n) diag[n] = elimination_diagonal(c.boundary(n));
    for (int n = c.lo(); n <= c.hi(); ++n) {
        static const std::vector<BigInt> none;
        const auto& out_d = n > c.lo() ? diag[n] : none;
        const auto& in_d = n < c.hi() ? diag[n + 1] : none;
        out[n] = assemble(c.rank_at(n), out_d, in_d, c.coeffs());
    }
    return out;
}

std::vector<BigInt> HomologyBasis::coordinates(const std::vector<BigInt>& cycle) const {
    std::vector<BigInt> x = projection.apply(cycle);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (orders[i] != 0) mpz_fdiv_r(x[i].get_mpz_t(), x[i].get_mpz_t(), orders[i].get_mpz_t());
    return x;
}

HomologyBasis homology_basis(const ChainComplex& c, int n) {
    if (!c.contains(n)) throw InputError("homology degree " + std::to_string(n) + " out of range");
    const std::size_t cn = c.rank_at(n);
    SmithData s1 = smith_decompose(c.boundary(n));
    const std::size_t r = s1.rank;
    const std::size_t k = cn - r;
    DenseMatrix low = s1.Vinv.rows_range(r, k);
    DenseMatrix ker = s1.V.cols_range(r, k);

    IntMatrix next = n < c.hi() ? c.boundary(n + 1) : IntMatrix(cn, 0);
    IntMatrix b(k, next.cols());
    for (const auto& [key, v] : next.entries())
        for (std::size_t i = 0; i < k; ++i)
            if (low(i, key.first) != 0) b.add(i, key.second, low(i, key.first) * v);
    SmithData s2 = smith_decompose(b);

    std::vector<std::size_t> keep;
    std::vector<BigInt> orders, torsion;
    for (std::size_t i = 0; i < k; ++i) {
        if (i < s2.rank) {
            if (s2.diagonal[i] == 1) continue;
            orders.push_back(s2.diagonal[i]);
            torsion.push_back(s2.diagonal[i]);
        } else {
            orders.push_back(0);
        }
        keep.push_back(i);
    }
    HomologyBasis h;
    h.group = FgAbGroup::make(k - s2.rank, torsion);
    h.orders = orders;
    DenseMatrix uinv_sel(k, keep.size());
    DenseMatrix u_sel(keep.size(), k);
    for (std::size_t j = 0; j < keep.size(); ++j)
        for (std::size_t i = 0; i < k; ++i) {
            uinv_sel(i, j) = s2.Uinv(i, keep[j]);
            u_sel(j, i) = s2.U(keep[j], i);
        }
    h.generators = ker * uinv_sel;
    h.projection = u_sel * low;
    return h;
}

IntMatrix induced_map(const HomologyBasis& src, const HomologyBasis& tgt, const IntMatrix& chain_map) {
    const std::size_t gs = src.orders.size();
    const std::size_t gt = tgt.orders.size();
    if (chain_map.cols() != src.generators.rows() || chain_map.rows() != tgt.projection.cols())
        throw InputError("induced_map: chain map shape does not match the homology bases");
    IntMatrix m(gt, gs);
    for (std::size_t j = 0; j < gs; ++j) {
        std::vector<BigInt> g(src.generators.rows());
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = src.generators(i, j);
        std::vector<BigInt> y = tgt.coordinates(chain_map.apply(g));
        for (std::size_t i = 0; i < gt; ++i)
            if (y[i] != 0) m.set(i, j, y[i]);
    }
    return m;
}

}  // namespace hk::exactalg
