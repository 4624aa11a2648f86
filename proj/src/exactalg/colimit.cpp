#include <algorithm>
#include <set>

#include "hk/exactalg.hpp"

namespace hk::exactalg {

namespace {

// [F | R] where R holds the torsion relations of the target presentation.
IntMatrix with_relations(const IntMatrix& f, const std::vector<BigInt>& orders) {
    std::size_t nrel = 0;
    for (const auto& d : orders)
        if (d != 0) ++nrel;
    IntMatrix m(orders.size(), f.cols() + nrel);
    m.add_block(0, 0, f);
    std::size_t col = f.cols();
    for (std::size_t i = 0; i < orders.size(); ++i)
        if (orders[i] != 0) m.set(i, col++, orders[i]);
    return m;
}

// Isomorphism type of the subgroup generated by the columns of f inside the
// group presented by `orders`.
FgAbGroup image_type(const IntMatrix& f, const std::vector<BigInt>& orders) {
    IntMatrix fr = with_relations(f, orders);
    DenseMatrix ker = kernel_basis(fr);
    IntMatrix rel(f.cols(), ker.cols());
    for (std::size_t i = 0; i < f.cols(); ++i)
        for (std::size_t j = 0; j < ker.cols(); ++j)
            if (ker(i, j) != 0) rel.set(i, j, ker(i, j));
    auto diag = elimination_diagonal(rel);
    return FgAbGroup::make(f.cols() - diag.size(), diag);
}

// Is every column of `small` in the subgroup generated by `big` (mod relations)?
bool spans(const IntMatrix& big, const IntMatrix& small, const std::vector<BigInt>& orders) {
    SmithData s = smith_decompose(with_relations(big, orders));
    for (std::size_t j = 0; j < small.cols(); ++j) {
        std::vector<BigInt> col(small.rows());
        for (std::size_t i = 0; i < small.rows(); ++i) col[i] = small.at(i, j);
        if (!integer_solve(s, col)) return false;
    }
    return true;
}

bool is_iso(const IntMatrix& f, const FgAbGroup& src, const FgAbGroup& tgt) {
    if (!(src == tgt)) return false;
    return spans(f, IntMatrix::identity(tgt.generator_count()), tgt.relation_orders());
}

struct Sub {
    std::vector<FgAbGroup> terms;
    std::vector<IntMatrix> maps;
};

std::optional<std::pair<AbGroup, std::string>> identify_stable(const Sub& s) {
    const std::size_t w = s.maps.size();
    const std::size_t last = s.terms.size() - 1;
    bool all_iso = true;
    for (std::size_t i = 0; i < w && all_iso; ++i) all_iso = is_iso(s.maps[i], s.terms[i], s.terms[i + 1]);
    if (all_iso) return std::make_pair(AbGroup::from(s.terms[last]), std::string("stationary"));
    if (w < 2) return std::nullopt;
    // images S_{j+1} = im f_j; need f_{j+1}: S_{j+1} -> S_{j+2} bijective
    std::vector<FgAbGroup> types;
    for (std::size_t j = 0; j < w; ++j) types.push_back(image_type(s.maps[j], s.terms[j + 1].relation_orders()));
    for (std::size_t j = 0; j + 1 < w; ++j) {
        if (!(types[j] == types[j + 1])) return std::nullopt;
        IntMatrix comp = s.maps[j + 1] * s.maps[j];
        if (!spans(comp, s.maps[j + 1], s.terms[j + 2].relation_orders())) return std::nullopt;
    }
    return std::make_pair(AbGroup::from(types.back()), std::string("stable_image"));
}

}  // namespace

void ColimitSequence::validate() const {
    if (terms.empty()) throw InputError("colimit sequence has no terms");
    if (connecting.size() + 1 != terms.size())
        throw InputError("colimit sequence needs one connecting map per consecutive pair of terms");
    for (std::size_t i = 0; i < connecting.size(); ++i) {
        const auto& f = connecting[i];
        const auto src = terms[i].relation_orders();
        const auto tgt = terms[i + 1].relation_orders();
        if (f.rows() != tgt.size() || f.cols() != src.size())
            throw InputError("connecting map " + std::to_string(i) + " has the wrong shape");
        for (const auto& [k, v] : f.entries()) {
            const BigInt& d = src[k.second];
            if (d == 0) continue;
            const BigInt& e = tgt[k.first];
            BigInt img = d * v;
            bool ok = (e == 0) ? img == 0 : mpz_divisible_p(img.get_mpz_t(), e.get_mpz_t()) != 0;
            if (!ok)
                throw InputError("connecting map " + std::to_string(i) +
                                 " does not send relations to relations (generator " + std::to_string(k.second) +
                                 ")");
        }
    }
}

ColimitResult colimit_identify(const ColimitSequence& s, std::size_t window) {
    s.validate();
    if (window == 0 || window > s.connecting.size())
        throw InputError("stabilization window " + std::to_string(window) + " larger than the " +
                         std::to_string(s.connecting.size()) + " available connecting maps");
    ColimitResult res;
    res.final_term = s.terms.back();
    const std::size_t first = s.terms.size() - 1 - window;
    Sub sub;
    sub.terms.assign(s.terms.begin() + static_cast<long>(first), s.terms.end());
    sub.maps.assign(s.connecting.begin() + static_cast<long>(first), s.connecting.end());

    if (auto st = identify_stable(sub)) {
        res.identified = true;
        res.group = st->first;
        res.pattern = st->second;
        return res;
    }

    // rank-one free part acted on by nonzero scalars, torsion handled separately
    bool scalar = std::all_of(sub.terms.begin(), sub.terms.end(), [](const FgAbGroup& g) { return g.rank == 1; });
    std::set<long> primes;
    Sub tors;
    for (std::size_t i = 0; scalar && i < sub.maps.size(); ++i) {
        const auto& f = sub.maps[i];
        const std::size_t ts = sub.terms[i].torsion.size();
        const std::size_t tt = sub.terms[i + 1].torsion.size();
        BigInt a = f.at(tt, ts);
        if (a == 0) {
            scalar = false;
            break;
        }
        for (std::size_t r = 0; r < tt; ++r)
            if (f.at(r, ts) != 0) scalar = false;
        for (long p : prime_factors(a)) primes.insert(p);
        tors.maps.push_back(f.submatrix(0, 0, tt, ts));
    }
    if (scalar) {
        for (const auto& t : sub.terms) tors.terms.push_back(FgAbGroup{0, t.torsion, {}});
        if (auto st = identify_stable(tors)) {
            res.identified = true;
            res.group = direct_sum(AbGroup::localized({primes.begin(), primes.end()}), st->first);
            res.pattern = "localized";
            return res;
        }
    }
    res.pattern = "undecided";
    return res;
}

}  // namespace hk::exactalg
