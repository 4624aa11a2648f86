#include <algorithm>
#include <functional>

#include "hk/gcomplex.hpp"

namespace hk::gcomplex {

using equivmod::MapEntry;
using exactalg::IntMatrix;
using equivmod::ModuleBlock;
using groups::Representation;

namespace {

std::vector<Element> sorted_elements(const Subgroup& h) {
    auto els = h.elements();
    std::sort(els.begin(), els.end());
    return els;
}

std::size_t position(const std::vector<Element>& sorted, const Element& g) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), g);
    if (it == sorted.end() || *it != g) throw DomainError("element missing from a stabilizer listing");
    return static_cast<std::size_t>(it - sorted.begin());
}

// Permutation representation of h.abstract from its action on a list.
Representation permutation_rep(const Subgroup& h, std::size_t n,
                               const std::function<std::size_t(const Element&, std::size_t)>& act) {
    Representation r = Representation::trivial(h.abstract, n);
    r.gens.clear();
    r.gens_inv.clear();
    for (const auto& s : h.gen_images) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(act(s, i), i, 1);
        r.gens_inv.push_back(m.transpose());
        r.gens.push_back(std::move(m));
    }
    return r;
}

void require_structure(const GSimplicialComplex& y, StructureReport& rep) {
    rep = check_structure(y);
    if (!rep.all()) {
        std::string why;
        for (const auto& w : rep.witnesses) why += (why.empty() ? "" : "; ") + w;
        throw InputError("the complex must be proper, G-finite, type-preserving and orientable: " + why);
    }
}

}  // namespace

bool ModuleCochainComplex::squares_to_zero() const {
    for (std::size_t i = 0; i + 1 < maps.size(); ++i)
        if (!equivmod::compose(maps[i + 1], maps[i]).is_zero()) return false;
    return true;
}

exactalg::ChainComplex ModuleCochainComplex::coinvariant_complex(const CoeffRing& coeffs) const {
    std::vector<equivmod::Coinvariants> c;
    for (std::size_t i = 0; i < modules.size(); ++i) {
        c.push_back(equivmod::coinvariants(modules[i]));
        for (const auto& o : c.back().orders)
            if (o != 0)
                throw DomainError("coinvariants in degree " + std::to_string(lo + static_cast<int>(i)) +
                                  " have torsion");
    }
    // chain degree -n holds cochain degree n
    std::vector<std::size_t> ranks;
    std::vector<IntMatrix> bd;
    for (std::size_t k = 0; k < modules.size(); ++k) ranks.push_back(c[modules.size() - 1 - k].generator_count());
    for (std::size_t k = 0; k + 1 < modules.size(); ++k) {
        std::size_t n = modules.size() - 2 - k;  // map n -> n+1
        bd.push_back(equivmod::coinvariants_of_map(maps[n], c[n], c[n + 1]));
    }
    return exactalg::ChainComplex(-hi(), ranks, bd, coeffs);
}

ModuleCochainComplex basic_complex(const GSimplicialComplex& y, const CoeffRing& coeffs) {
    StructureReport rep;
    require_structure(y, rep);
    const GroupDesc& g = y.group();
    ModuleCochainComplex out;
    std::vector<std::vector<std::vector<Element>>> stab_els(y.dimension() + 1);
    for (std::size_t d = 0; d <= y.dimension(); ++d) {
        InducedModule m{g, {}, coeffs};
        for (const auto& o : y.orbits(d)) {
            auto els = sorted_elements(o.stabilizer);
            auto rho = permutation_rep(o.stabilizer, els.size(), [&](const Element& h, std::size_t i) {
                return position(els, g.conjugate(els[i], h));
            });
            m.blocks.push_back({o.stabilizer, rho});
            stab_els[d].push_back(std::move(els));
        }
        out.modules.push_back(std::move(m));
    }
    for (std::size_t d = 0; d < y.dimension(); ++d) {
        EquivariantMap f{out.modules[d], out.modules[d + 1], {}};
        f.entries.resize(y.orbits(d).size());
        for (std::size_t e = 0; e < y.orbits(d + 1).size(); ++e) {
            const Simplex t = oriented(y.orbits(d + 1)[e].rep, rep.orientation);
            const auto& eta_els = stab_els[d + 1][e];
            for (std::size_t j = 0; j < t.size(); ++j) {
                Simplex face = t;
                face.erase(face.begin() + static_cast<long>(j));
                std::sort(face.begin(), face.end());
                auto loc = y.locate(face);
                if (!loc) throw DomainError("missing face in the basic complex");
                const auto [s, u] = *loc;
                const auto& sig_els = stab_els[d][s];
                const Element u_inv = g.inverse(u);
                std::vector<Simplex> seen;
                for (const auto& h : sig_els) {
                    Element tt = g.multiply(h, u_inv);
                    Simplex moved = y.act(tt, y.orbits(d + 1)[e].rep);
                    if (std::find(seen.begin(), seen.end(), moved) != seen.end()) continue;
                    seen.push_back(moved);
                    IntMatrix m(eta_els.size(), sig_els.size());
                    const Element tt_inv = g.inverse(tt);
                    for (std::size_t c = 0; c < sig_els.size(); ++c) {
                        Element z = g.conjugate(sig_els[c], tt_inv);
                        auto it = std::lower_bound(eta_els.begin(), eta_els.end(), z);
                        if (it != eta_els.end() && *it == z)
                            m.set(static_cast<std::size_t>(it - eta_els.begin()), c, j % 2 ? -1 : 1);
                    }
                    f.entries[s].push_back({tt, e, std::move(m)});
                }
            }
        }
        out.maps.push_back(std::move(f));
    }
    return out;
}

std::vector<std::pair<std::size_t, Element>> blowup_pairs(const gsets::FiniteGSet& x, const Subgroup& stabilizer) {
    std::vector<std::pair<std::size_t, Element>> out;
    const auto els = sorted_elements(stabilizer);
    for (std::size_t p = 0; p < x.size; ++p)
        for (const auto& g : els)
            if (x.act(g, p) == p) out.emplace_back(p, g);
    return out;
}

bool DoubleComplex::squares_to_zero() const {
    for (const auto& r : rows)
        if (!r.squares_to_zero()) return false;
    for (std::size_t q = 0; q + 1 < vertical.size(); ++q)
        for (std::size_t i = 0; i < vertical[q].size(); ++i)
            if (!equivmod::compose(vertical[q + 1][i], vertical[q][i]).is_zero()) return false;
    return true;
}

bool DoubleComplex::anticommutes() const {
    for (std::size_t q = 0; q < vertical.size(); ++q)
        for (std::size_t i = 0; i < rows[q].maps.size(); ++i) {
            auto a = equivmod::compose(vertical[q][i + 1], rows[q].maps[i]);
            auto b = equivmod::compose(rows[q + 1].maps[i], vertical[q][i]);
            if (!equivmod::add(a, b).is_zero()) return false;
        }
    return true;
}

exactalg::ChainComplex DoubleComplex::coinvariant_total(const CoeffRing& coeffs) const {
    if (rows.empty()) throw InputError("a double complex needs at least one row");
    if (rows.size() == 1) return rows[0].coinvariant_complex(coeffs);
    const int plo = rows[0].lo;
    const std::size_t width = rows[0].modules.size();
    for (const auto& r : rows)
        if (r.lo != plo || r.modules.size() != width) throw InputError("rows of a double complex must line up");
    // C[q][i] coinvariants of rows[q].modules[i], cochain bidegree (plo + i, q)
    std::vector<std::vector<equivmod::Coinvariants>> c(rows.size());
    for (std::size_t q = 0; q < rows.size(); ++q)
        for (const auto& m : rows[q].modules) {
            c[q].push_back(equivmod::coinvariants(m));
            for (const auto& o : c[q].back().orders)
                if (o != 0) throw DomainError("coinvariants of the double complex have torsion");
        }
    const int nlo = plo, nhi = plo + static_cast<int>(width) - 1 + static_cast<int>(rows.size()) - 1;
    // offsets of (q, i) inside total cochain degree n
    auto total_rank = [&](int n, std::vector<std::pair<std::size_t, std::size_t>>& parts) {
        std::size_t r = 0;
        parts.clear();
        for (std::size_t q = 0; q < rows.size(); ++q) {
            int i = n - static_cast<int>(q) - plo;
            if (i < 0 || i >= static_cast<int>(width)) continue;
            parts.emplace_back(q, static_cast<std::size_t>(i));
            r += c[q][static_cast<std::size_t>(i)].generator_count();
        }
        return r;
    };
    std::vector<std::size_t> ranks;
    std::vector<IntMatrix> bd;
    std::vector<std::pair<std::size_t, std::size_t>> src, tgt;
    for (int n = nhi; n >= nlo; --n) ranks.push_back(total_rank(n, src));
    for (int n = nhi - 1; n >= nlo; --n) {
        std::size_t rs = total_rank(n, src), rt = total_rank(n + 1, tgt);
        IntMatrix m(rt, rs);
        auto offset = [&](const std::vector<std::pair<std::size_t, std::size_t>>& parts, std::size_t q,
                          std::size_t i) -> std::optional<std::size_t> {
            std::size_t o = 0;
            for (const auto& [pq, pi] : parts) {
                if (pq == q && pi == i) return o;
                o += c[pq][pi].generator_count();
            }
            return std::nullopt;
        };
        std::size_t so = 0;
        for (const auto& [q, i] : src) {
            if (i + 1 < width)
                if (auto to = offset(tgt, q, i + 1))
                    m.add_block(*to, so, equivmod::coinvariants_of_map(rows[q].maps[i], c[q][i], c[q][i + 1]));
            if (q + 1 < rows.size())
                if (auto to = offset(tgt, q + 1, i))
                    m.add_block(*to, so, equivmod::coinvariants_of_map(vertical[q][i], c[q][i], c[q + 1][i]));
            so += c[q][i].generator_count();
        }
        bd.push_back(std::move(m));
    }
    return exactalg::ChainComplex(-nhi, ranks, bd, coeffs);
}

DoubleComplex dc1_build(const GSimplicialComplex& y, const gsets::FiniteGSet& x, const CoeffRing& coeffs) {
    if (!(x.group == y.group())) throw InputError("the G-set and the complex are over different groups");
    StructureReport rep;
    require_structure(y, rep);
    const GroupDesc& g = y.group();
    const std::size_t top = y.dimension();
    ModuleCochainComplex row;
    row.lo = -static_cast<int>(top);
    // pairs[p][orbit]
    std::vector<std::vector<std::vector<std::pair<std::size_t, Element>>>> pairs(top + 1);
    for (std::size_t k = 0; k <= top; ++k) {
        const std::size_t p = top - k;
        InducedModule m{g, {}, coeffs};
        for (const auto& o : y.orbits(p)) {
            auto xs = blowup_pairs(x, o.stabilizer);
            auto rho = permutation_rep(o.stabilizer, xs.size(), [&](const Element& h, std::size_t i) {
                std::pair<std::size_t, Element> img{x.act(h, xs[i].first), g.conjugate(xs[i].second, h)};
                return static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), img) - xs.begin());
            });
            m.blocks.push_back({o.stabilizer, rho});
            pairs[p].push_back(std::move(xs));
        }
        row.modules.push_back(std::move(m));
    }
    for (std::size_t k = 0; k < top; ++k) {
        const std::size_t p = top - k;  // map from p-simplices to (p-1)-simplices
        EquivariantMap f{row.modules[k], row.modules[k + 1], {}};
        for (std::size_t e = 0; e < y.orbits(p).size(); ++e) {
            const Simplex t = oriented(y.orbits(p)[e].rep, rep.orientation);
            const auto& src = pairs[p][e];
            std::vector<MapEntry> entries;
            for (std::size_t j = 0; j < t.size(); ++j) {
                Simplex face = t;
                face.erase(face.begin() + static_cast<long>(j));
                std::sort(face.begin(), face.end());
                auto loc = y.locate(face);
                if (!loc) throw DomainError("missing face in the blow-up row");
                const auto [s, u] = *loc;
                const Element u_inv = g.inverse(u);
                const auto& tgt = pairs[p - 1][s];
                IntMatrix m(tgt.size(), src.size());
                for (std::size_t c = 0; c < src.size(); ++c) {
                    std::pair<std::size_t, Element> img{x.act(u_inv, src[c].first), g.conjugate(src[c].second, u_inv)};
                    auto it = std::lower_bound(tgt.begin(), tgt.end(), img);
                    if (it == tgt.end() || *it != img) throw DomainError("face inclusion left the blow-up");
                    m.set(static_cast<std::size_t>(it - tgt.begin()), c, j % 2 ? -1 : 1);
                }
                entries.push_back({u, s, std::move(m)});
            }
            f.entries.push_back(std::move(entries));
        }
        row.maps.push_back(std::move(f));
    }
    return {{row}, {}};
}

std::map<int, FgAbGroup> bs_cohomology(const GSimplicialComplex& y, const gsets::FiniteGSet& x,
                                       const CoeffRing& coeffs, int lo, int hi, bool enforce_invertible) {
    if (lo > hi) throw InputError("empty degree range");
    if (enforce_invertible)
        for (std::size_t d = 0; d <= y.dimension(); ++d)
            for (std::size_t i = 0; i < y.orbits(d).size(); ++i) {
                const std::size_t n = y.orbits(d)[i].stabilizer.order();
                for (std::size_t q = 2, r = n; r > 1; ++q)
                    if (r % q == 0) {
                        if (!coeffs.inverts(static_cast<long>(q)))
                            throw DomainError(coeffs.name() + " does not invert " + std::to_string(q) +
                                              ", which divides the order " + std::to_string(n) + " of the stabilizer of " +
                                              std::to_string(d) + "-simplex orbit " + std::to_string(i));
                        while (r % q == 0) r /= q;
                    }
            }
    auto total = dc1_build(y, x, coeffs).coinvariant_total(coeffs);
    auto h = exactalg::homology_all(total);
    std::map<int, FgAbGroup> out;
    for (int n = lo; n <= hi; ++n) {
        auto it = h.find(-n);
        out[n] = it == h.end() ? FgAbGroup::zero(coeffs) : it->second;
    }
    return out;
}

}  // namespace hk::gcomplex
