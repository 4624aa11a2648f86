#include <algorithm>
#include <map>
#include <set>

#include "hk/equivmod.hpp"

namespace hk::equivmod {

using exactalg::DenseMatrix;

namespace {

// Canonical representative of the left coset xK of a finite K: the least element.
Element coset_rep(const GroupDesc& g, const Element& x, const std::vector<Element>& k_elements) {
    Element best = g.multiply(x, k_elements.front());
    for (const auto& k : k_elements) best = std::min(best, g.multiply(x, k));
    return best;
}

using NormalForm = std::map<std::pair<std::size_t, Element>, IntMatrix>;

// Adds t (x) m, moved to the canonical coset representative.
void accumulate(NormalForm& nf, const InducedModule& target, std::size_t block, const Element& t,
                const IntMatrix& m, std::map<std::size_t, std::vector<Element>>& cache) {
    const GroupDesc& g = target.group;
    const ModuleBlock& b = target.blocks.at(block);
    auto it = cache.find(block);
    if (it == cache.end()) {
        if (!b.H.is_finite()) throw DomainError("equivariance check needs finite target stabilizers");
        it = cache.emplace(block, b.H.elements()).first;
    }
    Element r = coset_rep(g, t, it->second);
    IntMatrix moved = b.act(g.multiply(g.inverse(r), t)) * m;
    auto key = std::make_pair(block, r);
    auto found = nf.find(key);
    if (found == nf.end()) {
        nf.emplace(key, moved);
    } else {
        found->second = found->second + moved;
    }
}

void drop_zeros(NormalForm& nf) {
    for (auto it = nf.begin(); it != nf.end();) it = it->second.is_zero() ? nf.erase(it) : std::next(it);
}

BigInt reduce(const BigInt& x, const BigInt& order) {
    if (order == 0) return x;
    BigInt r = x % order;
    if (r < 0) r += order;
    return r;
}

// Coinvariants of one block from the stacked relation matrix.
void add_block(Coinvariants& c, const groups::Representation& n, std::size_t& free_total,
               std::vector<BigInt>& torsion_total) {
    const std::size_t rank = n.rank;
    IntMatrix rel(rank, rank * n.gens.size());
    for (std::size_t i = 0; i < n.gens.size(); ++i) rel.add_block(0, i * rank, n.gens[i] - IntMatrix::identity(rank));
    DenseMatrix u = DenseMatrix::identity(rank), uinv = DenseMatrix::identity(rank);
    std::vector<BigInt> diag;
    if (rel.cols() > 0 && rank > 0) {
        auto s = exactalg::smith_decompose(rel);
        u = s.U;
        uinv = s.Uinv;
        diag = s.diagonal;
    }
    std::vector<std::size_t> keep;
    std::vector<BigInt> orders;
    for (std::size_t i = 0; i < rank; ++i) {
        BigInt d = i < diag.size() ? diag[i] : BigInt(0);
        if (d == 1) continue;
        keep.push_back(i);
        orders.push_back(d);
        if (d == 0) {
            ++free_total;
        } else {
            torsion_total.push_back(d);
        }
    }
    IntMatrix proj(keep.size(), rank), lift(rank, keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j)
        for (std::size_t x = 0; x < rank; ++x) {
            proj.set(j, x, u(keep[j], x));
            lift.set(x, j, uinv(x, keep[j]));
        }
    c.offset.push_back(c.orders.size());
    c.orders.insert(c.orders.end(), orders.begin(), orders.end());
    c.projection.push_back(proj);
    c.lift.push_back(lift);
}

}  // namespace

ModuleBlock ModuleBlock::trivial(const Subgroup& h, std::size_t rank) {
    return {h, groups::Representation::trivial(h.abstract, rank)};
}

IntMatrix ModuleBlock::act(const Element& h) const { return N.act(H.pullback(h)); }

void InducedModule::validate() const {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        if (!(b.H.parent == group)) throw InputError("block " + std::to_string(i) + " is induced from a subgroup of another group");
        if (!(b.N.group == b.H.abstract))
            throw InputError("block " + std::to_string(i) + " module is not over its inducing subgroup");
        b.N.validate();
    }
}

InducedModule InducedModule::permutation_module(const gsets::FiniteGSet& s, const CoeffRing& coeffs) {
    InducedModule m;
    m.group = s.group;
    m.coeffs = coeffs;
    for (auto& o : gsets::orbits_and_stabilizers(s)) m.blocks.push_back(ModuleBlock::trivial(o.stabilizer));
    return m;
}

groups::Representation InducedModule::to_representation() const {
    if (!group.is_finite()) throw DomainError("explicit induction needs a finite group");
    struct Coset {
        std::size_t block;
        Element rep;
        std::size_t offset;
    };
    std::vector<Coset> cosets;
    std::size_t total = 0;
    std::vector<std::map<Element, std::size_t>> coset_of(blocks.size());  // canonical rep -> coset
    std::vector<std::vector<Element>> h_elements;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        h_elements.push_back(blocks[b].H.elements());
        for (const auto& x : group.elements()) {
            Element r = coset_rep(group, x, h_elements[b]);
            if (coset_of[b].count(r)) continue;
            coset_of[b].emplace(r, cosets.size());
            cosets.push_back({b, r, total});
            total += blocks[b].N.rank;
        }
    }
    groups::Representation rep = groups::Representation::trivial(group, total);
    auto image = [&](const Element& s) {
        IntMatrix m(total, total);
        for (const auto& c : cosets) {
            Element x = group.multiply(s, c.rep);
            Element r = coset_rep(group, x, h_elements[c.block]);
            const Coset& d = cosets[coset_of[c.block].at(r)];
            m.add_block(d.offset, c.offset, blocks[c.block].act(group.multiply(group.inverse(r), x)));
        }
        return m;
    };
    for (std::size_t i = 0; i < group.generators().size(); ++i) {
        rep.gens[i] = image(group.generators()[i]);
        rep.gens_inv[i] = image(group.inverse(group.generators()[i]));
    }
    return rep;
}

void EquivariantMap::validate() const {
    if (!(source.group == target.group)) throw InputError("map between modules over different groups");
    if (entries.size() != source.blocks.size()) throw InputError("map needs an entry list per source block");
    std::map<std::size_t, std::vector<Element>> cache;
    const GroupDesc& g = source.group;
    for (std::size_t b = 0; b < entries.size(); ++b) {
        const ModuleBlock& sb = source.blocks[b];
        for (const auto& e : entries[b]) {
            if (e.target >= target.blocks.size()) throw InputError("map entry names a missing target block");
            if (e.matrix.rows() != target.blocks[e.target].N.rank || e.matrix.cols() != sb.N.rank)
                throw InputError("map entry matrix has the wrong shape");
            if (!g.contains(e.t)) throw InputError("map entry element is not in " + g.name());
        }
        // f(1 (x) h n) must equal h f(1 (x) n) for each generator h of H
        for (const auto& h : sb.H.gen_images) {
            NormalForm lhs, rhs;
            IntMatrix rho = sb.act(h);
            for (const auto& e : entries[b]) {
                accumulate(lhs, target, e.target, e.t, e.matrix * rho, cache);
                accumulate(rhs, target, e.target, g.multiply(h, e.t), e.matrix, cache);
            }
            drop_zeros(lhs);
            drop_zeros(rhs);
            if (lhs != rhs)
                throw InputError("map is not equivariant on block " + std::to_string(b) + " at " + g.format(h));
        }
    }
}

bool EquivariantMap::is_zero() const {
    std::map<std::size_t, std::vector<Element>> cache;
    for (const auto& block : entries) {
        NormalForm nf;
        for (const auto& e : block) accumulate(nf, target, e.target, e.t, e.matrix, cache);
        drop_zeros(nf);
        if (!nf.empty()) return false;
    }
    return true;
}

EquivariantMap EquivariantMap::identity(const InducedModule& m) {
    EquivariantMap f{m, m, {}};
    for (std::size_t b = 0; b < m.blocks.size(); ++b)
        f.entries.push_back({MapEntry{m.group.identity(), b, IntMatrix::identity(m.blocks[b].N.rank)}});
    return f;
}

EquivariantMap EquivariantMap::zero(const InducedModule& s, const InducedModule& t) {
    return {s, t, std::vector<std::vector<MapEntry>>(s.blocks.size())};
}

EquivariantMap compose(const EquivariantMap& g, const EquivariantMap& f) {
    const GroupDesc& grp = f.source.group;
    EquivariantMap out{f.source, g.target, std::vector<std::vector<MapEntry>>(f.source.blocks.size())};
    for (std::size_t b = 0; b < f.entries.size(); ++b)
        for (const auto& e : f.entries[b])
            for (const auto& e2 : g.entries.at(e.target))
                out.entries[b].push_back({grp.multiply(e.t, e2.t), e2.target, e2.matrix * e.matrix});
    return out;
}

EquivariantMap add(const EquivariantMap& f, const EquivariantMap& g) {
    EquivariantMap out = f;
    for (std::size_t b = 0; b < out.entries.size(); ++b)
        out.entries[b].insert(out.entries[b].end(), g.entries.at(b).begin(), g.entries.at(b).end());
    return out;
}

std::vector<MapEntry> averaged_entries(const ModuleBlock& source, const Element& t, std::size_t target,
                                       const IntMatrix& m) {
    if (!source.H.is_finite()) throw DomainError("averaging over an infinite stabilizer");
    const GroupDesc& g = source.H.parent;
    std::vector<MapEntry> out;
    for (const auto& h : source.H.elements())
        out.push_back({g.multiply(h, t), target, m * source.act(g.inverse(h))});
    return out;
}

std::vector<BigInt> Coinvariants::project(std::size_t block, const std::vector<BigInt>& v) const {
    std::vector<BigInt> x = projection.at(block).apply(v);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = reduce(x[j], orders[offset[block] + j]);
    return x;
}

Coinvariants coinvariants(const InducedModule& m) {
    Coinvariants c;
    std::size_t free_total = 0;
    std::vector<BigInt> torsion;
    for (const auto& b : m.blocks) add_block(c, b.N, free_total, torsion);
    c.group = FgAbGroup::make(free_total, torsion, m.coeffs);
    return c;
}

Coinvariants coinvariants(const groups::Representation& r, const CoeffRing& coeffs) {
    Coinvariants c;
    std::size_t free_total = 0;
    std::vector<BigInt> torsion;
    add_block(c, r, free_total, torsion);
    c.group = FgAbGroup::make(free_total, torsion, coeffs);
    return c;
}

IntMatrix coinvariants_of_map(const EquivariantMap& f, const Coinvariants& src, const Coinvariants& tgt) {
    IntMatrix out(tgt.generator_count(), src.generator_count());
    for (std::size_t b = 0; b < f.entries.size(); ++b) {
        const IntMatrix& lift = src.lift.at(b);
        for (std::size_t j = 0; j < lift.cols(); ++j) {
            std::vector<BigInt> l(lift.rows());
            for (std::size_t x = 0; x < lift.rows(); ++x) l[x] = lift.at(x, j);
            std::vector<BigInt> col(tgt.generator_count());
            for (const auto& e : f.entries[b]) {
                auto p = tgt.project(e.target, e.matrix.apply(l));
                for (std::size_t i = 0; i < p.size(); ++i) col[tgt.offset[e.target] + i] += p[i];
            }
            for (std::size_t i = 0; i < col.size(); ++i) out.set(i, src.offset[b] + j, reduce(col[i], tgt.orders[i]));
        }
    }
    return out;
}

IntMatrix coinvariants_of_map(const EquivariantMap& f) {
    f.validate();
    return coinvariants_of_map(f, coinvariants(f.source), coinvariants(f.target));
}

std::vector<ShapiroTerm> shapiro_decompose(const gsets::BlowupLevel& b, const CoeffRing& coeffs) {
    std::vector<ShapiroTerm> out;
    for (const auto& p : b.pieces) {
        if (p.empty) continue;
        out.push_back({p.cls, p.fixed.set, InducedModule::permutation_module(p.fixed.set, coeffs)});
    }
    return out;
}

Restriction restrict_module(const InducedModule& m, const Subgroup& k, std::size_t radius) {
    const GroupDesc& g = m.group;
    if (!(k.parent == g)) throw InputError("restriction to a subgroup of another group");
    Restriction out;
    out.module.coeffs = m.coeffs;
    out.module.group = k.abstract;
    if (k.whole) {
        out.module = m;
        return out;
    }
    if (!k.is_finite()) throw DomainError("restriction to an infinite proper subgroup is not supported");
    const std::vector<Element> k_elements = k.elements();
    for (const auto& block : m.blocks) {
        const Subgroup& h = block.H;
        std::optional<std::size_t> target;
        if (g.is_finite()) {
            target = g.order() / (h.is_finite() ? h.order() : g.order());
        } else if (h.index) {
            target = h.index;
        }
        std::vector<Element> reps;
        std::size_t covered = 0;
        std::size_t r = g.is_finite() ? 0 : radius;
        for (;;) {
            const std::vector<Element> cands = g.is_finite() ? g.elements() : g.ball(r);
            for (const auto& x : cands) {
                bool known = std::any_of(reps.begin(), reps.end(), [&](const Element& rep) {
                    return std::any_of(k_elements.begin(), k_elements.end(), [&](const Element& kk) {
                        return h.contains(g.multiply(g.inverse(g.multiply(kk, rep)), x));
                    });
                });
                if (known) continue;
                reps.push_back(x);
                std::vector<Element> inter;
                for (const auto& kk : k_elements)
                    if (h.contains(g.conjugate(kk, g.inverse(x)))) inter.push_back(k.pullback(kk));
                Subgroup l = Subgroup::generated(k.abstract, inter);
                groups::Representation n = groups::Representation::trivial(l.abstract, block.N.rank);
                for (std::size_t i = 0; i < l.gen_images.size(); ++i) {
                    Element kk = k.embed(l.gen_images[i]);
                    n.gens[i] = block.act(g.conjugate(kk, g.inverse(x)));
                    n.gens_inv[i] = block.act(g.conjugate(g.inverse(kk), g.inverse(x)));
                }
                out.module.blocks.push_back({l, n});
                covered += k.order() / l.order();
            }
            if (g.is_finite() || !target || covered >= *target) break;
            r = 2 * r + 1;
            check_budget(r, "double coset search radius");
        }
        out.radius = std::max(out.radius, r);
        if (!target || covered != *target) out.complete = false;
    }
    return out;
}

std::map<int, FgAbGroup> group_homology(const InducedModule& m, std::size_t depth) {
    std::map<int, FgAbGroup> out;
    for (int n = 0; n <= static_cast<int>(depth); ++n) out[n] = FgAbGroup::zero(m.coeffs);
    for (const auto& b : m.blocks)
        for (const auto& [n, grp] : groups::group_homology(b.N, depth, m.coeffs))
            out[n] = exactalg::direct_sum(out[n], grp);
    return out;
}

}  // namespace hk::equivmod
