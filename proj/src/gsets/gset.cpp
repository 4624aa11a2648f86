#include <algorithm>
#include <deque>
#include <map>

#include "hk/gsets.hpp"

namespace hk::gsets {

using groups::Family;
using groups::Word;

namespace {

long long mod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

std::vector<std::size_t> invert(const std::vector<std::size_t>& p) {
    std::vector<std::size_t> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
    return inv;
}

}  // namespace

FiniteGSet FiniteGSet::make(const GroupDesc& g, std::size_t size, std::vector<std::vector<std::size_t>> gen_action) {
    FiniteGSet s;
    s.group = g;
    s.size = size;
    if (gen_action.size() != g.generators().size())
        throw InputError("G-set of " + g.name() + " needs one permutation per generator");
    for (std::size_t i = 0; i < gen_action.size(); ++i) {
        const auto& p = gen_action[i];
        std::vector<bool> hit(size, false);
        if (p.size() != size) throw InputError("generator " + std::to_string(i) + " does not act on every point");
        for (auto x : p) {
            if (x >= size || hit[x]) throw InputError("generator " + std::to_string(i) + " does not act bijectively");
            hit[x] = true;
        }
        s.gen_inverse.push_back(invert(p));
    }
    s.gen_action = std::move(gen_action);
    s.validate();
    return s;
}

FiniteGSet FiniteGSet::trivial(const GroupDesc& g, std::size_t size) {
    std::vector<std::size_t> id(size);
    for (std::size_t i = 0; i < size; ++i) id[i] = i;
    FiniteGSet s;
    s.group = g;
    s.size = size;
    s.gen_action.assign(g.generators().size(), id);
    s.gen_inverse = s.gen_action;
    return s;
}

std::size_t FiniteGSet::act(const Element& g, std::size_t p) const {
    Word w = group.word(g);
    // the word acts right to left
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        const auto& perm = it->second < 0 ? gen_inverse[it->first] : gen_action[it->first];
        long long k = it->second < 0 ? -it->second : it->second;
        for (long long i = 0; i < k; ++i) p = perm[p];
    }
    return p;
}

std::vector<std::size_t> FiniteGSet::permutation(const Element& g) const {
    std::vector<std::size_t> out(size);
    for (std::size_t p = 0; p < size; ++p) out[p] = act(g, p);
    return out;
}

void FiniteGSet::validate() const {
    representation().validate();
}

groups::Representation FiniteGSet::representation() const {
    groups::Representation r = groups::Representation::trivial(group, size);
    for (std::size_t i = 0; i < gen_action.size(); ++i) {
        exactalg::IntMatrix m(size, size);
        for (std::size_t p = 0; p < size; ++p) m.set(gen_action[i][p], p, 1);
        r.gens[i] = m;
        r.gens_inv[i] = m.transpose();
    }
    return r;
}

FiniteGSet block_cycle_set(const GroupDesc& g, std::size_t n) {
    if (g.family() == Family::Trivial) return FiniteGSet::trivial(g, n);
    if (g.family() != Family::FiniteCyclic) throw InputError("block-cycle G-sets need a finite cyclic group");
    const auto m = static_cast<std::size_t>(g.param_a());
    std::vector<std::size_t> p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = j < n / m * m ? j / m * m + (j + 1) % m : j;
    return FiniteGSet::make(g, n, {p});
}

void OdometerSpec::validate() const {
    chain.validate();
    if (truncation_level > chain.indices.size())
        throw InputError("truncation_level " + std::to_string(truncation_level) + " exceeds the chain length " +
                             std::to_string(chain.indices.size()),
                         "/truncation_level");
}

std::size_t OdometerSpec::index(std::size_t k) const {
    if (k == 0) return 1;
    if (k > chain.indices.size()) throw InputError("level " + std::to_string(k) + " beyond the subgroup chain");
    return static_cast<std::size_t>(chain.indices[k - 1]);
}

Level level_gset(const OdometerSpec& spec, std::size_t k) {
    if (k > spec.truncation_level)
        throw InputError("level " + std::to_string(k) + " exceeds truncation level " +
                         std::to_string(spec.truncation_level));
    const GroupDesc& g = spec.chain.group;
    const long long n = static_cast<long long>(spec.index(k));
    Subgroup gk = spec.chain.level(k);
    // coset representatives: translations by j
    auto rep = [&](long long j) -> Element {
        switch (g.family()) {
            case Family::FiniteCyclic:
            case Family::FreeAbelianRank1: return Element{j};
            case Family::InfiniteDihedral: return Element{j, 0};
            default: return g.identity();
        }
    };
    auto locate = [&](const Element& x, long long modulus, const Subgroup& h) -> std::size_t {
        long long j = modulus == 1 ? 0 : mod(x[0], modulus);
        if (!h.contains(g.multiply(g.inverse(rep(j)), x)))
            throw DomainError("coset enumeration failed for " + g.format(x));
        return static_cast<std::size_t>(j);
    };
    std::vector<std::vector<std::size_t>> acts;
    for (const auto& s : g.generators()) {
        std::vector<std::size_t> p(static_cast<std::size_t>(n));
        for (long long j = 0; j < n; ++j) p[static_cast<std::size_t>(j)] = locate(g.multiply(s, rep(j)), n, gk);
        acts.push_back(std::move(p));
    }
    Level out;
    out.set = FiniteGSet::make(g, static_cast<std::size_t>(n), std::move(acts));
    if (k >= 1) {
        const long long prev = static_cast<long long>(spec.index(k - 1));
        Subgroup gp = spec.chain.level(k - 1);
        for (long long j = 0; j < n; ++j) out.projection.push_back(locate(rep(j), prev, gp));
    }
    return out;
}

std::vector<Orbit> orbits_and_stabilizers(const FiniteGSet& s) {
    const GroupDesc& g = s.group;
    std::vector<bool> seen(s.size, false);
    std::vector<Orbit> out;
    for (std::size_t base = 0; base < s.size; ++base) {
        if (seen[base]) continue;
        Orbit o;
        std::map<std::size_t, Element> trans{{base, g.identity()}};
        std::deque<std::size_t> queue{base};
        seen[base] = true;
        o.points.push_back(base);
        o.transversal.push_back(g.identity());
        while (!queue.empty()) {
            std::size_t p = queue.front();
            queue.pop_front();
            for (std::size_t i = 0; i < g.generators().size(); ++i) {
                std::size_t q = s.gen_action[i][p];
                if (seen[q]) continue;
                seen[q] = true;
                Element u = g.multiply(g.generators()[i], trans[p]);
                trans[q] = u;
                o.points.push_back(q);
                o.transversal.push_back(u);
                queue.push_back(q);
            }
        }
        // Schreier generators u_{sp}^{-1} s u_p
        std::vector<Element> schreier;
        for (const auto& [p, u] : trans)
            for (std::size_t i = 0; i < g.generators().size(); ++i) {
                std::size_t q = s.gen_action[i][p];
                Element x = g.multiply(g.inverse(trans[q]), g.multiply(g.generators()[i], u));
                if (x != g.identity()) schreier.push_back(std::move(x));
            }
        std::sort(schreier.begin(), schreier.end());
        schreier.erase(std::unique(schreier.begin(), schreier.end()), schreier.end());
        o.stabilizer = Subgroup::generated(g, schreier);
        out.push_back(std::move(o));
    }
    return out;
}

FixedSet fixed_points(const FiniteGSet& s, const Element& g) {
    if (!s.group.contains(g)) throw InputError(s.group.format(g) + " is not an element of " + s.group.name());
    FixedSet f;
    f.element = g;
    f.centralizer = groups::centralizer(s.group, g);
    std::vector<std::size_t> where(s.size, s.size);
    for (std::size_t p = 0; p < s.size; ++p)
        if (s.act(g, p) == p) {
            where[p] = f.points.size();
            f.points.push_back(p);
        }
    std::vector<std::vector<std::size_t>> acts;
    for (const auto& c : f.centralizer.gen_images) {
        auto perm = s.permutation(c);
        std::vector<std::size_t> local(f.points.size());
        for (std::size_t i = 0; i < f.points.size(); ++i) {
            std::size_t q = where[perm[f.points[i]]];
            if (q == s.size) throw DomainError("centralizer does not preserve the fixed set");
            local[i] = q;
        }
        acts.push_back(std::move(local));
    }
    f.set = FiniteGSet::make(f.centralizer.abstract, f.points.size(), std::move(acts));
    return f;
}

std::size_t BlowupLevel::pair_count() const {
    const GroupDesc& g = base.group;
    if (!g.is_finite()) throw DomainError("pair count of an infinite blow-up");
    std::size_t total = 0;
    for (const auto& piece : pieces) total += g.order() / piece.cls.centralizer.order() * piece.fixed.points.size();
    return total;
}

BlowupLevel blowup(const FiniteGSet& s) {
    BlowupLevel b;
    b.base = s;
    for (auto& cls : groups::torsion_conjugacy_classes(s.group)) {
        BlowupPiece piece;
        piece.fixed = fixed_points(s, cls.representative);
        piece.empty = piece.fixed.points.empty();
        piece.cls = std::move(cls);
        b.pieces.push_back(std::move(piece));
    }
    return b;
}

BlowupLevel blowup_level(const OdometerSpec& spec, std::size_t k) {
    Level lv = level_gset(spec, k);
    BlowupLevel b = blowup(lv.set);
    b.level = k;
    if (k == 0) return b;
    Level prev = level_gset(spec, k - 1);
    for (auto& piece : b.pieces) {
        std::map<std::size_t, std::size_t> prev_index;
        for (std::size_t p = 0; p < prev.set.size; ++p)
            if (prev.set.act(piece.cls.representative, p) == p) prev_index.emplace(p, prev_index.size());
        for (auto p : piece.fixed.points) {
            auto it = prev_index.find(lv.projection[p]);
            if (it == prev_index.end()) throw DomainError("level projection does not preserve fixed points");
            piece.projection.push_back(it->second);
        }
    }
    return b;
}

}  // namespace hk::gsets
