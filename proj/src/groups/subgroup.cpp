#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "hk/groups.hpp"

namespace hk::groups {

namespace {

long long mod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

std::set<Element> closure(const GroupDesc& g, const std::vector<Element>& gens) {
    std::set<Element> seen{g.identity()};
    std::deque<Element> queue{g.identity()};
    while (!queue.empty()) {
        Element x = queue.front();
        queue.pop_front();
        for (const auto& s : gens) {
            Element y = g.multiply(s, x);
            if (seen.insert(y).second) {
                check_budget(seen.size(), "subgroup closure");
                queue.push_back(y);
            }
        }
    }
    return seen;
}

// Greedy: keep a generator only if it enlarges the closure so far.
std::vector<Element> prune_generators(const GroupDesc& g, const std::vector<Element>& gens) {
    std::vector<Element> kept;
    std::set<Element> cur{g.identity()};
    for (const auto& s : gens) {
        if (cur.count(s)) continue;
        kept.push_back(s);
        cur = closure(g, kept);
    }
    return kept;
}

Subgroup finite_cyclic_subgroup(const GroupDesc& parent, const Element& gen, long long order) {
    Subgroup h;
    h.parent = parent;
    if (order == 1) {
        h.abstract = GroupDesc::trivial();
        Element e = parent.identity();
        h.member = [e](const Element& x) { return x == e; };
        h.pull = [](const Element&) { return Element{}; };
        if (parent.is_finite()) h.index = parent.order();
        return h;
    }
    h.abstract = GroupDesc::cyclic(order);
    h.gen_images = {gen};
    auto table = std::make_shared<std::map<Element, long long>>();
    Element acc = parent.identity();
    for (long long k = 0; k < order; ++k) {
        (*table)[acc] = k;
        acc = parent.multiply(acc, gen);
    }
    h.member = [table](const Element& x) { return table->count(x) > 0; };
    h.pull = [table, parent](const Element& x) {
        auto it = table->find(x);
        if (it == table->end()) throw InputError(parent.format(x) + " is not in the subgroup");
        return Element{it->second};
    };
    h.whole = parent.is_finite() && static_cast<std::size_t>(order) == parent.order();
    if (parent.is_finite()) h.index = parent.order() / static_cast<std::size_t>(order);
    return h;
}

Subgroup finite_subgroup(const GroupDesc& parent, const std::vector<Element>& gens) {
    auto els = closure(parent, gens);
    std::vector<Element> kept = prune_generators(parent, gens);
    // cyclic if some element has full order
    if (parent.family() != Family::FinitePermutation) {
        for (const auto& x : els)
            if (auto o = parent.element_order(x); o && static_cast<std::size_t>(*o) == els.size())
                return finite_cyclic_subgroup(parent, x, *o);
        throw DomainError("non-cyclic finite subgroup of " + parent.name() + " is not supported");
    }
    Subgroup h;
    h.parent = parent;
    h.abstract = GroupDesc::permutation(static_cast<std::size_t>(parent.param_a()), kept);
    h.gen_images = kept;
    h.whole = els.size() == parent.order();
    h.index = parent.order() / els.size();
    auto set = std::make_shared<std::set<Element>>(std::move(els));
    h.member = [set](const Element& x) { return set->count(x) > 0; };
    h.pull = [set, parent](const Element& x) {
        if (!set->count(x)) throw InputError(parent.format(x) + " is not in the subgroup");
        return x;
    };
    return h;
}

// Subgroups of Z and D_inf: translation lattice dZ plus optional reflection (e, 1).
Subgroup lattice_subgroup(const GroupDesc& parent, long long d, std::optional<long long> refl) {
    Subgroup h;
    h.parent = parent;
    if (!refl) {
        if (d == 0) return finite_cyclic_subgroup(parent, parent.identity(), 1);
        h.abstract = GroupDesc::integers();
        h.gen_images = {parent.family() == Family::InfiniteDihedral ? Element{d, 0} : Element{d}};
        h.whole = d == 1 && parent.family() == Family::FreeAbelianRank1;
        h.index = static_cast<std::size_t>(parent.family() == Family::InfiniteDihedral ? 2 * d : d);
        h.member = [d](const Element& x) { return (x.size() == 1 || x[1] == 0) && x[0] % d == 0; };
        h.pull = [d](const Element& x) {
            if (x[0] % d != 0 || (x.size() == 2 && x[1] != 0)) throw InputError("element is not in the subgroup");
            return Element{x[0] / d};
        };
        return h;
    }
    long long e = *refl;
    if (d == 0) return finite_cyclic_subgroup(parent, Element{e, 1}, 2);
    e = mod(e, d);
    h.abstract = GroupDesc::infinite_dihedral();
    h.gen_images = {Element{d, 0}, Element{e, 1}};
    h.whole = d == 1;
    h.index = static_cast<std::size_t>(d);
    h.member = [d, e](const Element& x) { return mod(x[0] - (x[1] ? e : 0), d) == 0; };
    h.pull = [d, e](const Element& x) {
        long long off = x[0] - (x[1] ? e : 0);
        if (mod(off, d) != 0) throw InputError("element is not in the subgroup");
        return Element{off / d, x[1]};
    };
    return h;
}

// x = w c w^-1 with c cyclically reduced.
std::pair<Element, Element> cyclic_reduce(const GroupDesc& g, Element c) {
    Element w = g.identity();
    while (c.size() >= 4 && c[0] == c[c.size() - 2]) {
        Element u{c[0], c[1]};
        c = g.multiply(g.multiply(g.inverse(u), c), u);
        w = g.multiply(w, u);
    }
    return {w, c};
}

Subgroup amalgam_vertex_conjugate(const GroupDesc& g, long long factor, const Element& w) {
    long long ord = factor == 0 ? g.param_a() : g.param_b();
    Subgroup h = finite_cyclic_subgroup(g, g.conjugate(Element{factor, 1}, w), ord);
    return h;
}

}  // namespace

Subgroup Subgroup::whole_group(const GroupDesc& g) {
    Subgroup h;
    h.parent = g;
    h.abstract = g;
    h.gen_images = g.generators();
    h.whole = true;
    h.index = 1;
    h.member = [g](const Element& x) { return g.contains(x); };
    h.pull = [](const Element& x) { return x; };
    return h;
}

Subgroup Subgroup::generated(const GroupDesc& parent, std::vector<Element> gens) {
    for (const auto& x : gens)
        if (!parent.contains(x)) throw InputError(parent.format(x) + " is not an element of " + parent.name());
    gens.erase(std::remove(gens.begin(), gens.end(), parent.identity()), gens.end());
    switch (parent.family()) {
        case Family::Trivial: return whole_group(parent);
        case Family::FiniteCyclic: {
            long long d = parent.param_a();
            for (const auto& x : gens) d = std::gcd(d, x[0]);
            Subgroup h = finite_cyclic_subgroup(parent, Element{d % parent.param_a()}, parent.param_a() / d);
            if (h.whole) {
                Subgroup w = whole_group(parent);
                return w;
            }
            return h;
        }
        case Family::FinitePermutation: {
            Subgroup h = finite_subgroup(parent, gens);
            if (h.whole && gens == parent.generators()) return whole_group(parent);
            return h;
        }
        case Family::FreeAbelianRank1: {
            long long d = 0;
            for (const auto& x : gens) d = std::gcd(d, x[0]);
            if (d == 1) return whole_group(parent);
            return lattice_subgroup(parent, d, std::nullopt);
        }
        case Family::InfiniteDihedral: {
            long long d = 0;
            std::optional<long long> refl;
            for (const auto& x : gens) {
                if (x[1] == 0) {
                    d = std::gcd(d, x[0]);
                } else if (!refl) {
                    refl = x[0];
                } else {
                    d = std::gcd(d, x[0] - *refl);
                }
            }
            if (d == 1 && refl) return whole_group(parent);
            return lattice_subgroup(parent, std::abs(d), refl);
        }
        case Family::Amalgam: {
            if (gens.empty()) return finite_cyclic_subgroup(parent, parent.identity(), 1);
            // finite if every generator lies in one conjugate of a vertex group
            auto [w0, c0] = cyclic_reduce(parent, gens[0]);
            if (c0.size() == 2) {
                Subgroup v = amalgam_vertex_conjugate(parent, c0[0], w0);
                bool inside = std::all_of(gens.begin(), gens.end(), [&](const Element& x) { return v.contains(x); });
                if (inside) return finite_subgroup(parent, gens);
            }
            bool has_x = false, has_y = false;
            for (const auto& x : gens) {
                if (x.size() == 2 && x[0] == 0 && std::gcd(x[1], parent.param_a()) == 1) has_x = true;
                if (x.size() == 2 && x[0] == 1 && std::gcd(x[1], parent.param_b()) == 1) has_y = true;
            }
            if (has_x && has_y) return whole_group(parent);
            throw DomainError("subgroup of " + parent.name() + " generated by the given elements is not supported");
        }
    }
    return whole_group(parent);
}

Element Subgroup::embed(const Element& h) const {
    Element acc = parent.identity();
    for (const auto& [s, k] : abstract.word(h)) acc = parent.multiply(acc, parent.power(gen_images[s], k));
    return acc;
}

std::vector<Element> Subgroup::elements() const {
    std::vector<Element> out;
    for (const auto& h : abstract.elements()) out.push_back(embed(h));
    return out;
}

Subgroup centralizer(const GroupDesc& g, const Element& x) {
    if (!g.contains(x)) throw InputError(g.format(x) + " is not an element of " + g.name());
    if (g.is_abelian() || x == g.identity()) return Subgroup::whole_group(g);
    switch (g.family()) {
        case Family::InfiniteDihedral:
            if (x[1] == 0) return Subgroup::generated(g, {Element{1, 0}});
            return Subgroup::generated(g, {x});
        case Family::Amalgam: {
            auto [w, c] = cyclic_reduce(g, x);
            if (c.size() == 2) return amalgam_vertex_conjugate(g, c[0], w);
            // hyperbolic: centralizer is generated by the conjugated primitive root
            std::size_t len = c.size() / 2;
            std::size_t period = len;
            for (std::size_t p = 1; p < len; ++p) {
                if (len % p) continue;
                bool ok = true;
                for (std::size_t i = 0; i < c.size() && ok; ++i) ok = c[i] == c[i % (2 * p)];
                if (ok) {
                    period = p;
                    break;
                }
            }
            Element root(c.begin(), c.begin() + static_cast<long>(2 * period));
            Subgroup h;
            h.parent = g;
            h.abstract = GroupDesc::integers();
            h.gen_images = {g.conjugate(root, w)};
            auto locate = [g, w = w, root, period](const Element& y) -> std::optional<long long> {
                Element z = g.multiply(g.multiply(g.inverse(w), y), w);
                if (z.empty()) return 0;
                if ((z.size() / 2) % period) return std::nullopt;
                long long k = static_cast<long long>(z.size() / 2 / period);
                if (g.power(root, k) == z) return k;
                if (g.power(root, -k) == z) return -k;
                return std::nullopt;
            };
            h.member = [locate](const Element& y) { return locate(y).has_value(); };
            h.pull = [locate](const Element& y) {
                auto k = locate(y);
                if (!k) throw InputError("element is not in the centralizer");
                return Element{*k};
            };
            return h;
        }
        case Family::FinitePermutation: {
            std::vector<Element> comm;
            for (const auto& y : g.elements())
                if (g.multiply(x, y) == g.multiply(y, x)) comm.push_back(y);
            return Subgroup::generated(g, comm);
        }
        default: return Subgroup::whole_group(g);
    }
}

std::vector<TorsionClass> torsion_conjugacy_classes(const GroupDesc& g) {
    std::vector<TorsionClass> out;
    auto add = [&](const Element& x, Subgroup c) {
        out.push_back({x, *g.element_order(x), std::move(c)});
    };
    switch (g.family()) {
        case Family::Trivial:
        case Family::FreeAbelianRank1: add(g.identity(), Subgroup::whole_group(g)); break;
        case Family::FiniteCyclic:
            for (const auto& x : g.elements()) add(x, Subgroup::whole_group(g));
            break;
        case Family::InfiniteDihedral:
            add(g.identity(), Subgroup::whole_group(g));
            add({0, 1}, centralizer(g, {0, 1}));
            add({1, 1}, centralizer(g, {1, 1}));
            break;
        case Family::Amalgam:
            add(g.identity(), Subgroup::whole_group(g));
            for (long long i = 1; i < g.param_a(); ++i) add({0, i}, centralizer(g, {0, i}));
            for (long long j = 1; j < g.param_b(); ++j) add({1, j}, centralizer(g, {1, j}));
            break;
        case Family::FinitePermutation: {
            std::set<Element> seen;
            for (const auto& x : g.elements()) {
                if (seen.count(x)) continue;
                for (const auto& h : g.elements()) seen.insert(g.conjugate(x, h));
                add(x, centralizer(g, x));
            }
            break;
        }
    }
    return out;
}

std::optional<Element> find_conjugator(const GroupDesc& g, const Element& x, const Element& y, std::size_t radius) {
    const std::vector<Element> cands = g.is_finite() ? g.elements() : g.ball(radius);
    for (const auto& h : cands)
        if (g.conjugate(x, h) == y) return h;
    return std::nullopt;
}

void SubgroupChain::validate() const {
    long long prev = 1;
    for (std::size_t k = 0; k < indices.size(); ++k) {
        long long n = indices[k];
        std::string where = "odometer index " + std::to_string(k);
        if (n < 1) throw InputError(where + " must be positive", "/odometer_indices/" + std::to_string(k));
        if (n % prev)
            throw InputError(where + " (" + std::to_string(n) + ") is not a multiple of the previous index " +
                                 std::to_string(prev),
                             "/odometer_indices/" + std::to_string(k));
        switch (group.family()) {
            case Family::FreeAbelianRank1:
            case Family::InfiniteDihedral: break;
            case Family::FiniteCyclic:
                if (group.param_a() % n)
                    throw InputError(where + " must divide the group order " + std::to_string(group.param_a()),
                                     "/odometer_indices/" + std::to_string(k));
                break;
            default:
                if (n != 1)
                    throw InputError("odometer chains of " + group.name() + " only support index 1",
                                     "/odometer_indices/" + std::to_string(k));
        }
        prev = n;
    }
}

Subgroup SubgroupChain::level(std::size_t k) const {
    if (k == 0) return Subgroup::whole_group(group);
    if (k > indices.size()) throw InputError("level " + std::to_string(k) + " beyond the subgroup chain");
    long long n = indices[k - 1];
    switch (group.family()) {
        case Family::FreeAbelianRank1: return Subgroup::generated(group, {Element{n}});
        case Family::InfiniteDihedral: return Subgroup::generated(group, {Element{n, 0}, Element{0, 1}});
        case Family::FiniteCyclic: return Subgroup::generated(group, {Element{n % group.param_a()}});
        default: return Subgroup::whole_group(group);
    }
}

}  // namespace hk::groups
