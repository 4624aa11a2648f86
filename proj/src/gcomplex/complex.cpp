#include <algorithm>
#include <cctype>
#include <set>

#include "hk/gcomplex.hpp"

namespace hk::gcomplex {

using groups::Family;

GSimplicialComplex GSimplicialComplex::build(const GroupDesc& g, const std::vector<Subgroup>& vertex_stabilizers,
                                             const std::vector<std::vector<std::vector<Vertex>>>& simplices,
                                             std::optional<std::vector<std::size_t>> orientation) {
    GSimplicialComplex y;
    y.group_ = g;
    y.vstab_ = vertex_stabilizers;
    if (vertex_stabilizers.empty()) throw InputError("a complex needs at least one vertex orbit", "/vertices");
    for (std::size_t i = 0; i < vertex_stabilizers.size(); ++i) {
        const Subgroup& h = vertex_stabilizers[i];
        if (!(h.parent == g))
            throw InputError("vertex stabilizer is not a subgroup of " + g.name(), "/vertices/" + std::to_string(i));
        if (!h.is_finite())
            throw DomainError("vertex orbit " + std::to_string(i) + " has an infinite stabilizer; only proper complexes are supported");
        auto els = h.elements();
        std::sort(els.begin(), els.end());
        y.vstab_elements_.push_back(std::move(els));
    }
    y.orbits_.emplace_back();
    for (std::size_t i = 0; i < vertex_stabilizers.size(); ++i)
        y.orbits_[0].push_back({Simplex{Vertex{i, g.identity()}}, vertex_stabilizers[i]});
    for (std::size_t d = 1; d <= simplices.size(); ++d) {
        y.orbits_.emplace_back();
        for (std::size_t i = 0; i < simplices[d - 1].size(); ++i) {
            const std::string where = "/simplices/" + std::to_string(d - 1) + "/" + std::to_string(i);
            Simplex s;
            for (const auto& v : simplices[d - 1][i]) {
                if (v.orbit >= vertex_stabilizers.size()) throw InputError("unknown vertex orbit", where);
                if (!g.contains(v.g)) throw InputError(g.format(v.g) + " is not an element of " + g.name(), where);
                s.push_back(y.canonical(v));
            }
            std::sort(s.begin(), s.end());
            if (s.size() != d + 1 || std::adjacent_find(s.begin(), s.end()) != s.end())
                throw InputError("a " + std::to_string(d) + "-simplex needs " + std::to_string(d + 1) + " distinct vertices",
                                 where);
            if (y.locate(s)) throw InputError("simplex orbit listed twice", where);
            auto stab = y.transporters(s, s);
            y.orbits_[d].push_back({s, Subgroup::generated(g, stab)});
        }
        if (y.orbits_[d].empty()) throw InputError("no simplices in dimension " + std::to_string(d), "/simplices");
    }
    for (std::size_t d = 1; d < y.orbits_.size(); ++d)
        for (std::size_t i = 0; i < y.orbits_[d].size(); ++i) {
            const Simplex& s = y.orbits_[d][i].rep;
            for (std::size_t j = 0; j < s.size(); ++j) {
                Simplex face = s;
                face.erase(face.begin() + static_cast<long>(j));
                if (!y.locate(face))
                    throw InputError("a face of this simplex is not a simplex",
                                     "/simplices/" + std::to_string(d - 1) + "/" + std::to_string(i));
            }
        }
    if (orientation && orientation->size() != vertex_stabilizers.size())
        throw InputError("orientation needs one rank per vertex orbit", "/orientation");
    y.orientation_ = std::move(orientation);
    return y;
}

Vertex GSimplicialComplex::canonical(const Vertex& v) const {
    const auto& els = vstab_elements_.at(v.orbit);
    Element best = group_.multiply(v.g, els.front());
    for (const auto& s : els) best = std::min(best, group_.multiply(v.g, s));
    return {v.orbit, best};
}

Vertex GSimplicialComplex::act(const Element& g, const Vertex& v) const {
    return canonical({v.orbit, group_.multiply(g, v.g)});
}

Simplex GSimplicialComplex::act(const Element& g, const Simplex& s) const {
    Simplex out;
    for (const auto& v : s) out.push_back(act(g, v));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Element> GSimplicialComplex::transporters(const Simplex& a, const Simplex& b) const {
    std::vector<Element> out;
    if (a.size() != b.size() || a.empty()) return out;
    const Vertex& a0 = a.front();
    const Element r_inv = group_.inverse(a0.g);
    for (const auto& v : b) {
        if (v.orbit != a0.orbit) continue;
        for (const auto& st : vstab_elements_[a0.orbit]) {
            Element g = group_.multiply(group_.multiply(v.g, st), r_inv);
            if (act(g, a) == b) out.push_back(g);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<std::pair<std::size_t, Element>> GSimplicialComplex::locate(const Simplex& s) const {
    if (s.empty() || s.size() > orbits_.size()) return std::nullopt;
    const auto& level = orbits_[s.size() - 1];
    for (std::size_t i = 0; i < level.size(); ++i) {
        auto t = transporters(level[i].rep, s);
        if (!t.empty()) return std::make_pair(i, t.front());
    }
    return std::nullopt;
}

StructureReport check_structure(const GSimplicialComplex& y) {
    StructureReport r;
    const GroupDesc& g = y.group();
    for (std::size_t d = 1; d <= y.dimension(); ++d)
        for (std::size_t i = 0; i < y.orbits(d).size(); ++i) {
            const auto& o = y.orbits(d)[i];
            for (const auto& h : o.stabilizer.elements())
                for (const auto& v : o.rep)
                    if (!(y.act(h, v) == v)) {
                        if (r.type_preserving)
                            r.witnesses.push_back(g.format(h) + " stabilizes " + std::to_string(d) +
                                                  "-simplex orbit " + std::to_string(i) + " but moves a vertex");
                        r.type_preserving = false;
                    }
            std::set<std::size_t> seen;
            for (const auto& v : o.rep)
                if (!seen.insert(v.orbit).second && r.orientable) {
                    r.orientable = false;
                    r.witnesses.push_back(std::to_string(d) + "-simplex orbit " + std::to_string(i) +
                                          " meets vertex orbit " + std::to_string(v.orbit) + " twice");
                }
        }
    if (!r.orientable) return r;
    std::vector<std::size_t> ranks(y.vertex_orbit_count());
    for (std::size_t i = 0; i < ranks.size(); ++i) ranks[i] = i;
    if (const auto& given = y.orientation()) {
        bool total = true;
        for (std::size_t d = 1; d <= y.dimension(); ++d)
            for (const auto& o : y.orbits(d)) {
                std::set<std::size_t> rk;
                for (const auto& v : o.rep) rk.insert((*given)[v.orbit]);
                total = total && rk.size() == o.rep.size();
            }
        if (total) ranks = *given;
    }
    r.orientation = ranks;
    return r;
}

Simplex oriented(const Simplex& s, const std::vector<std::size_t>& ranks) {
    Simplex out = s;
    std::stable_sort(out.begin(), out.end(),
                     [&](const Vertex& a, const Vertex& b) { return ranks.at(a.orbit) < ranks.at(b.orbit); });
    return out;
}

GSimplicialComplex barycentric_subdivision(const GSimplicialComplex& y) {
    const GroupDesc& g = y.group();
    // new vertex orbits: one per simplex orbit, in order of dimension
    std::vector<std::vector<std::size_t>> index(y.dimension() + 1);
    std::vector<Subgroup> stabs;
    for (std::size_t d = 0; d <= y.dimension(); ++d)
        for (const auto& o : y.orbits(d)) {
            index[d].push_back(stabs.size());
            stabs.push_back(o.stabilizer);
        }
    auto vertex_of = [&](const Simplex& face) {
        auto loc = y.locate(face);
        if (!loc) throw DomainError("subdivision met a missing face");
        return Vertex{index[face.size() - 1][loc->first], loc->second};
    };
    std::vector<std::vector<std::vector<Vertex>>> simplices(y.dimension());
    for (std::size_t d = 0; d <= y.dimension(); ++d)
        for (const auto& top : y.orbits(d)) {
            const Simplex& t = top.rep;
            const std::size_t n = t.size();
            const unsigned full = (1u << n) - 1;
            auto subset = [&](unsigned mask) {
                Simplex s;
                for (std::size_t b = 0; b < n; ++b)
                    if (mask >> b & 1u) s.push_back(t[b]);
                return s;
            };
            // chains S_0 < ... < S_k = t, built downward from the top
            std::vector<std::vector<unsigned>> chains;
            std::vector<unsigned> cur{full};
            auto rec = [&](auto&& self) -> void {
                chains.push_back(cur);
                unsigned last = cur.back();
                for (unsigned m = (last - 1) & last; m != 0; m = (m - 1) & last) {
                    cur.push_back(m);
                    self(self);
                    cur.pop_back();
                }
            };
            rec(rec);
            check_budget(chains.size(), "subdivision chains");
            const auto stab = top.stabilizer.elements();
            std::set<Simplex> seen;
            for (const auto& c : chains) {
                if (c.size() < 2) continue;
                Simplex verts;
                for (auto m : c) verts.push_back(vertex_of(subset(m)));
                std::vector<Simplex> images;
                for (const auto& h : stab) {
                    Simplex img;
                    for (auto m : c) img.push_back(vertex_of(y.act(h, subset(m))));
                    images.push_back(img);
                }
                // compare canonical forms through the new stabilizers
                std::vector<Simplex> keys;
                for (const auto& img : images) {
                    Simplex k;
                    for (const auto& v : img) {
                        const auto els = stabs[v.orbit].elements();
                        Element best = g.multiply(v.g, els.front());
                        for (const auto& s : els) best = std::min(best, g.multiply(v.g, s));
                        k.push_back({v.orbit, best});
                    }
                    std::sort(k.begin(), k.end());
                    keys.push_back(k);
                }
                if (std::any_of(keys.begin(), keys.end(), [&](const Simplex& k) { return seen.count(k) > 0; }))
                    continue;
                seen.insert(keys.begin(), keys.end());
                simplices[c.size() - 2].push_back(verts);
            }
        }
    while (!simplices.empty() && simplices.back().empty()) simplices.pop_back();
    std::vector<std::size_t> ranks(stabs.size());
    for (std::size_t i = 0; i < ranks.size(); ++i) ranks[i] = i;
    return GSimplicialComplex::build(g, stabs, simplices, ranks);
}

GSimplicialComplex point_complex(const GroupDesc& g) {
    if (!g.is_finite()) throw InputError("a point is a proper " + g.name() + "-complex only for finite groups");
    return GSimplicialComplex::build(g, {Subgroup::whole_group(g)}, {});
}

GSimplicialComplex tree_complex(const GroupDesc& g) {
    Element a, b;
    if (g.family() == Family::InfiniteDihedral) {
        a = {0, 1};
        b = {1, 1};
    } else if (g.family() == Family::Amalgam) {
        a = {0, 1};
        b = {1, 1};
    } else {
        throw InputError("tree presets need the infinite dihedral group or an amalgam");
    }
    Subgroup sa = Subgroup::generated(g, {a}), sb = Subgroup::generated(g, {b});
    return GSimplicialComplex::build(g, {sa, sb}, {{{Vertex{0, g.identity()}, Vertex{1, g.identity()}}}});
}

GSimplicialComplex full_simplex(std::size_t n) {
    GroupDesc g = GroupDesc::trivial();
    std::vector<Subgroup> stabs(n + 1, Subgroup::whole_group(g));
    std::vector<std::vector<std::vector<Vertex>>> simplices(n);
    check_budget(std::size_t{1} << std::min<std::size_t>(n + 1, 40), "full simplex faces");
    for (unsigned mask = 1; mask < (1u << (n + 1)); ++mask) {
        std::vector<Vertex> s;
        for (std::size_t b = 0; b <= n; ++b)
            if (mask >> b & 1u) s.push_back({b, {}});
        if (s.size() >= 2) simplices[s.size() - 2].push_back(s);
    }
    return GSimplicialComplex::build(g, stabs, simplices);
}

GSimplicialComplex z_line() {
    GroupDesc z = GroupDesc::integers();
    return GSimplicialComplex::build(z, {Subgroup::generated(z, {})}, {{{Vertex{0, {0}}, Vertex{0, {1}}}}});
}

GSimplicialComplex preset(const std::string& name, const GroupDesc& g) {
    if (name == "point") return point_complex(g);
    if (name == "dihedral_tree") {
        if (g.family() != Family::InfiniteDihedral) throw InputError("dihedral_tree needs the infinite dihedral group");
        return tree_complex(g);
    }
    if (name == "amalgam_tree") return tree_complex(g);
    if (name == "z_line") {
        if (g.family() != Family::FreeAbelianRank1) throw InputError("z_line needs the group Z");
        return z_line();
    }
    const std::string prefix = "full_simplex(";
    if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size() + 1 && name.back() == ')') {
        if (g.family() != Family::Trivial) throw InputError("full_simplex needs the trivial group");
        std::string digits = name.substr(prefix.size(), name.size() - prefix.size() - 1);
        if (digits.empty() || digits.size() > 2 || !std::all_of(digits.begin(), digits.end(), ::isdigit))
            throw InputError("bad full_simplex size '" + digits + "'");
        return full_simplex(std::stoul(digits));
    }
    throw InputError("unknown complex preset '" + name + "'");
}

}  // namespace hk::gcomplex
