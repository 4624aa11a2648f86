#include "hk/json_io.hpp"

#include <utility>

namespace hk::json_io {

using exactalg::AbGroup;
using exactalg::CoeffRing;
using exactalg::FgAbGroup;
using exactalg::IntMatrix;
using groups::Element;
using groups::Family;
using groups::GroupDesc;

const json& field(const json& j, const std::string& key, const std::string& ptr) {
    if (!j.is_object()) throw InputError("expected an object", ptr);
    auto it = j.find(key);
    if (it == j.end()) throw InputError("missing field \"" + key + "\"", ptr + "/" + key);
    return *it;
}

long long int_from_json(const json& j, const std::string& ptr) {
    if (!j.is_number_integer()) throw InputError("expected an integer", ptr);
    return j.get<long long>();
}

std::size_t count_from_json(const json& j, const std::string& ptr) {
    const long long v = int_from_json(j, ptr);
    if (v < 0) throw InputError("expected a non-negative integer", ptr);
    return static_cast<std::size_t>(v);
}

namespace {

const json& array_at(const json& j, const std::string& ptr) {
    if (!j.is_array()) throw InputError("expected an array", ptr);
    return j;
}

std::string at(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

std::vector<long> primes_from_json(const json& j, const std::string& ptr) {
    std::vector<long> out;
    for (std::size_t i = 0; i < array_at(j, ptr).size(); ++i) {
        const long long p = int_from_json(j[i], at(ptr, i));
        if (!is_prime(static_cast<long>(p))) throw InputError(std::to_string(p) + " is not prime", at(ptr, i));
        out.push_back(static_cast<long>(p));
    }
    if (out.empty()) throw InputError("at least one prime is needed", ptr);
    return out;
}

}  // namespace

json to_json(const BigInt& v) {
    if (v.fits_slong_p()) return static_cast<long long>(v.get_si());
    return v.get_str();
}

BigInt bigint_from_json(const json& j, const std::string& ptr) {
    if (j.is_number_integer()) return big(j.get<long long>());
    if (j.is_string()) {
        BigInt v;
        if (v.set_str(j.get<std::string>(), 10) == 0) return v;
    }
    throw InputError("expected an integer", ptr);
}

json to_json(const CoeffRing& r) { return r.name(); }

CoeffRing coeffs_from_json(const json& j, const std::string& ptr) {
    if (!j.is_string()) throw InputError("expected a coefficient ring such as \"Z\", \"Q\" or \"Z[1/2]\"", ptr);
    try {
        return CoeffRing::parse(j.get<std::string>());
    } catch (const InputError& e) {
        throw InputError(e.what(), ptr);
    }
}

json to_json(const FgAbGroup& g) {
    json t = json::array();
    for (const auto& d : g.torsion) t.push_back(to_json(d));
    json out{{"rank", g.rank}, {"torsion", t}, {"ring", g.ring.name()}, {"display", g.to_string()}};
    if (g.ring.kind == CoeffRing::Kind::IntegersInverted) out["inverted_primes"] = g.ring.primes;
    return out;
}

FgAbGroup fg_from_json(const json& j, const std::string& ptr) {
    const std::size_t rank = count_from_json(field(j, "rank", ptr), ptr + "/rank");
    std::vector<BigInt> diag;
    if (j.contains("torsion"))
        for (std::size_t i = 0; i < array_at(j["torsion"], ptr + "/torsion").size(); ++i) {
            BigInt d = bigint_from_json(j["torsion"][i], at(ptr + "/torsion", i));
            if (d < 2) throw InputError("torsion orders must be at least 2", at(ptr + "/torsion", i));
            diag.push_back(d);
        }
    CoeffRing r;
    if (j.contains("ring"))
        r = coeffs_from_json(j["ring"], ptr + "/ring");
    else if (j.contains("inverted_primes"))
        r = CoeffRing::inverted(primes_from_json(j["inverted_primes"], ptr + "/inverted_primes"));
    return FgAbGroup::make(rank, diag, r);
}

json to_json(const AbGroup& g) {
    json free = json::array();
    for (const auto& [loc, n] : g.free) {
        json s{{"rank", n}};
        if (loc.all)
            s["ring"] = "Q";
        else if (loc.primes.empty())
            s["ring"] = "Z";
        else {
            s["ring"] = CoeffRing::inverted(loc.primes).name();
            s["inverted_primes"] = loc.primes;
        }
        free.push_back(s);
    }
    json t = json::array();
    for (const auto& d : g.torsion) t.push_back(to_json(d));
    return {{"free", free}, {"torsion", t}, {"rational_rank", g.rational_rank()}, {"display", g.to_string()}};
}

AbGroup ab_from_json(const json& j, const std::string& ptr) {
    AbGroup g;
    const json& free = array_at(field(j, "free", ptr), ptr + "/free");
    for (std::size_t i = 0; i < free.size(); ++i) {
        const std::string p = at(ptr + "/free", i);
        const std::size_t n = count_from_json(field(free[i], "rank", p), p + "/rank");
        AbGroup::Localization loc;
        const CoeffRing r = coeffs_from_json(field(free[i], "ring", p), p + "/ring");
        if (r.kind == CoeffRing::Kind::Rationals)
            loc.all = true;
        else
            loc.primes = r.primes;
        if (n > 0) g.free[loc] += n;
    }
    if (j.contains("torsion")) {
        std::vector<BigInt> t;
        for (std::size_t i = 0; i < array_at(j["torsion"], ptr + "/torsion").size(); ++i)
            t.push_back(bigint_from_json(j["torsion"][i], at(ptr + "/torsion", i)));
        g.torsion = exactalg::invariant_factors(t);
    }
    return g;
}

json to_json(const IntMatrix& m) {
    json e = json::array();
    for (const auto& [k, v] : m.entries()) e.push_back({k.first, k.second, to_json(v)});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", e}};
}

IntMatrix matrix_from_json(const json& j, const std::string& ptr) {
    IntMatrix m(count_from_json(field(j, "rows", ptr), ptr + "/rows"),
                count_from_json(field(j, "cols", ptr), ptr + "/cols"));
    const json& e = array_at(field(j, "entries", ptr), ptr + "/entries");
    for (std::size_t i = 0; i < e.size(); ++i) {
        const std::string p = at(ptr + "/entries", i);
        if (!e[i].is_array() || e[i].size() != 3) throw InputError("expected [row, col, value]", p);
        const std::size_t r = count_from_json(e[i][0], p + "/0"), c = count_from_json(e[i][1], p + "/1");
        if (r >= m.rows() || c >= m.cols()) throw InputError("entry out of range", p);
        if (m.at(r, c) != 0) throw InputError("duplicate entry", p);
        BigInt v = bigint_from_json(e[i][2], p + "/2");
        if (v == 0) throw InputError("stored zero entry", p + "/2");
        m.set(r, c, v);
    }
    return m;
}

json to_json(const GroupDesc& g) {
    switch (g.family()) {
        case Family::Trivial: return {{"family", "trivial"}};
        case Family::FiniteCyclic: return {{"family", "finite_cyclic"}, {"m", g.param_a()}};
        case Family::FreeAbelianRank1: return {{"family", "integers"}};
        case Family::InfiniteDihedral: return {{"family", "infinite_dihedral"}};
        case Family::Amalgam: return {{"family", "amalgam"}, {"a", g.param_a()}, {"b", g.param_b()}};
        case Family::FinitePermutation:
            return {{"family", "finite_permutation"}, {"degree", g.param_a()}, {"generators", g.generators()}};
    }
    return {};
}

GroupDesc group_from_json(const json& j, const std::string& ptr) {
    const json& f = field(j, "family", ptr);
    if (!f.is_string()) throw InputError("family must be a string", ptr + "/family");
    const std::string fam = f.get<std::string>();
    try {
        if (fam == "trivial") return GroupDesc::trivial();
        if (fam == "finite_cyclic" || fam == "cyclic") {
            const long long m = int_from_json(field(j, "m", ptr), ptr + "/m");
            if (m < 1) throw InputError("m must be positive", ptr + "/m");
            return GroupDesc::cyclic(m);
        }
        if (fam == "integers") return GroupDesc::integers();
        if (fam == "infinite_dihedral") return GroupDesc::infinite_dihedral();
        if (fam == "amalgam")
            return GroupDesc::amalgam(int_from_json(field(j, "a", ptr), ptr + "/a"),
                                      int_from_json(field(j, "b", ptr), ptr + "/b"));
        if (fam == "finite_permutation") {
            const std::size_t degree = count_from_json(field(j, "degree", ptr), ptr + "/degree");
            const json& gens = array_at(field(j, "generators", ptr), ptr + "/generators");
            std::vector<std::vector<long long>> gv;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                std::vector<long long> p;
                for (std::size_t k = 0; k < array_at(gens[i], at(ptr + "/generators", i)).size(); ++k)
                    p.push_back(int_from_json(gens[i][k], at(at(ptr + "/generators", i), k)));
                gv.push_back(std::move(p));
            }
            return GroupDesc::permutation(degree, gv);
        }
    } catch (const InputError& e) {
        if (!e.pointer().empty()) throw;
        throw InputError(e.what(), ptr);
    }
    throw InputError("unknown group family \"" + fam + "\"", ptr + "/family");
}

Element element_from_json(const GroupDesc& g, const json& j, const std::string& ptr) {
    Element e;
    for (std::size_t i = 0; i < array_at(j, ptr).size(); ++i) e.push_back(int_from_json(j[i], at(ptr, i)));
    if (!g.contains(e)) throw InputError("not a canonical element of " + g.name(), ptr);
    return e;
}

json to_json(const gsets::FiniteGSet& x) {
    return {{"group", to_json(x.group)}, {"size", x.size}, {"action", x.gen_action}};
}

gsets::FiniteGSet gset_from_json(const json& j, const std::string& ptr) {
    GroupDesc g = group_from_json(field(j, "group", ptr), ptr + "/group");
    const std::size_t n = count_from_json(field(j, "size", ptr), ptr + "/size");
    if (!j.contains("action")) return gsets::FiniteGSet::trivial(g, n);
    const json& a = array_at(j["action"], ptr + "/action");
    if (a.size() != g.generators().size())
        throw InputError("one permutation per generator is needed", ptr + "/action");
    std::vector<std::vector<std::size_t>> perms;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<std::size_t> p;
        for (std::size_t k = 0; k < array_at(a[i], at(ptr + "/action", i)).size(); ++k)
            p.push_back(count_from_json(a[i][k], at(at(ptr + "/action", i), k)));
        std::vector<char> hit(n, 0);
        for (std::size_t x : p)
            if (p.size() != n || x >= n || std::exchange(hit[x], 1))
                throw InputError("generator " + std::to_string(i) + " must permute 0.." + std::to_string(n - 1),
                                 at(ptr + "/action", i));
        perms.push_back(std::move(p));
    }
    try {
        return gsets::FiniteGSet::make(g, n, perms);
    } catch (const InputError& e) {
        throw InputError(e.what(), e.pointer().empty() ? ptr + "/action" : ptr + "/action" + e.pointer());
    }
}

json to_json(const gsets::OdometerSpec& s) {
    return {{"group", to_json(s.chain.group)},
            {"odometer_indices", s.chain.indices},
            {"truncation_level", s.truncation_level}};
}

gsets::OdometerSpec odometer_from_json(const json& j, const std::string& ptr) {
    gsets::OdometerSpec s;
    s.chain.group = group_from_json(field(j, "group", ptr), ptr + "/group");
    const json& idx = array_at(field(j, "odometer_indices", ptr), ptr + "/odometer_indices");
    for (std::size_t i = 0; i < idx.size(); ++i)
        s.chain.indices.push_back(int_from_json(idx[i], at(ptr + "/odometer_indices", i)));
    s.truncation_level = j.contains("truncation_level")
                             ? count_from_json(j["truncation_level"], ptr + "/truncation_level")
                             : s.chain.indices.size();
    if (s.truncation_level < 1) throw InputError("truncation_level must be at least 1", ptr + "/truncation_level");
    if (s.truncation_level > s.chain.indices.size())
        throw InputError("truncation_level exceeds the number of indices", ptr + "/truncation_level");
    try {
        s.validate();
    } catch (const InputError& e) {
        throw InputError(e.what(), ptr + "/odometer_indices");
    }
    return s;
}

json to_json(const gcomplex::GSimplicialComplex& y) {
    json verts = json::array();
    for (std::size_t v = 0; v < y.vertex_orbit_count(); ++v)
        verts.push_back({{"stabilizer", y.vertex_stabilizer(v).gen_images}});
    json simp = json::array();
    for (std::size_t d = 1; d <= y.dimension(); ++d)
        for (const auto& o : y.orbits(d)) {
            json vs = json::array();
            for (const auto& v : o.rep) vs.push_back({v.orbit, v.g});
            simp.push_back({{"dim", d}, {"vertices", vs}});
        }
    json out{{"group", to_json(y.group())}, {"vertices", verts}, {"simplices", simp}};
    if (y.orientation()) out["orientation"] = *y.orientation();
    return out;
}

gcomplex::GSimplicialComplex complex_from_json(const json& j, const std::string& ptr, const GroupDesc* default_group) {
    if (j.is_object() && j.contains("preset")) {
        if (!j["preset"].is_string()) throw InputError("preset must be a string", ptr + "/preset");
        GroupDesc g = j.contains("group") ? group_from_json(j["group"], ptr + "/group")
                      : default_group   ? *default_group
                                        : throw InputError("a group is needed for the preset", ptr + "/group");
        try {
            return gcomplex::preset(j["preset"].get<std::string>(), g);
        } catch (const InputError& e) {
            throw InputError(e.what(), ptr + "/preset");
        }
    }
    GroupDesc g = group_from_json(field(j, "group", ptr), ptr + "/group");
    const json& vs = array_at(field(j, "vertices", ptr), ptr + "/vertices");
    std::vector<groups::Subgroup> stabs;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const std::string p = at(ptr + "/vertices", i) + "/stabilizer";
        const json& s = array_at(field(vs[i], "stabilizer", at(ptr + "/vertices", i)), p);
        std::vector<Element> gens;
        for (std::size_t k = 0; k < s.size(); ++k) gens.push_back(element_from_json(g, s[k], at(p, k)));
        stabs.push_back(groups::Subgroup::generated(g, gens));
        if (!stabs.back().is_finite()) throw InputError("vertex stabilizers must be finite", p);
    }
    std::vector<std::vector<std::vector<gcomplex::Vertex>>> simplices;
    if (j.contains("simplices")) {
        const json& ss = array_at(j["simplices"], ptr + "/simplices");
        for (std::size_t i = 0; i < ss.size(); ++i) {
            const std::string p = at(ptr + "/simplices", i);
            const std::size_t d = count_from_json(field(ss[i], "dim", p), p + "/dim");
            if (d < 1) throw InputError("simplices have dimension at least 1", p + "/dim");
            const json& sv = array_at(field(ss[i], "vertices", p), p + "/vertices");
            std::vector<gcomplex::Vertex> s;
            for (std::size_t k = 0; k < sv.size(); ++k) {
                const std::string q = at(p + "/vertices", k);
                if (!sv[k].is_array() || sv[k].size() != 2) throw InputError("expected [orbit, element]", q);
                const std::size_t o = count_from_json(sv[k][0], q + "/0");
                if (o >= stabs.size()) throw InputError("no such vertex orbit", q + "/0");
                s.push_back({o, element_from_json(g, sv[k][1], q + "/1")});
            }
            if (simplices.size() < d) simplices.resize(d);
            simplices[d - 1].push_back(std::move(s));
        }
    }
    std::optional<std::vector<std::size_t>> orientation;
    if (j.contains("orientation")) {
        std::vector<std::size_t> o;
        for (std::size_t i = 0; i < array_at(j["orientation"], ptr + "/orientation").size(); ++i)
            o.push_back(count_from_json(j["orientation"][i], at(ptr + "/orientation", i)));
        orientation = o;
    }
    try {
        return gcomplex::GSimplicialComplex::build(g, stabs, simplices, orientation);
    } catch (const InputError& e) {
        throw InputError(e.what(), ptr + e.pointer());
    }
}

json to_json(const hkpipeline::KTheoryInput& k) {
    auto side = [](const std::vector<hkpipeline::KSummand>& v) {
        json a = json::array();
        for (const auto& s : v) switch (s.kind) {
                case hkpipeline::KSummand::Kind::Free: a.push_back({{"Z", s.count}}); break;
                case hkpipeline::KSummand::Kind::Cyclic: a.push_back({{"Zmod", to_json(s.order)}}); break;
                case hkpipeline::KSummand::Kind::Localized:
                    if (s.count == 1)
                        a.push_back({{"Zinv", s.primes}});
                    else
                        a.push_back({{"Zinv", s.primes}, {"count", s.count}});
                    break;
            }
        return a;
    };
    return {{"K0", side(k.k0)}, {"K1", side(k.k1)}};
}

hkpipeline::KTheoryInput ktheory_from_json(const json& j, const std::string& ptr) {
    using hkpipeline::KSummand;
    auto side = [&](const std::string& key) {
        std::vector<KSummand> out;
        const std::string p = ptr + "/" + key;
        const json& a = array_at(field(j, key, ptr), p);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::string q = at(p, i);
            KSummand s;
            if (!a[i].is_object()) throw InputError("expected a summand object", q);
            if (a[i].contains("Z")) {
                s.kind = KSummand::Kind::Free;
                s.count = count_from_json(a[i]["Z"], q + "/Z");
            } else if (a[i].contains("Zmod")) {
                s.kind = KSummand::Kind::Cyclic;
                s.order = bigint_from_json(a[i]["Zmod"], q + "/Zmod");
            } else if (a[i].contains("Zinv")) {
                s.kind = KSummand::Kind::Localized;
                s.primes = primes_from_json(a[i]["Zinv"], q + "/Zinv");
                if (a[i].contains("count")) s.count = count_from_json(a[i]["count"], q + "/count");
            } else {
                throw InputError("summand must be one of Z, Zmod, Zinv", q);
            }
            out.push_back(std::move(s));
        }
        return out;
    };
    hkpipeline::KTheoryInput k;
    k.k0 = side("K0");
    k.k1 = side("K1");
    try {
        k.validate();
    } catch (const InputError& e) {
        throw InputError(e.what(), ptr + e.pointer());
    }
    return k;
}

namespace {

int degree_key(const std::string& s, const std::string& ptr) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError("expected an integer key", ptr);
}

std::vector<std::size_t> dims_from_json(const json& j, const std::string& ptr) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < array_at(j, ptr).size(); ++i) out.push_back(count_from_json(j[i], at(ptr, i)));
    return out;
}

}  // namespace

hkpipeline::E2Page e2_from_json(const json& j, const std::string& ptr) {
    if (j.contains("rows")) {
        if (!j["rows"].is_object()) throw InputError("rows must map q to a dimension list", ptr + "/rows");
        std::map<int, std::vector<std::size_t>> rows;
        for (const auto& [k, v] : j["rows"].items()) {
            const std::string p = ptr + "/rows/" + k;
            rows[degree_key(k, p)] = dims_from_json(v, p);
        }
        try {
            return hkpipeline::e2_page(rows);
        } catch (const InputError& e) {
            throw InputError(e.what(), ptr + e.pointer());
        }
    }
    auto h = dims_from_json(field(j, "group_homology", ptr), ptr + "/group_homology");
    const json& c = field(j, "cohomology", ptr);
    if (!c.is_object()) throw InputError("cohomology must map degrees to dimensions", ptr + "/cohomology");
    std::map<int, std::size_t> cd;
    for (const auto& [k, v] : c.items()) {
        const std::string p = ptr + "/cohomology/" + k;
        const int deg = degree_key(k, p);
        if (deg < 0) throw InputError("cohomology degrees must be non-negative", p);
        cd[deg] = count_from_json(v, p);
    }
    return hkpipeline::e2_page(h, cd);
}

json to_json(const hkpipeline::E2Page& p) {
    json rows = json::object();
    for (int q : p.rows()) {
        json r = json::array();
        for (int i = 0; i <= p.max_p(); ++i) r.push_back(p.at(i, q));
        rows[std::to_string(q)] = r;
    }
    return {{"rows", rows}};
}

json to_json(const std::map<int, FgAbGroup>& table) {
    json out = json::array();
    for (const auto& [n, g] : table) out.push_back({{"degree", n}, {"group", to_json(g)}});
    return out;
}

json to_json(const std::map<int, AbGroup>& table) {
    json out = json::array();
    for (const auto& [n, g] : table) out.push_back({{"degree", n}, {"group", to_json(g)}});
    return out;
}

}  // namespace hk::json_io
