#include <algorithm>
#include <set>

#include "hk/hkpipeline.hpp"

namespace hk::hkpipeline {

using exactalg::ChainComplex;
using exactalg::ColimitSequence;
using groups::GroupDesc;
using groups::GResolution;
using groups::TorsionClass;

namespace {

// Z-homology of (F (x)_H k[S]) in degrees 0..depth with explicit bases.
struct LevelComplex {
    ChainComplex chain;
    std::vector<exactalg::HomologyBasis> bases;
    std::map<int, FgAbGroup> groups;
};

LevelComplex level_complex(const GResolution& f, const FiniteGSet& s, std::size_t depth) {
    LevelComplex out;
    out.chain = groups::tensor_complex(f, s.representation());
    for (int n = 0; n <= static_cast<int>(depth); ++n) {
        out.bases.push_back(exactalg::homology_basis(out.chain, n));
        out.groups[n] = out.bases.back().group;
    }
    return out;
}

std::map<int, FgAbGroup> tensored(const std::map<int, FgAbGroup>& t, const CoeffRing& coeffs) {
    std::map<int, FgAbGroup> out;
    for (const auto& [n, g] : t) out[n] = exactalg::tensor_coeffs(g, coeffs);
    return out;
}

void add_into(std::map<int, FgAbGroup>& acc, const std::map<int, FgAbGroup>& t) {
    for (const auto& [n, g] : t) {
        auto it = acc.find(n);
        if (it == acc.end())
            acc[n] = g;
        else
            it->second = exactalg::direct_sum(it->second, g);
    }
}

std::map<int, FgAbGroup> zero_table(std::size_t depth, const CoeffRing& coeffs) {
    std::map<int, FgAbGroup> t;
    for (int n = 0; n <= static_cast<int>(depth); ++n) t[n] = FgAbGroup::zero(coeffs);
    return t;
}

std::map<int, FgAbGroup> class_homology(const TorsionClass& cls, const gsets::FixedSet& fixed, std::size_t depth) {
    if (fixed.points.empty()) return zero_table(depth, {});
    auto f = groups::resolution_for(cls.centralizer.abstract, depth + 1);
    return level_complex(f, fixed.set, depth).groups;
}

// Pullback k[S_{k-1}] -> k[S_k] along a projection of point sets.
IntMatrix pullback(const std::vector<std::size_t>& projection, std::size_t prev_size) {
    IntMatrix m(projection.size(), prev_size);
    for (std::size_t i = 0; i < projection.size(); ++i) m.set(i, projection[i], 1);
    return m;
}

// Follows one class (or the whole group, for the groupoid route) through
// levels 1..T. `piece(k)` returns the fixed set at level k and its projection
// to level k-1.
template <class PieceFn>
ClassSequence follow(const TorsionClass& cls, std::size_t levels, std::size_t depth, std::size_t window,
                     PieceFn piece) {
    ClassSequence seq;
    seq.cls = cls;
    const GResolution f = groups::resolution_for(cls.centralizer.abstract, depth + 1);
    std::vector<LevelComplex> cx;
    std::vector<std::size_t> sizes;
    for (std::size_t k = 1; k <= levels; ++k) {
        auto [set, projection] = piece(k);
        sizes.push_back(set.size);
        seq.fixed_counts.push_back(set.size);
        cx.push_back(level_complex(f, set, depth));
        seq.levels.push_back(cx.back().groups);
        if (k == 1) continue;
        for (int n = 0; n <= static_cast<int>(depth); ++n) {
            IntMatrix phi = pullback(projection, sizes[k - 2]);
            IntMatrix chain_map = exactalg::block_diagonal(phi, f.ranks[static_cast<std::size_t>(n)]);
            seq.connecting[n].push_back(exactalg::induced_map(cx[k - 2].bases[static_cast<std::size_t>(n)],
                                                              cx[k - 1].bases[static_cast<std::size_t>(n)], chain_map));
        }
    }
    for (int n = 0; n <= static_cast<int>(depth); ++n) {
        ColimitSequence s;
        for (const auto& t : seq.levels) s.terms.push_back(t.at(n));
        s.connecting = seq.connecting[n];
        if (levels < 2) {
            ColimitResult r;
            r.pattern = "single_level";
            r.final_term = s.terms.back();
            seq.colimit[n] = r;
        } else {
            seq.colimit[n] = exactalg::colimit_identify(s, std::min(window, levels - 1));
        }
    }
    return seq;
}

void assemble(LevelwiseHomology& out) {
    for (int n = 0; n <= static_cast<int>(out.depth); ++n) {
        bool ok = true;
        AbGroup total;
        std::set<std::string> patterns;
        for (const auto& c : out.classes) {
            const auto& r = c.colimit.at(n);
            ok = ok && r.identified;
            if (r.identified) total = exactalg::direct_sum(total, r.group);
            if (r.pattern != "stationary") patterns.insert(r.pattern);
        }
        std::string pattern = "stationary";
        if (patterns.count("undecided"))
            pattern = "undecided";
        else if (!patterns.empty()) {
            pattern.clear();
            for (const auto& p : patterns) pattern += (pattern.empty() ? "" : "+") + p;
        }
        out.pattern[n] = pattern;
        if (ok) out.colimit[n] = total.tensor(out.coeffs);
    }
    for (std::size_t k = 0; k < out.levels; ++k) {
        HomologyTable t;
        t.coeffs = out.coeffs;
        t.route = out.route;
        t.truncation_level = k + 1;
        for (const auto& c : out.classes) add_into(t.groups, tensored(c.levels[k], out.coeffs));
        out.tables.push_back(std::move(t));
    }
}

TorsionClass identity_class(const GroupDesc& g) {
    TorsionClass c;
    c.representative = g.identity();
    c.order = 1;
    c.centralizer = groups::Subgroup::whole_group(g);
    return c;
}

}  // namespace

HomologyTable groupoid_homology(const FiniteGSet& x, const CoeffRing& coeffs, std::size_t depth) {
    x.validate();
    auto f = groups::resolution_for(x.group, depth + 1);
    HomologyTable t;
    t.coeffs = coeffs;
    t.route = "groupoid";
    t.groups = tensored(level_complex(f, x, depth).groups, coeffs);
    return t;
}

HomologyTable hatted_homology(const FiniteGSet& x, const CoeffRing& coeffs, std::size_t depth) {
    x.validate();
    HomologyTable t;
    t.coeffs = coeffs;
    t.route = "hatted";
    t.groups = zero_table(depth, coeffs);
    for (const auto& piece : gsets::blowup(x).pieces) {
        if (piece.empty) continue;
        add_into(t.groups, tensored(class_homology(piece.cls, piece.fixed, depth), coeffs));
    }
    // direct sums with the zero seed keep the ring; normalise
    for (auto& [n, g] : t.groups) g = exactalg::tensor_coeffs(g, coeffs);
    return t;
}

bool LevelwiseHomology::truncated() const { return colimit.size() != depth + 1; }

std::size_t LevelwiseHomology::twisted_rank() const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i].cls.order == 1) continue;
        const auto& c = classes[i].colimit.at(0);
        r += c.identified ? c.group.rational_rank() : c.final_term.rank;
    }
    return r;
}

LevelwiseHomology groupoid_homology(const OdometerSpec& spec, const CoeffRing& coeffs, std::size_t depth,
                                    std::size_t window) {
    spec.validate();
    if (spec.truncation_level < 1) throw InputError("at least one level is needed", "/truncation_level");
    LevelwiseHomology out;
    out.route = "groupoid";
    out.coeffs = coeffs;
    out.depth = depth;
    out.levels = spec.truncation_level;
    out.window = std::min(window, out.levels > 1 ? out.levels - 1 : 0);
    out.classes.push_back(follow(identity_class(spec.chain.group), out.levels, depth, window, [&](std::size_t k) {
        auto lv = gsets::level_gset(spec, k);
        return std::make_pair(lv.set, lv.projection);
    }));
    assemble(out);
    return out;
}

LevelwiseHomology hatted_homology(const OdometerSpec& spec, const CoeffRing& coeffs, std::size_t depth,
                                  std::size_t window) {
    spec.validate();
    if (spec.truncation_level < 1) throw InputError("at least one level is needed", "/truncation_level");
    LevelwiseHomology out;
    out.route = "hatted";
    out.coeffs = coeffs;
    out.depth = depth;
    out.levels = spec.truncation_level;
    out.window = std::min(window, out.levels > 1 ? out.levels - 1 : 0);
    std::vector<gsets::BlowupLevel> blowups;
    for (std::size_t k = 1; k <= out.levels; ++k) blowups.push_back(gsets::blowup_level(spec, k));
    for (std::size_t c = 0; c < blowups.front().pieces.size(); ++c)
        out.classes.push_back(follow(blowups.front().pieces[c].cls, out.levels, depth, window, [&](std::size_t k) {
            const auto& p = blowups[k - 1].pieces[c];
            return std::make_pair(p.fixed.set, p.projection);
        }));
    assemble(out);
    return out;
}

bool CrosscheckReport::agree() const {
    return std::all_of(rows.begin(), rows.end(), [](const CrosscheckRow& r) { return r.equal; });
}

CrosscheckReport bcr_gh_crosscheck(const gcomplex::GSimplicialComplex& y, const FiniteGSet& x, const CoeffRing& coeffs,
                                   int max_degree) {
    if (max_degree < 0) throw InputError("max_degree must be non-negative");
    CrosscheckReport rep;
    rep.coeffs = coeffs;
    for (std::size_t d = 0; d <= y.dimension(); ++d)
        for (const auto& o : y.orbits(d))
            rep.invertible = rep.invertible && coeffs.inverts_all_primes_of(big(static_cast<long long>(o.stabilizer.order())));
    auto a = hatted_homology(x, coeffs, static_cast<std::size_t>(max_degree));
    auto b = gcomplex::bs_cohomology(y, x, coeffs, -max_degree, max_degree, false);
    for (int n = -max_degree; n <= max_degree; ++n) {
        CrosscheckRow row;
        row.degree = n;
        row.hatted = n >= 0 ? a.groups.at(n) : FgAbGroup::zero(coeffs);
        auto it = b.find(-n);
        row.bs = it == b.end() ? FgAbGroup::zero(coeffs) : exactalg::tensor_coeffs(it->second, coeffs);
        row.equal = row.hatted == row.bs;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::vector<CrosscheckReport> bcr_gh_crosscheck(const gcomplex::GSimplicialComplex& y, const OdometerSpec& spec,
                                                const CoeffRing& coeffs, int max_degree) {
    spec.validate();
    std::vector<CrosscheckReport> out;
    for (std::size_t k = 1; k <= spec.truncation_level; ++k) {
        auto r = bcr_gh_crosscheck(y, gsets::level_gset(spec, k).set, coeffs, max_degree);
        r.level = k;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace hk::hkpipeline
