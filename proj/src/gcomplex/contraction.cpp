#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

#include "hk/gcomplex.hpp"

namespace hk::gcomplex {

namespace {

using Mask = std::uint64_t;
using Chain = std::vector<Mask>;
// basis element (chain id, pair id); chain id -1 is the augmentation D_{-1}
using Key = std::pair<long, std::size_t>;
using Vec = std::map<Key, long>;

void accumulate(Vec& v, const Key& k, long c) {
    if ((v[k] += c) == 0) v.erase(k);
}

struct Subdivision {
    std::vector<std::vector<std::size_t>> act;  // act[g][vertex]
    std::vector<std::size_t> alpha;             // least vertex fixed by g
    std::vector<Chain> chains;
    std::map<Chain, long> id;
    std::vector<std::vector<bool>> in_stab;  // in_stab[chain][g]

    Mask move(std::size_t gi, Mask m) const {
        Mask out = 0;
        for (std::size_t v = 0; v < 64; ++v)
            if (m >> v & 1u) out |= Mask{1} << act[gi][v];
        return out;
    }
};

// Subgroups of a finite group as sorted element-index sets, ordered by
// (order, elements).
std::vector<std::vector<std::size_t>> all_subgroups(const GroupDesc& g) {
    const auto& els = g.elements();
    const std::size_t n = els.size();
    std::vector<std::vector<std::size_t>> mul(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) mul[a][b] = g.index_of(g.multiply(els[a], els[b]));
    auto closure = [&](std::vector<std::size_t> gens) {
        std::set<std::size_t> s{g.index_of(g.identity())};
        std::vector<std::size_t> todo(s.begin(), s.end());
        while (!todo.empty()) {
            std::size_t a = todo.back();
            todo.pop_back();
            for (auto b : gens)
                if (s.insert(mul[a][b]).second) todo.push_back(mul[a][b]);
        }
        return std::vector<std::size_t>(s.begin(), s.end());
    };
    std::set<std::vector<std::size_t>> found{closure({})};
    std::vector<std::vector<std::size_t>> frontier(found.begin(), found.end());
    while (!frontier.empty()) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& h : frontier)
            for (std::size_t a = 0; a < n; ++a) {
                if (std::binary_search(h.begin(), h.end(), a)) continue;
                auto gens = h;
                gens.push_back(a);
                auto k = closure(gens);
                if (found.insert(k).second) next.push_back(k);
            }
        check_budget(found.size(), "subgroup enumeration");
        frontier = std::move(next);
    }
    std::vector<std::vector<std::size_t>> out(found.begin(), found.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

}  // namespace

ContractionReport verify_contraction(const gsets::FiniteGSet& x, std::size_t dim_cap, ContractionOperator op) {
    const GroupDesc& g = x.group;
    if (!g.is_finite()) throw InputError("the contraction check needs a finite group");
    const auto& els = g.elements();
    const std::size_t n = els.size();
    ContractionReport report;

    // V_0 = disjoint union of G/H, cosets cH as sorted element-index sets
    std::vector<std::vector<std::size_t>> cosets;
    for (const auto& h : all_subgroups(g)) {
        std::set<std::vector<std::size_t>> cs;
        for (std::size_t c = 0; c < n; ++c) {
            std::vector<std::size_t> s;
            for (auto e : h) s.push_back(g.index_of(g.multiply(els[c], els[e])));
            std::sort(s.begin(), s.end());
            cs.insert(s);
        }
        // sorted by least element, which std::set order already gives
        cosets.insert(cosets.end(), cs.begin(), cs.end());
    }
    report.vertices = cosets.size();
    if (cosets.size() > 63) throw BudgetError("too many vertices for the contraction check");

    Subdivision sd;
    std::map<std::vector<std::size_t>, std::size_t> vertex_id;
    for (std::size_t v = 0; v < cosets.size(); ++v) vertex_id[cosets[v]] = v;
    sd.act.assign(n, std::vector<std::size_t>(cosets.size()));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t v = 0; v < cosets.size(); ++v) {
            std::vector<std::size_t> s;
            for (auto e : cosets[v]) s.push_back(g.index_of(g.multiply(els[a], els[e])));
            std::sort(s.begin(), s.end());
            sd.act[a][v] = vertex_id.at(s);
        }
    sd.alpha.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        std::size_t v = 0;
        while (sd.act[a][v] != v) ++v;  // the coset G itself is fixed by everything
        sd.alpha[a] = v;
    }

    // chains of nonempty subsets of V_0 of length <= dim_cap + 1
    const std::size_t nv = cosets.size();
    const Mask all = nv == 64 ? ~Mask{0} : (Mask{1} << nv) - 1;
    Chain cur;
    auto rec = [&](auto&& self) -> void {
        if (!cur.empty()) {
            sd.id[cur] = static_cast<long>(sd.chains.size());
            sd.chains.push_back(cur);
            check_budget(sd.chains.size(), "contraction chains");
        }
        if (cur.size() == dim_cap + 1) return;
        const Mask last = cur.empty() ? 0 : cur.back();
        const Mask rest = all & ~last;
        for (Mask add = rest; add != 0; add = (add - 1) & rest) {
            cur.push_back(last | add);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    report.chains = sd.chains.size();
    for (const auto& c : sd.chains) {
        std::vector<bool> st(n);
        for (std::size_t a = 0; a < n; ++a) {
            bool ok = true;
            for (auto m : c) ok = ok && sd.move(a, m) == m;
            st[a] = ok;
        }
        sd.in_stab.push_back(std::move(st));
    }

    // X-hat: pairs (p, g) with g p = p
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t p = 0; p < x.size; ++p)
        for (std::size_t a = 0; a < n; ++a)
            if (x.act(els[a], p) == p) pairs.emplace_back(p, a);

    auto dim = [&](long c) { return c < 0 ? -1L : static_cast<long>(sd.chains[static_cast<std::size_t>(c)].size()) - 1; };
    auto boundary = [&](const Key& k, Vec& out) {
        if (k.first < 0) return;
        const Chain& c = sd.chains[static_cast<std::size_t>(k.first)];
        if (c.size() == 1) {
            accumulate(out, {-1, k.second}, 1);
            return;
        }
        for (std::size_t j = 0; j < c.size(); ++j) {
            Chain f = c;
            f.erase(f.begin() + static_cast<long>(j));
            accumulate(out, {sd.id.at(f), k.second}, j % 2 ? -1 : 1);
        }
    };
    std::size_t membership_failures = 0;
    // Adds coef * (chain, q) to out; false when the chain is longer than the cap.
    auto emit = [&](const Chain& e, std::size_t q, long coef, Vec& out) {
        if (e.size() > dim_cap + 1) return false;
        const long eid = sd.id.at(e);
        if (!sd.in_stab[static_cast<std::size_t>(eid)][pairs[q].second]) ++membership_failures;
        accumulate(out, {eid, q}, coef);
        return true;
    };
    // Insert sigma_{i-1} u {alpha} wherever it fits strictly, with sign (-1)^i.
    auto single_insertion = [&](const Chain& c, Mask bit, std::size_t q, Vec& out) {
        for (std::size_t i = 0; i <= c.size(); ++i) {
            const Mask prev = i == 0 ? 0 : c[i - 1];
            if (prev & bit) continue;
            const Mask ins = prev | bit;
            if (i < c.size() && !((ins & c[i]) == ins && ins != c[i])) continue;
            Chain e = c;
            e.insert(e.begin() + static_cast<long>(i), ins);
            if (!emit(e, q, i % 2 ? -1 : 1, out)) return false;
        }
        return true;
    };
    // s = c f - P: P is the prism from the identity to f(S) = S u {alpha},
    // c cones the image off at {alpha}. Degenerate chains are dropped.
    auto cone = [&](const Chain& c, Mask bit, std::size_t q, Vec& out) {
        if (c.empty()) return emit(Chain{bit}, q, 1, out);
        Chain f;
        bool degenerate = false;
        for (auto m : c) {
            if (!f.empty() && f.back() == (m | bit)) degenerate = true;
            f.push_back(m | bit);
        }
        if (!degenerate && f.front() != bit) {
            Chain e{bit};
            e.insert(e.end(), f.begin(), f.end());
            if (!emit(e, q, 1, out)) return false;
        }
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] & bit) continue;
            bool flat = false;
            for (std::size_t j = i; j + 1 < c.size(); ++j) flat = flat || f[j] == f[j + 1];
            if (flat) continue;
            Chain e(c.begin(), c.begin() + static_cast<long>(i) + 1);
            e.insert(e.end(), f.begin() + static_cast<long>(i), f.end());
            if (!emit(e, q, i % 2 ? 1 : -1, out)) return false;
        }
        return true;
    };
    // false when s(k) leaves the truncation
    auto homotopy = [&](const Key& k, Vec& out) {
        const Mask bit = Mask{1} << sd.alpha[pairs[k.second].second];
        const Chain c = k.first < 0 ? Chain{} : sd.chains[static_cast<std::size_t>(k.first)];
        return op == ContractionOperator::SingleInsertion ? single_insertion(c, bit, k.second, out)
                                                          : cone(c, bit, k.second, out);
    };

    std::vector<Key> basis;
    for (std::size_t q = 0; q < pairs.size(); ++q) basis.push_back({-1, q});
    for (std::size_t c = 0; c < sd.chains.size(); ++c)
        for (std::size_t q = 0; q < pairs.size(); ++q)
            if (sd.in_stab[c][pairs[q].second]) basis.push_back({static_cast<long>(c), q});
    for (const auto& b : basis) {
        Vec s, d, total;
        const std::size_t before = membership_failures;
        if (!homotopy(b, s)) {
            ++report.skipped;
            continue;
        }
        for (const auto& [k, c] : s) {
            Vec t;
            boundary(k, t);
            for (const auto& [k2, c2] : t) accumulate(total, k2, c * c2);
        }
        boundary(b, d);
        for (const auto& [k, c] : d) {
            Vec t;
            homotopy(k, t);
            for (const auto& [k2, c2] : t) accumulate(total, k2, c * c2);
        }
        accumulate(total, b, -1);
        ++report.checked;
        if (!total.empty() || membership_failures != before) {
            ++report.failures;
            if (report.failure_examples.size() < 5)
                report.failure_examples.push_back("chain of dimension " + std::to_string(dim(b.first)) + " at point " +
                                                  std::to_string(pairs[b.second].first) + " with element " +
                                                  g.format(els[pairs[b.second].second]));
        }
    }
    return report;
}

}  // namespace hk::gcomplex
