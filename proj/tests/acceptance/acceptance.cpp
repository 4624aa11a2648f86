// Acceptance run: one PASS/FAIL line per criterion, details indented below.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "hk/cli.hpp"
#include "hk/gcomplex.hpp"
#include "hk/hkpipeline.hpp"
#include "oracles.hpp"

using namespace hk;
using namespace gen;
using exactalg::AbGroup;
using exactalg::ChainComplex;
using exactalg::CoeffRing;
using exactalg::FgAbGroup;
using exactalg::IntMatrix;

namespace {

struct Outcome {
    bool ok = true;
    std::vector<std::string> notes;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

int failed_criteria = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.notes.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= limit_s) {
        o.ok = false;
        o.notes.push_back("over the time limit");
    }
    std::printf("%s %d %s (%.3f s, limit %.0f s)\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), secs, limit_s);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed_criteria;
}

std::string show(const std::map<int, FgAbGroup>& t) {
    std::string s;
    for (const auto& [n, g] : t) s += (s.empty() ? "" : ", ") + g.to_string();
    return s;
}

FgAbGroup from_oracle(const oracle::Group& g) { return FgAbGroup::make(g.rank, g.torsion); }

// ---- criterion 7 suites; each returns the number of cases and counts failures

std::size_t suite_smith(std::size_t& failures) {
    std::mt19937 rng(20260101);
    std::uniform_int_distribution<std::size_t> dim(1, 15);
    std::uniform_real_distribution<double> dens(0.1, 0.6);
    std::size_t cases = 0;
    for (int t = 0; t < 220; ++t, ++cases) {
        IntMatrix m = random_sparse(rng, dim(rng), dim(rng), -20, 20, dens(rng));
        auto s = exactalg::smith_normal_form(m);
        bool ok = s.U * m * s.V == s.D && divisibility_diagonal(s.D);
        ok = ok && abs(oracle::det(to_dense(s.U))) == 1 && abs(oracle::det(to_dense(s.V))) == 1;
        if (!ok) ++failures;
    }
    return cases;
}

std::size_t suite_d2_rejection(std::size_t& failures) {
    std::mt19937 rng(99);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    std::size_t cases = 0;
    for (int t = 0; t < 220; ++t, ++cases) {
        std::size_t a = dim(rng), b = dim(rng), c = dim(rng);
        IntMatrix d1 = random_sparse(rng, a, b, -3, 3, 0.5);
        IntMatrix d2 = random_sparse(rng, b, c, -3, 3, 0.5);
        if ((d1 * d2).is_zero()) {
            d1.set(0, 0, 1);
            d2 = IntMatrix(b, c);
            d2.set(0, 0, 1);
        }
        try {
            ChainComplex(0, {a, b, c}, {d1, d2});
            ++failures;
        } catch (const InputError&) {
        }
    }
    return cases;
}

std::size_t suite_homology(std::size_t& failures) {
    std::mt19937 rng(424242);
    std::size_t cases = 0;
    while (cases < 240) {
        std::uniform_int_distribution<std::size_t> dim(1, 4);
        std::size_t r0 = dim(rng), r1 = dim(rng), r2 = dim(rng);
        if (r0 + r1 + r2 > 12) continue;
        IntMatrix d1 = random_sparse(rng, r0, 1, -4, 4, 0.8) * random_sparse(rng, 1, r1, -4, 4, 0.8);
        IntMatrix ks = exactalg::kernel_basis(d1).to_sparse();
        IntMatrix d2 = (ks * random_sparse(rng, ks.cols(), r2, -3, 3, 0.7))
                           .scaled(std::uniform_int_distribution<int>(1, 4)(rng));
        ChainComplex c(0, {r0, r1, r2}, {d1, d2});
        auto expect = oracle::homology({r0, r1, r2}, {to_dense(d1), to_dense(d2)});
        for (int n = 0; n <= 2; ++n)
            if (exactalg::homology_at(c, n) != from_oracle(expect[n])) {
                ++failures;
                break;
            }
        ++cases;
    }
    return cases;
}

std::size_t suite_coinvariants(std::size_t& failures) {
    std::mt19937 rng(11);
    std::size_t cases = 0;
    for (int iter = 0; iter < 220; ++iter, ++cases) {
        GroupDesc g = random_finite_group(rng);
        InducedModule m = random_induced(g, rng);
        auto blocks = equivmod::coinvariants(m);
        auto full = equivmod::coinvariants(m.to_representation());
        FgAbGroup direct = FgAbGroup::zero();
        for (const auto& b : m.blocks) direct = exactalg::direct_sum(direct, equivmod::coinvariants(b.N).group);
        if (!(blocks.group == full.group) || !(blocks.group == direct)) ++failures;
    }
    return cases;
}

std::size_t suite_abelianization(std::size_t& failures) {
    std::size_t cases = 0;
    auto h1 = [](const GroupDesc& g) { return groups::group_homology(groups::Representation::trivial(g), 1).at(1); };
    // infinite families against their presentations' exponent sums
    const std::vector<std::pair<GroupDesc, FgAbGroup>> infinite{
        {GroupDesc::integers(), FgAbGroup::free(1)},
        {GroupDesc::infinite_dihedral(), FgAbGroup::make(0, {big(2), big(2)})},
        {GroupDesc::amalgam(2, 3), FgAbGroup::make(0, {big(6)})},
        {GroupDesc::amalgam(4, 6), FgAbGroup::make(0, {big(2), big(12)})}};
    for (const auto& [g, expect] : infinite) {
        if (!(h1(g) == expect)) ++failures;
        ++cases;
    }
    for (long long m = 1; m <= 8; ++m, ++cases)
        if (!(h1(GroupDesc::cyclic(m)) == brute_abelianization(GroupDesc::cyclic(m)))) ++failures;
    std::mt19937 rng(1234);
    for (int t = 0; t < 200; ++t, ++cases) {
        GroupDesc g = random_permutation_group(rng);
        if (!(h1(g) == brute_abelianization(g))) ++failures;
    }
    return cases;
}

std::size_t suite_orbit_sum(std::size_t& failures) {
    std::size_t cases = 0;
    for (int n = 1; n <= 5; ++n)
        for (const auto& gens : oracle::symmetric_subgroups(n)) {
            GroupDesc g = GroupDesc::permutation(static_cast<std::size_t>(n), gens);
            std::vector<FiniteGSet> sets{natural_action(g), FiniteGSet::point(g)};
            if (n >= 2) sets.push_back(pairs_action(g));
            for (const auto& s : sets) {
                if (gsets::blowup(s).pair_count() != brute_pairs(s)) ++failures;
                ++cases;
            }
        }
    return cases;
}

}  // namespace

int main() {
    criterion(1, "cyclic group homology H_*(Z/2; Z) to degree 7", 1, [](Outcome& o) {
        auto h = groups::group_homology(groups::Representation::trivial(GroupDesc::cyclic(2)), 7);
        // Z, then Z/2 in odd degrees and 0 in positive even degrees
        for (int n = 0; n <= 7; ++n) {
            const FgAbGroup text = n == 0 ? FgAbGroup::free(1) : n % 2 ? FgAbGroup::make(0, {big(2)}) : FgAbGroup::zero();
            o.expect(h.at(n) == text, "degree " + std::to_string(n) + " against the displayed values");
            o.expect(h.at(n) == from_oracle(oracle::cyclic_homology(2, n)), "degree " + std::to_string(n) + " oracle");
        }
        o.note("H_0..H_7 = " + show(h));
    });

    criterion(2, "H_*(D_inf; Z) from the amalgam engine to degree 5", 5, [](Outcome& o) {
        auto h = groups::group_homology(groups::Representation::trivial(GroupDesc::infinite_dihedral()), 5);
        // Mayer-Vietoris for Z/2 * Z/2: H_n = H_n(Z/2) + H_n(Z/2) for n >= 1
        o.expect(h.at(0) == FgAbGroup::free(1), "degree 0");
        for (int n = 1; n <= 5; ++n) {
            auto a = oracle::cyclic_homology(2, n);
            std::vector<oracle::Int> t = a.torsion;
            t.insert(t.end(), a.torsion.begin(), a.torsion.end());
            o.expect(h.at(n) == FgAbGroup::make(0, t), "degree " + std::to_string(n));
        }
        o.note("H_0..H_5 = " + show(h));
    });

    criterion(3, "odometer pipeline for D_inf with n_k = 2^k, 6 levels, depth 4", 30, [](Outcome& o) {
        cli::Problem p = cli::preset("scarparo-2k");
        auto spec = *p.odometer;
        spec.truncation_level = 6;
        const auto z = CoeffRing::integers();
        auto gh = hkpipeline::groupoid_homology(spec, z, 4);
        auto hh = hkpipeline::hatted_homology(spec, z, 4);

        // oracle for m: limit threads of fixed points of the non-identity
        // torsion classes; a reflection's centralizer {e, s} fixes them pointwise
        std::size_t m_oracle = 0;
        const GroupDesc& g = spec.chain.group;
        const auto top = gsets::level_gset(spec, spec.truncation_level);
        for (const auto& cls : groups::torsion_conjugacy_classes(g)) {
            if (cls.representative == g.identity()) continue;
            std::set<std::size_t> image;
            for (std::size_t x = 0; x < top.set.size; ++x)
                if (top.set.act(cls.representative, x) == x) image.insert(top.projection[x]);
            m_oracle += image.size();
        }
        const std::size_t m = hh.twisted_rank();
        o.expect(m == m_oracle, "m from the pipeline equals the fixed-point thread count");
        o.expect(m == 1 || m == 2, "m is 1 or 2");
        o.note("computed m = " + std::to_string(m) + " (fixed-point threads: " + std::to_string(m_oracle) + ")");

        // R = union of (1/n_k) Z is Z[1/2] here
        std::set<long> primes;
        for (std::size_t k = 1; k <= spec.truncation_level; ++k)
            for (long q : prime_factors(big(static_cast<long long>(spec.index(k))))) primes.insert(q);
        const AbGroup r = AbGroup::localized({primes.begin(), primes.end()});
        o.expect(r == AbGroup::localized({2}), "R is Z[1/2]");

        // per-level tables: Z, then 2-torsion only in odd degrees, zero in even degrees
        for (const auto& t : gh.tables)
            for (int n = 0; n <= 4; ++n) {
                const FgAbGroup& x = t.groups.at(n);
                if (n == 0)
                    o.expect(x == FgAbGroup::free(1), "level table H_0 = Z");
                else if (n % 2 == 0)
                    o.expect(x.is_zero(), "level table even degree zero");
                else
                    o.expect(x.rank == 0 && !x.torsion.empty() && x.torsion.back() == 2, "level table odd degree 2-torsion");
            }
        // colimit: R, 0, (Z/2)^m
        const FgAbGroup zm = FgAbGroup::make(0, std::vector<BigInt>(m, big(2)));
        o.expect(gh.colimit.count(0) && gh.colimit.at(0) == r, "groupoid H_0 colimit is R");
        for (int n = 1; n <= 4; ++n) {
            o.expect(gh.colimit.count(n) == 1, "groupoid colimit identified in degree " + std::to_string(n));
            if (!gh.colimit.count(n)) continue;
            const AbGroup expect = n % 2 ? AbGroup::from(zm) : AbGroup{};
            o.expect(gh.colimit.at(n) == expect, "groupoid colimit degree " + std::to_string(n));
        }
        // hatted: R + Z^m in degree 0, torsion only in odd degrees, zero in even
        o.expect(hh.colimit.count(0) && hh.colimit.at(0) == exactalg::direct_sum(r, AbGroup::from(FgAbGroup::free(m))),
                 "hatted H_0 is R + Z^m");
        for (int n = 1; n <= 4; ++n) {
            o.expect(hh.colimit.count(n) == 1, "hatted colimit identified in degree " + std::to_string(n));
            if (!hh.colimit.count(n)) continue;
            const AbGroup& x = hh.colimit.at(n);
            if (n % 2)
                o.expect(x.rational_rank() == 0 && !x.torsion.empty(), "hatted odd degree is torsion");
            else
                o.expect(x.is_zero(), "hatted even degree is zero");
        }
        o.note("groupoid colimit: H_0 = " + gh.colimit.at(0).to_string() + ", H_1 = " + gh.colimit.at(1).to_string());
        o.note("hatted colimit: H_0 = " + hh.colimit.at(0).to_string() + ", H_1 = " + hh.colimit.at(1).to_string() +
               ", H_3 = " + hh.colimit.at(3).to_string());

        // K0 = R + Z^m, K1 = 0
        hkpipeline::KTheoryInput k;
        hkpipeline::KSummand loc;
        loc.kind = hkpipeline::KSummand::Kind::Localized;
        loc.primes = {primes.begin(), primes.end()};
        hkpipeline::KSummand fr;
        fr.count = m;
        k.k0 = {loc, fr};
        auto v = hkpipeline::hk_compare(hh.colimit, k);
        o.expect(v.pass, "rational comparison with K_0 = R + Z^m, K_1 = 0");
        o.expect(v.k0_rank == m + 1 && v.h_even_rank == m + 1 && v.k1_rank == 0 && v.h_odd_rank == 0, "ranks");
        auto shipped = hkpipeline::hk_compare(hh.colimit, *p.ktheory);
        o.expect(shipped.pass, "comparison with the preset's K-theory");
        o.note("ranks: K even " + std::to_string(v.k0_rank) + " = H even " + std::to_string(v.h_even_rank) +
               ", K odd 0 = H odd " + std::to_string(v.h_odd_rank));
    });

    criterion(4, "hatted homology against the basic complex", 60, [](Outcome& o) {
        const auto q = CoeffRing::rationals();
        auto check = [&](const std::string& label, const hkpipeline::CrosscheckReport& r) {
            bool all = r.rows.size() == 7;
            for (const auto& row : r.rows) all = all && row.equal && row.hatted == row.bs;
            o.expect(all && r.agree(), label);
            std::string h0;
            for (const auto& row : r.rows)
                if (row.degree == 0) h0 = row.hatted.to_string();
            o.note(label + ": agree for |n| <= 3, degree 0 = " + h0);
        };
        for (long long m : {1LL, 2LL, 3LL}) {
            GroupDesc g = m == 1 ? GroupDesc::trivial() : GroupDesc::cyclic(m);
            check(g.name() + " on a point, Q",
                  hkpipeline::bcr_gh_crosscheck(gcomplex::point_complex(g), FiniteGSet::point(g), q, 3));
        }
        GroupDesc d = GroupDesc::infinite_dihedral();
        auto tree = gcomplex::tree_complex(d);
        auto pt = hkpipeline::bcr_gh_crosscheck(tree, FiniteGSet::point(d), q, 3);
        check("D_inf tree, X = point, Q", pt);
        for (const auto& row : pt.rows)
            if (row.degree == 0) o.expect(row.hatted == FgAbGroup::make(3, {}, q), "D_inf point degree 0 is Q^3");
        auto spec = *cli::preset("scarparo-2k").odometer;
        spec.truncation_level = 4;
        for (const auto& r : hkpipeline::bcr_gh_crosscheck(tree, spec, q, 3))
            check("D_inf tree, odometer level " + std::to_string(r.level) + ", Q", r);

        GroupDesc c2 = GroupDesc::cyclic(2);
        auto over_z = hkpipeline::bcr_gh_crosscheck(gcomplex::point_complex(c2), FiniteGSet::point(c2),
                                                    CoeffRing::integers(), 3);
        o.expect(!over_z.agree() && !over_z.invertible, "C_2 point over Z: routes reported unequal");
        for (const auto& row : over_z.rows)
            if (!row.equal)
                o.note("C_2 point over Z: degree " + std::to_string(row.degree) + " hatted " + row.hatted.to_string() +
                       " vs basic complex " + row.bs.to_string());
        auto half = hkpipeline::bcr_gh_crosscheck(gcomplex::point_complex(c2), FiniteGSet::point(c2),
                                                  CoeffRing::inverted({2}), 3);
        o.expect(half.agree() && half.invertible, "C_2 point over Z[1/2]: routes agree");
    });

    criterion(5, "two-row spectral sequence for the genus-2 surface group", 1, [](Outcome& o) {
        auto page = hkpipeline::e2_page({1, 4, 1}, {{0, 1}, {1, 1}});
        for (int q : {0, -1})
            for (int p = 0; p <= 2; ++p) o.expect(page.at(p, q) == (p == 1 ? 4u : 1u), "page entry");
        o.expect(page.rows() == std::vector<int>{0, -1}, "rows q = 0, -1");
        // genus 2: K_even = Z/2 + Z^5, K_odd = Z^5
        auto r = hkpipeline::two_row_solve(page, 5, 5);
        o.expect(r.status == hkpipeline::TwoRowResult::Status::Unique, "unique solution");
        o.expect(r.solutions.size() == 1 && r.solutions[0] == std::map<int, std::size_t>{{2, 1}},
                 "d2: E_{2,-1} -> E_{0,0} of rank 1");
        if (!r.solutions.empty())
            o.expect(hkpipeline::infinity_totals(page, r.solutions[0]) == std::make_pair<std::size_t, std::size_t>(5, 5),
                     "E-infinity totals reproduce the targets");
        o.note("E2 totals (" + std::to_string(r.e2_even) + ", " + std::to_string(r.e2_odd) +
               "), targets (5, 5): " + hkpipeline::to_string(r.status));
    });

    criterion(6, "contraction s d + d s = id on the truncated subdivision", 60, [](Outcome& o) {
        for (long long m : {1LL, 2LL, 3LL}) {
            GroupDesc g = m == 1 ? GroupDesc::trivial() : GroupDesc::cyclic(m);
            for (const auto& [label, x] :
                 std::vector<std::pair<std::string, FiniteGSet>>{{"point", FiniteGSet::point(g)},
                                                                 {"3 points", gsets::block_cycle_set(g, 3)}}) {
                auto r = gcomplex::verify_contraction(x, 3, gcomplex::ContractionOperator::Cone);
                o.expect(r.pass() && r.skipped == 0, g.name() + " on " + label);
                auto si = gcomplex::verify_contraction(x, 3, gcomplex::ContractionOperator::SingleInsertion);
                std::ostringstream s;
                s << g.name() << " on " << label << ": cone checked " << r.checked << ", skipped " << r.skipped
                  << ", failures " << r.failures << "; single insertion failures " << si.failures << " of "
                  << si.checked;
                o.note(s.str());
            }
        }
    });

    criterion(7, "property suites", 600, [](Outcome& o) {
        const std::vector<std::pair<std::string, std::function<std::size_t(std::size_t&)>>> suites{
            {"Smith form U M V = D, unimodular, divisibility", suite_smith},
            {"d^2 != 0 rejected", suite_d2_rejection},
            {"homology_at against the dense oracle", suite_homology},
            {"coinvariants by blocks and by the full module", suite_coinvariants},
            {"H_1 equals the abelianization", suite_abelianization},
            {"blow-up orbit-sum identity, permutation groups of degree <= 5", suite_orbit_sum}};
        for (const auto& [name, run] : suites) {
            std::size_t failures = 0;
            const auto t0 = std::chrono::steady_clock::now();
            const std::size_t cases = run(failures);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            o.expect(cases >= 200 && failures == 0, name);
            char buf[256];
            std::snprintf(buf, sizeof buf, "%s: %zu cases, %zu failures (%.2f s)", name.c_str(), cases, failures, secs);
            o.note(buf);
        }
    });

    std::printf("%s\n", failed_criteria == 0 ? "all criteria passed" : "some criteria failed");
    return failed_criteria == 0 ? 0 : 1;
}
