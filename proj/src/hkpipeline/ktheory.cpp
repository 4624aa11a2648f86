#include "hk/hkpipeline.hpp"

namespace hk::hkpipeline {

void KTheoryInput::validate() const {
    auto check = [](const std::vector<KSummand>& v, const std::string& where) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto& s = v[i];
            const std::string ptr = where + "/" + std::to_string(i);
            switch (s.kind) {
                case KSummand::Kind::Free:
                    if (s.count == 0) throw InputError("free summand of rank 0", ptr);
                    break;
                case KSummand::Kind::Cyclic:
                    if (s.order < 2) throw InputError("cyclic order must be at least 2", ptr);
                    break;
                case KSummand::Kind::Localized:
                    if (s.count == 0) throw InputError("localized summand of multiplicity 0", ptr);
                    for (auto p : s.primes)
                        if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime", ptr);
                    break;
            }
        }
    };
    check(k0, "/K0");
    check(k1, "/K1");
}

AbGroup KTheoryInput::group(int i) const {
    if (i != 0 && i != 1) throw InputError("K-group index must be 0 or 1");
    validate();
    AbGroup g;
    std::vector<BigInt> diag;
    for (const auto& s : i == 0 ? k0 : k1) {
        switch (s.kind) {
            case KSummand::Kind::Free: g.free[{}] += s.count; break;
            case KSummand::Kind::Cyclic: diag.push_back(s.order); break;
            case KSummand::Kind::Localized: g = exactalg::direct_sum(g, AbGroup::localized(s.primes, s.count)); break;
        }
    }
    g.torsion = exactalg::invariant_factors(diag);
    return g;
}

HkVerdict hk_compare(const std::map<int, AbGroup>& h, const KTheoryInput& k) {
    exactalg::GradedTable kt{{0, k.group(0)}, {1, k.group(1)}};
    auto rep = exactalg::graded_table_compare(h, kt, exactalg::CompareMode::Z2GradedRational);
    HkVerdict v;
    v.pass = rep.pass;
    v.h_even_rank = rep.even_a;
    v.h_odd_rank = rep.odd_a;
    v.k0_rank = rep.even_b;
    v.k1_rank = rep.odd_b;
    v.mismatches = rep.mismatches;
    return v;
}

HkVerdict hk_compare(const std::map<int, FgAbGroup>& h, const KTheoryInput& k) {
    std::map<int, AbGroup> a;
    for (const auto& [n, g] : h) a[n] = AbGroup::from(g);
    return hk_compare(a, k);
}

}  // namespace hk::hkpipeline
