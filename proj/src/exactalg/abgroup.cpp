#include <algorithm>

#include "hk/exactalg.hpp"

namespace hk::exactalg {

namespace {

BigInt strip_inverted(BigInt d, const CoeffRing& r) {
    if (r.kind == CoeffRing::Kind::Rationals) return 1;
    for (long p : r.primes)
        while (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p)))
            mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(p));
    return d;
}

std::vector<BigInt> strip_all(const std::vector<BigInt>& torsion, const CoeffRing& r) {
    std::vector<BigInt> out;
    for (const auto& d : torsion) {
        BigInt s = strip_inverted(d, r);
        if (s != 1) out.push_back(s);
    }
    return out;
}

std::string power(const std::string& base, std::size_t n) {
    return n == 1 ? base : base + "^" + std::to_string(n);
}

AbGroup::Localization key_of(const CoeffRing& r) {
    switch (r.kind) {
        case CoeffRing::Kind::Integers: return {};
        case CoeffRing::Kind::Rationals: return {true, {}};
        case CoeffRing::Kind::IntegersInverted: return {false, r.primes};
    }
    return {};
}

std::string key_name(const AbGroup::Localization& k) {
    if (k.all) return "Q";
    if (k.primes.empty()) return "Z";
    std::string s = "Z[1/";
    for (std::size_t i = 0; i < k.primes.size(); ++i) s += (i ? "," : "") + std::to_string(k.primes[i]);
    return s + "]";
}

}  // namespace

FgAbGroup FgAbGroup::make(std::size_t rank, std::vector<BigInt> diag, const CoeffRing& ring) {
    FgAbGroup g;
    g.rank = rank;
    g.ring = ring;
    g.torsion = strip_all(invariant_factors(std::move(diag)), ring);
    return g;
}

std::vector<BigInt> FgAbGroup::relation_orders() const {
    std::vector<BigInt> out = torsion;
    out.resize(torsion.size() + rank, BigInt(0));
    return out;
}

std::string FgAbGroup::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    if (rank > 0) s = power(ring.name(), rank);
    // group repeated torsion factors
    for (std::size_t i = 0; i < torsion.size();) {
        std::size_t j = i;
        while (j < torsion.size() && torsion[j] == torsion[i]) ++j;
        if (!s.empty()) s += " + ";
        std::string t = "Z/" + torsion[i].get_str();
        s += (j - i == 1) ? t : "(" + t + ")^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

FgAbGroup tensor_coeffs(const FgAbGroup& g, const CoeffRing& r) {
    CoeffRing target = r;
    // composing localizations: invert the union
    if (g.ring.kind == CoeffRing::Kind::Rationals || r.kind == CoeffRing::Kind::Rationals) {
        target = CoeffRing::rationals();
    } else if (g.ring.kind == CoeffRing::Kind::IntegersInverted || r.kind == CoeffRing::Kind::IntegersInverted) {
        std::vector<long> ps = g.ring.primes;
        ps.insert(ps.end(), r.primes.begin(), r.primes.end());
        target = CoeffRing::inverted(ps);
    }
    return {g.rank, strip_all(g.torsion, target), target};
}

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
    if (!(a.ring == b.ring)) throw InputError("direct_sum: coefficient rings differ");
    std::vector<BigInt> t = a.torsion;
    t.insert(t.end(), b.torsion.begin(), b.torsion.end());
    return FgAbGroup::make(a.rank + b.rank, t, a.ring);
}

AbGroup AbGroup::from(const FgAbGroup& g) {
    AbGroup a;
    if (g.rank > 0) a.free[key_of(g.ring)] = g.rank;
    a.torsion = g.torsion;
    return a;
}

AbGroup AbGroup::localized(std::vector<long> primes, std::size_t mult) {
    AbGroup a;
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    if (mult > 0) a.free[{false, primes}] = mult;
    return a;
}

std::size_t AbGroup::rational_rank() const {
    std::size_t n = 0;
    for (const auto& [_, m] : free) n += m;
    return n;
}

AbGroup AbGroup::tensor(const CoeffRing& r) const {
    AbGroup out;
    for (const auto& [k, m] : free) {
        Localization nk = k;
        if (r.kind == CoeffRing::Kind::Rationals) {
            nk = {true, {}};
        } else if (!k.all) {
            nk.primes.insert(nk.primes.end(), r.primes.begin(), r.primes.end());
            std::sort(nk.primes.begin(), nk.primes.end());
            nk.primes.erase(std::unique(nk.primes.begin(), nk.primes.end()), nk.primes.end());
        }
        out.free[nk] += m;
    }
    out.torsion = strip_all(torsion, r);
    return out;
}

std::string AbGroup::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    // localized summands first (most inverted primes last), Z after them
    for (auto it = free.rbegin(); it != free.rend(); ++it) {
        if (!s.empty()) s += " + ";
        s += power(key_name(it->first), it->second);
    }
    FgAbGroup t{0, torsion, {}};
    if (!torsion.empty()) s += (s.empty() ? "" : " + ") + t.to_string();
    return s;
}

AbGroup direct_sum(const AbGroup& a, const AbGroup& b) {
    AbGroup out = a;
    for (const auto& [k, m] : b.free) out.free[k] += m;
    std::vector<BigInt> t = a.torsion;
    t.insert(t.end(), b.torsion.begin(), b.torsion.end());
    out.torsion = invariant_factors(t);
    return out;
}

}  // namespace hk::exactalg
