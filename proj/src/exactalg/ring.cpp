#include <algorithm>
#include <cctype>

#include "hk/exactalg.hpp"

namespace hk::exactalg {

CoeffRing CoeffRing::inverted(std::vector<long> primes) {
    std::vector<long> ps;
    for (long p : primes) {
        if (p < 2) throw InputError("inverted element must be at least 2, got " + std::to_string(p));
        for (long q : prime_factors(BigInt(p))) ps.push_back(q);
    }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    if (ps.empty()) return integers();
    return {Kind::IntegersInverted, std::move(ps)};
}

CoeffRing CoeffRing::parse(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t == "Z") return integers();
    if (t == "Q") return rationals();
    const std::string head = "Z[1/";
    if (t.size() > head.size() + 1 && t.compare(0, head.size(), head) == 0 && t.back() == ']') {
        std::string body = t.substr(head.size(), t.size() - head.size() - 1);
        std::vector<long> ps;
        std::size_t pos = 0;
        while (pos <= body.size()) {
            std::size_t comma = body.find(',', pos);
            std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (item.empty() || !std::all_of(item.begin(), item.end(), ::isdigit))
                throw InputError("bad coefficient ring '" + text + "'");
            ps.push_back(std::stol(item));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return inverted(ps);
    }
    throw InputError("unknown coefficient ring '" + text + "' (expected Z, Q or Z[1/p,...])");
}

bool CoeffRing::inverts(long prime) const {
    switch (kind) {
        case Kind::Integers: return false;
        case Kind::Rationals: return true;
        case Kind::IntegersInverted: return std::binary_search(primes.begin(), primes.end(), prime);
    }
    return false;
}

bool CoeffRing::inverts_all_primes_of(const BigInt& n) const {
    for (long p : prime_factors(n))
        if (!inverts(p)) return false;
    return true;
}

std::string CoeffRing::name() const {
    switch (kind) {
        case Kind::Integers: return "Z";
        case Kind::Rationals: return "Q";
        case Kind::IntegersInverted: {
            std::string s = "Z[1/";
            for (std::size_t i = 0; i < primes.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(primes[i]);
            }
            return s + "]";
        }
    }
    return "?";
}

}  // namespace hk::exactalg
