#include <cstdlib>
#include <string>

#include "hk/bigint.hpp"
#include "hk/error.hpp"

namespace hk {

namespace {
constexpr std::size_t kDefaultBudget = 4'000'000;
}

std::size_t budget() {
    static const std::size_t value = [] {
        const char* env = std::getenv("HK_BUDGET");
        if (env == nullptr || *env == '\0') return kDefaultBudget;
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0) return kDefaultBudget;
        return static_cast<std::size_t>(v);
    }();
    return value;
}

void check_budget(std::size_t requested, const char* what) {
    if (requested > budget())
        throw BudgetError(std::string(what) + ": size " + std::to_string(requested) +
                          " exceeds budget " + std::to_string(budget()) + " (set HK_BUDGET to raise it)");
}

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::vector<long> prime_factors(const BigInt& v) {
    BigInt n = abs(v);
    std::vector<long> out;
    if (n == 0) return out;
    for (unsigned long d = 2; BigInt(d) * d <= n; ++d) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            out.push_back(static_cast<long>(d));
            while (mpz_divisible_ui_p(n.get_mpz_t(), d)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
        }
    }
    if (n > 1) {
        if (!n.fits_slong_p()) throw DomainError("prime factor too large: " + n.get_str());
        out.push_back(n.get_si());
    }
    return out;
}

}  // namespace hk
