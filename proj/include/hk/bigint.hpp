#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace hk {

using BigInt = mpz_class;

inline std::string to_string(const BigInt& v) { return v.get_str(); }

// mpz_class has no long long constructor; long is 64 bits on supported targets.
inline BigInt big(long long v) { return BigInt(static_cast<long>(v)); }

// Prime factors of |v| in increasing order, without multiplicity. v != 0.
std::vector<long> prime_factors(const BigInt& v);

bool is_prime(long p);

}  // namespace hk
