#pragma once

// Independent reference computations used only by the tests. None of these
// call into the Smith-form code they are meant to check.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Int = mpz_class;
using Dense = std::vector<std::vector<Int>>;

// Bareiss fraction-free determinant.
inline Int det(Dense a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < n && a[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(a[k], a[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = t / prev;
            }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

// Invariant factors (including 1s) via determinantal divisors:
// d_k = gcd of all k x k minors, s_k = d_k / d_{k-1}.
inline std::vector<Int> invariant_factors_by_minors(const Dense& m, std::size_t rows, std::size_t cols) {
    std::vector<Int> out;
    Int prev = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        subsets(rows, k, rs);
        subsets(cols, k, cs);
        Int g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                Dense sub(k, std::vector<Int>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
                Int d = det(sub);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            }
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

struct Group {
    std::size_t rank = 0;
    std::vector<Int> torsion;  // >= 2, divisibility chain
    bool operator==(const Group&) const = default;
};

// Homology of a complex with dense boundaries; d[i] maps degree i+1 -> i,
// ranks[i] is the rank in degree i.
inline std::vector<Group> homology(const std::vector<std::size_t>& ranks, const std::vector<Dense>& d) {
    const std::size_t n = ranks.size();
    std::vector<std::vector<Int>> inv(n);  // inv[i]: invariant factors of boundary out of degree i
    for (std::size_t i = 1; i < n; ++i) inv[i] = invariant_factors_by_minors(d[i - 1], ranks[i - 1], ranks[i]);
    std::vector<Group> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r_out = i > 0 ? inv[i].size() : 0;
        std::size_t r_in = i + 1 < n ? inv[i + 1].size() : 0;
        out[i].rank = ranks[i] - r_out - r_in;
        if (i + 1 < n)
            for (const auto& x : inv[i + 1])
                if (x != 1) out[i].torsion.push_back(x);
    }
    return out;
}

inline Dense multiply(const Dense& a, const Dense& b, std::size_t n, std::size_t k, std::size_t m) {
    Dense c(n, std::vector<Int>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            if (a[i][l] != 0)
                for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}

// Random unimodular matrix as a product of elementary operations.
inline Dense random_unimodular(std::size_t n, std::mt19937& rng, int steps = 6) {
    Dense u(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    if (n < 2) return u;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int s = 0; s < steps; ++s) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        int q = coef(rng);
        for (std::size_t c = 0; c < n; ++c) u[i][c] += q * u[j][c];
    }
    return u;
}

inline Dense inverse_unimodular(const Dense& u) {
    // adjugate / det; det is +-1
    const std::size_t n = u.size();
    Int d = det(u);
    Dense inv(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Dense minor;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == j) continue;
                std::vector<Int> row;
                for (std::size_t c = 0; c < n; ++c)
                    if (c != i) row.push_back(u[r][c]);
                minor.push_back(row);
            }
            Int cof = det(minor);
            if ((i + j) % 2) cof = -cof;
            inv[i][j] = cof / d;
        }
    return inv;
}

}  // namespace oracle

namespace oracle {

// Integral homology of Z/m with trivial coefficients (closed form).
inline Group cyclic_homology(long long m, int n) {
    if (n == 0) return {1, {}};
    if (n % 2 == 1) return {0, {Int(static_cast<long>(m))}};
    return {0, {}};
}

// Abelian group from a relation matrix (rows = relators, cols = generators)
// by determinantal divisors.
inline Group abelianization_from_relations(const Dense& rel, std::size_t gens) {
    std::size_t rows = rel.size();
    Group out;
    if (rows == 0) {
        out.rank = gens;
        return out;
    }
    auto f = invariant_factors_by_minors(rel, rows, gens);
    out.rank = gens - f.size();
    for (const auto& x : f)
        if (x != 1) out.torsion.push_back(x);
    return out;
}

// Invariant factors of a finite abelian group from the counts
// c(d) = #{x : d x = 0}; `orders_in_quotient` lists element orders.
inline std::vector<Int> abelian_invariants_from_orders(const std::vector<long long>& orders) {
    // For A = (+) Z/d_i, #{x : p^k x = 0} = prod p^{min(k, v_p(d_i))}; recover the
    // p-primary partitions, then reassemble the divisibility chain.
    std::size_t n = orders.size();
    std::vector<long long> primes;
    for (long long o : orders)
        for (long long p = 2; p <= o; ++p)
            if (o % p == 0) {
                bool pr = true;
                for (long long q = 2; q * q <= p; ++q)
                    if (p % q == 0) pr = false;
                if (pr && std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
            }
    std::sort(primes.begin(), primes.end());
    std::vector<std::vector<int>> parts;  // per prime, exponents of cyclic factors (descending)
    for (long long p : primes) {
        // count(k) = #{x: p^k x = 0}; log_p count(k) - log_p count(k-1) = #{i : v_p(d_i) >= k}
        std::vector<long long> logs{0};
        for (int k = 1;; ++k) {
            long long pk = 1;
            for (int j = 0; j < k; ++j) pk *= p;
            long long cnt = 0;
            for (long long o : orders) {
                // p^k x = 0 iff ord(x) | p^k * (p'-part)... only the p-part matters for the p-primary count
                long long op = 1, t = o;
                while (t % p == 0) {
                    t /= p;
                    op *= p;
                }
                if (op <= pk && t == 1) ++cnt;
            }
            long long l = 0;
            while (cnt > 1) {
                cnt /= p;
                ++l;
            }
            logs.push_back(l);
            if (logs[static_cast<std::size_t>(k)] == logs[static_cast<std::size_t>(k) - 1]) break;
        }
        std::vector<int> ge;  // ge[k-1] = #{i : v_p(d_i) >= k}
        for (std::size_t k = 1; k < logs.size(); ++k) ge.push_back(static_cast<int>(logs[k] - logs[k - 1]));
        std::vector<int> exps;
        for (std::size_t k = 0; k < ge.size(); ++k) {
            int exactly = ge[k] - (k + 1 < ge.size() ? ge[k + 1] : 0);
            for (int j = 0; j < exactly; ++j) exps.push_back(static_cast<int>(k + 1));
        }
        std::sort(exps.rbegin(), exps.rend());
        parts.push_back(exps);
    }
    std::size_t len = 0;
    for (const auto& e : parts) len = std::max(len, e.size());
    std::vector<Int> out(len, 1);  // out[0] largest
    for (std::size_t pi = 0; pi < primes.size(); ++pi)
        for (std::size_t i = 0; i < parts[pi].size(); ++i)
            for (int j = 0; j < parts[pi][i]; ++j) out[i] *= static_cast<long>(primes[pi]);
    std::reverse(out.begin(), out.end());
    (void)n;
    return out;
}

// Every subgroup of S_n, each as a generator list of permutations of 0..n-1.
// Built as joins with cyclic subgroups, closed under a multiplication table.
inline std::vector<std::vector<std::vector<long long>>> symmetric_subgroups(int n) {
    std::vector<std::vector<long long>> els;
    std::vector<long long> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do els.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const std::size_t N = els.size();
    auto index = [&](const std::vector<long long>& x) {
        return static_cast<std::size_t>(std::lower_bound(els.begin(), els.end(), x) - els.begin());
    };
    std::vector<std::vector<std::size_t>> mul(N, std::vector<std::size_t>(N));
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) {
            std::vector<long long> c(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = els[a][static_cast<std::size_t>(els[b][static_cast<std::size_t>(i)])];
            mul[a][b] = index(c);
        }
    auto close = [&](const std::vector<std::size_t>& gens) {
        std::vector<bool> in(N, false);
        std::vector<std::size_t> stack{0};
        in[0] = true;
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            for (auto s : gens)
                if (!in[mul[s][x]]) {
                    in[mul[s][x]] = true;
                    stack.push_back(mul[s][x]);
                }
        }
        return in;
    };
    std::vector<std::size_t> cyc;
    for (std::size_t x = 1; x < N; ++x) cyc.push_back(x);
    std::vector<std::vector<bool>> seen;
    std::vector<std::vector<std::size_t>> gens;
    seen.push_back(close({}));
    gens.push_back({});
    for (std::size_t i = 0; i < seen.size(); ++i)
        for (auto c : cyc) {
            if (seen[i][c]) continue;
            auto g = gens[i];
            g.push_back(c);
            auto set = close(g);
            if (std::find(seen.begin(), seen.end(), set) == seen.end()) {
                seen.push_back(set);
                gens.push_back(g);
            }
        }
    std::vector<std::vector<std::vector<long long>>> out;
    for (const auto& g : gens) {
        std::vector<std::vector<long long>> perms;
        for (auto x : g) perms.push_back(els[x]);
        out.push_back(perms);
    }
    return out;
}

}  // namespace oracle
