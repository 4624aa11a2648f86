#include <algorithm>
#include <tuple>

#include "hk/exactalg.hpp"

namespace hk::exactalg {

namespace {

void submul(BigInt& a, const BigInt& q, const BigInt& b) {
    mpz_submul(a.get_mpz_t(), q.get_mpz_t(), b.get_mpz_t());
}
void addmul(BigInt& a, const BigInt& q, const BigInt& b) {
    mpz_addmul(a.get_mpz_t(), q.get_mpz_t(), b.get_mpz_t());
}

BigInt tdiv(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Dense Smith reduction tracking U, U^-1, V, V^-1 (so that U*M*V = D).
class Reducer {
public:
    explicit Reducer(const IntMatrix& m)
        : a(m), u(DenseMatrix::identity(m.rows())), ui(DenseMatrix::identity(m.rows())),
          v(DenseMatrix::identity(m.cols())), vi(DenseMatrix::identity(m.cols())), r(m.rows()), c(m.cols()) {}

    SmithData run() {
        std::size_t t = 0;
        for (; t < std::min(r, c); ++t) {
            auto piv = find_pivot(t);
            if (!piv) break;
            swap_rows(t, piv->first);
            swap_cols(t, piv->second);
            reduce_at(t);
            if (a(t, t) < 0) negate_row(t);
        }
        SmithData out;
        out.rank = t;
        for (std::size_t i = 0; i < t; ++i) out.diagonal.push_back(a(i, i));
        out.D = std::move(a);
        out.U = std::move(u);
        out.Uinv = std::move(ui);
        out.V = std::move(v);
        out.Vinv = std::move(vi);
        return out;
    }

private:
    DenseMatrix a, u, ui, v, vi;
    std::size_t r, c;

    std::optional<std::pair<std::size_t, std::size_t>> find_pivot(std::size_t t) const {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        BigInt best_abs;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j) {
                const BigInt& x = a(i, j);
                if (x == 0) continue;
                if (!best || mpz_cmpabs(x.get_mpz_t(), (best_abs).get_mpz_t()) < 0) {
                    best = {i, j};
                    best_abs = abs(x);
                    if (best_abs == 1) return best;
                }
            }
        return best;
    }

    void reduce_at(std::size_t t) {
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (a(i, t) == 0) continue;
                BigInt q = tdiv(a(i, t), a(t, t));
                if (q != 0) sub_row(i, t, q);
                if (a(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (a(t, j) == 0) continue;
                BigInt q = tdiv(a(t, j), a(t, t));
                if (q != 0) sub_col(j, t, q);
                if (a(t, j) != 0) dirty = true;
            }
            if (dirty) {
                // smallest leftover in row t or column t becomes the pivot;
                // row-t entries precede column-t entries in (row, col) order
                std::tuple<BigInt, std::size_t, std::size_t> best{0, 0, 0};
                bool have = false;
                auto consider = [&](std::size_t i, std::size_t j) {
                    const BigInt& x = a(i, j);
                    if (x == 0) return;
                    std::tuple<BigInt, std::size_t, std::size_t> cand{abs(x), i, j};
                    if (!have || cand < best) {
                        best = cand;
                        have = true;
                    }
                };
                for (std::size_t j = t + 1; j < c; ++j) consider(t, j);
                for (std::size_t i = t + 1; i < r; ++i) consider(i, t);
                auto [_, bi, bj] = best;
                if (bi != t) swap_rows(t, bi);
                if (bj != t) swap_cols(t, bj);
                continue;
            }
            bool fixed = false;
            for (std::size_t i = t + 1; i < r && !fixed; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (a(i, j) != 0 && !mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        add_row_to_pivot(i, t);
                        fixed = true;
                        break;
                    }
            if (!fixed) return;
        }
    }

    // row_i -= q * row_t
    void sub_row(std::size_t i, std::size_t t, const BigInt& q) {
        for (std::size_t j = 0; j < c; ++j)
            if (a(t, j) != 0) submul(a(i, j), q, a(t, j));
        for (std::size_t j = 0; j < r; ++j)
            if (u(t, j) != 0) submul(u(i, j), q, u(t, j));
        for (std::size_t k = 0; k < r; ++k)
            if (ui(k, i) != 0) addmul(ui(k, t), q, ui(k, i));
    }

    // row_t += row_i
    void add_row_to_pivot(std::size_t i, std::size_t t) {
        for (std::size_t j = 0; j < c; ++j)
            if (a(i, j) != 0) a(t, j) += a(i, j);
        for (std::size_t j = 0; j < r; ++j)
            if (u(i, j) != 0) u(t, j) += u(i, j);
        for (std::size_t k = 0; k < r; ++k)
            if (ui(k, t) != 0) ui(k, i) -= ui(k, t);
    }

    void swap_rows(std::size_t i, std::size_t t) {
        if (i == t) return;
        for (std::size_t j = 0; j < c; ++j) std::swap(a(i, j), a(t, j));
        for (std::size_t j = 0; j < r; ++j) std::swap(u(i, j), u(t, j));
        for (std::size_t k = 0; k < r; ++k) std::swap(ui(k, i), ui(k, t));
    }

    void negate_row(std::size_t t) {
        for (std::size_t j = 0; j < c; ++j) a(t, j) = -a(t, j);
        for (std::size_t j = 0; j < r; ++j) u(t, j) = -u(t, j);
        for (std::size_t k = 0; k < r; ++k) ui(k, t) = -ui(k, t);
    }

    // col_j -= q * col_t
    void sub_col(std::size_t j, std::size_t t, const BigInt& q) {
        for (std::size_t i = 0; i < r; ++i)
            if (a(i, t) != 0) submul(a(i, j), q, a(i, t));
        for (std::size_t i = 0; i < c; ++i)
            if (v(i, t) != 0) submul(v(i, j), q, v(i, t));
        for (std::size_t k = 0; k < c; ++k)
            if (vi(j, k) != 0) addmul(vi(t, k), q, vi(j, k));
    }

    void swap_cols(std::size_t j, std::size_t t) {
        if (j == t) return;
        for (std::size_t i = 0; i < r; ++i) std::swap(a(i, j), a(i, t));
        for (std::size_t i = 0; i < c; ++i) std::swap(v(i, j), v(i, t));
        for (std::size_t k = 0; k < c; ++k) std::swap(vi(j, k), vi(t, k));
    }
};

using SparseRow = std::vector<std::pair<std::size_t, BigInt>>;

const BigInt* find_in_row(const SparseRow& row, std::size_t col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// dst -= q * src
void row_submul(SparseRow& dst, const SparseRow& src, const BigInt& q) {
    SparseRow out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(std::move(dst[i++]));
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            out.emplace_back(src[j].first, -q * src[j].second);
            ++j;
        } else {
            BigInt x = std::move(dst[i].second);
            submul(x, q, src[j].second);
            if (x != 0) out.emplace_back(dst[i].first, std::move(x));
            ++i;
            ++j;
        }
    }
    dst.swap(out);
}

}  // namespace

SmithData smith_decompose(const IntMatrix& m) {
    check_budget(m.rows() * m.cols(), "dense Smith form");
    return Reducer(m).run();
}

SmithForm smith_normal_form(const IntMatrix& m) {
    SmithData s = smith_decompose(m);
    return {s.U.to_sparse(), s.D.to_sparse(), s.V.to_sparse()};
}

std::vector<BigInt> elimination_diagonal(const IntMatrix& m) {
    std::vector<SparseRow> rows(m.rows());
    for (const auto& [k, v] : m.entries()) rows[k.first].emplace_back(k.second, v);
    std::vector<std::vector<std::size_t>> col_rows(m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& e : rows[i]) col_rows[e.first].push_back(i);
    std::vector<char> active(rows.size(), 1);
    std::vector<BigInt> diag;

    auto global_pivot = [&]() -> std::optional<std::pair<std::size_t, std::size_t>> {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        const BigInt* bv = nullptr;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!active[i]) continue;
            for (const auto& [c, x] : rows[i])
                if (!bv || mpz_cmpabs(x.get_mpz_t(), (*bv).get_mpz_t()) < 0) {
                    best = {i, c};
                    bv = &x;
                    if (mpz_cmpabs_ui(x.get_mpz_t(), 1) == 0) return best;
                }
        }
        return best;
    };

    for (auto piv = global_pivot(); piv; piv = global_pivot()) {
        auto [pi, pj] = *piv;
        for (;;) {
            // clear column pj below/above the pivot by row operations
            bool leftover = false;
            std::vector<std::size_t> list = col_rows[pj];
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
            std::vector<std::size_t> keep;
            for (std::size_t k : list) {
                if (!active[k]) continue;
                const BigInt* x = find_in_row(rows[k], pj);
                if (!x) continue;
                keep.push_back(k);
                if (k == pi) continue;
                BigInt q = tdiv(*x, *find_in_row(rows[pi], pj));
                if (q != 0) {
                    row_submul(rows[k], rows[pi], q);
                    for (const auto& e : rows[pi]) col_rows[e.first].push_back(k);
                }
                if (find_in_row(rows[k], pj)) leftover = true;
            }
            col_rows[pj] = keep;
            list = keep;
            if (leftover) {
                // smallest remainder in the column becomes the pivot
                std::size_t best = pi;
                const BigInt* bv = find_in_row(rows[pi], pj);
                for (std::size_t k : list) {
                    const BigInt* x = find_in_row(rows[k], pj);
                    if (x && mpz_cmpabs(x->get_mpz_t(), (*bv).get_mpz_t()) < 0) {
                        best = k;
                        bv = x;
                    }
                }
                pi = best;
                continue;
            }
            // column pj now lives only in row pi; column operations touch row pi only
            BigInt p = *find_in_row(rows[pi], pj);
            SparseRow reduced;
            for (auto& [c, x] : rows[pi]) {
                if (c == pj) {
                    reduced.emplace_back(c, x);
                    continue;
                }
                BigInt rem;
                mpz_tdiv_r(rem.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
                if (rem != 0) reduced.emplace_back(c, std::move(rem));
            }
            rows[pi].swap(reduced);
            if (rows[pi].size() == 1) {
                diag.push_back(abs(p));
                active[pi] = 0;
                break;
            }
            // a remainder in the pivot row is smaller than the pivot
            std::size_t bc = pj;
            const BigInt* bv = nullptr;
            for (const auto& [c, x] : rows[pi])
                if (c != pj && (!bv || mpz_cmpabs(x.get_mpz_t(), (*bv).get_mpz_t()) < 0)) {
                    bc = c;
                    bv = &x;
                }
            pj = bc;
        }
    }
    return diag;
}

std::size_t rank(const IntMatrix& m) { return elimination_diagonal(m).size(); }

std::vector<BigInt> invariant_factors(std::vector<BigInt> diag) {
    std::vector<BigInt> a;
    for (auto& d : diag) {
        if (d == 0) throw InputError("invariant_factors: zero entry");
        BigInt x = abs(d);
        if (x != 1) a.push_back(std::move(x));
    }
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            BigInt g = gcd(a[i], a[j]);
            BigInt l = a[i] / g * a[j];
            a[i] = g;
            a[j] = l;
        }
    std::vector<BigInt> out;
    for (auto& x : a)
        if (x != 1) out.push_back(std::move(x));
    return out;
}

std::optional<std::vector<BigInt>> integer_solve(const SmithData& s, const std::vector<BigInt>& b) {
    if (b.size() != s.U.rows()) throw InputError("integer_solve: right-hand side has wrong length");
    std::vector<BigInt> c = s.U.apply(b);
    std::vector<BigInt> y(s.V.rows());
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (j < s.rank) {
            if (!mpz_divisible_p(c[j].get_mpz_t(), s.diagonal[j].get_mpz_t())) return std::nullopt;
            y[j] = c[j] / s.diagonal[j];
        } else if (c[j] != 0) {
            return std::nullopt;
        }
    }
    return s.V.apply(y);
}

std::optional<std::vector<BigInt>> integer_solve(const IntMatrix& a, const std::vector<BigInt>& b) {
    return integer_solve(smith_decompose(a), b);
}

DenseMatrix kernel_basis(const IntMatrix& m) {
    SmithData s = smith_decompose(m);
    return s.V.cols_range(s.rank, m.cols() - s.rank);
}

}  // namespace hk::exactalg
