#include <string>

#include "hk/exactalg.hpp"

namespace hk::exactalg {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.entries_.emplace(Key{i, i}, 1);
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    std::size_t nc = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), nc);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != nc) throw InputError("ragged matrix rows");
        for (std::size_t j = 0; j < nc; ++j)
            if (rows[i][j] != 0) m.entries_.emplace(Key{i, j}, rows[i][j]);
    }
    return m;
}

BigInt IntMatrix::at(std::size_t r, std::size_t c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? BigInt(0) : it->second;
}

void IntMatrix::set(std::size_t r, std::size_t c, const BigInt& v) {
    if (r >= rows_ || c >= cols_)
        throw InputError("matrix index (" + std::to_string(r) + "," + std::to_string(c) + ") out of range");
    if (v == 0)
        entries_.erase({r, c});
    else
        entries_[{r, c}] = v;
}

void IntMatrix::add(std::size_t r, std::size_t c, const BigInt& v) {
    if (v == 0) return;
    if (r >= rows_ || c >= cols_)
        throw InputError("matrix index (" + std::to_string(r) + "," + std::to_string(c) + ") out of range");
    auto [it, inserted] = entries_.try_emplace({r, c}, v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0) entries_.erase(it);
    }
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (const auto& [k, v] : entries_) t.entries_.emplace(Key{k.second, k.first}, v);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw InputError("matrix product shape mismatch");
    // group the right factor by row
    std::vector<std::vector<std::pair<std::size_t, const BigInt*>>> by_row(o.rows_);
    for (const auto& [k, v] : o.entries_) by_row[k.first].push_back({k.second, &v});
    IntMatrix p(rows_, o.cols_);
    std::map<std::size_t, BigInt> acc;
    auto it = entries_.begin();
    while (it != entries_.end()) {
        std::size_t r = it->first.first;
        acc.clear();
        for (; it != entries_.end() && it->first.first == r; ++it)
            for (const auto& [c, w] : by_row[it->first.second]) acc[c] += it->second * *w;
        for (auto& [c, v] : acc)
            if (v != 0) p.entries_.emplace(Key{r, c}, std::move(v));
    }
    return p;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix sum shape mismatch");
    IntMatrix s = *this;
    for (const auto& [k, v] : o.entries_) s.add(k.first, k.second, v);
    return s;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const { return *this + o.scaled(-1); }

IntMatrix IntMatrix::scaled(const BigInt& s) const {
    IntMatrix m(rows_, cols_);
    if (s == 0) return m;
    for (const auto& [k, v] : entries_) m.entries_.emplace(k, v * s);
    return m;
}

std::vector<BigInt> IntMatrix::apply(const std::vector<BigInt>& v) const {
    if (v.size() != cols_) throw InputError("matrix-vector shape mismatch");
    std::vector<BigInt> out(rows_);
    for (const auto& [k, x] : entries_) out[k.first] += x * v[k.second];
    return out;
}

void IntMatrix::add_block(std::size_t r0, std::size_t c0, const IntMatrix& block) {
    if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_) throw InputError("block does not fit");
    for (const auto& [k, v] : block.entries_) add(r0 + k.first, c0 + k.second, v);
}

IntMatrix IntMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    IntMatrix m(nr, nc);
    for (const auto& [k, v] : entries_)
        if (k.first >= r0 && k.first < r0 + nr && k.second >= c0 && k.second < c0 + nc)
            m.entries_.emplace(Key{k.first - r0, k.second - c0}, v);
    return m;
}

IntMatrix block_diagonal(const IntMatrix& m, std::size_t copies) {
    IntMatrix out(m.rows() * copies, m.cols() * copies);
    for (std::size_t i = 0; i < copies; ++i) out.add_block(i * m.rows(), i * m.cols(), m);
    return out;
}

DenseMatrix::DenseMatrix(const IntMatrix& m) : DenseMatrix(m.rows(), m.cols()) {
    for (const auto& [k, v] : m.entries()) (*this)(k.first, k.second) = v;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& o) const {
    if (c_ != o.r_) throw InputError("matrix product shape mismatch");
    DenseMatrix p(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const BigInt& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.c_; ++j) {
                const BigInt& y = o(k, j);
                if (y != 0) mpz_addmul(p(i, j).get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            }
        }
    return p;
}

std::vector<BigInt> DenseMatrix::apply(const std::vector<BigInt>& v) const {
    if (v.size() != c_) throw InputError("matrix-vector shape mismatch");
    std::vector<BigInt> out(r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j)
            if ((*this)(i, j) != 0 && v[j] != 0)
                mpz_addmul(out[i].get_mpz_t(), (*this)(i, j).get_mpz_t(), v[j].get_mpz_t());
    return out;
}

IntMatrix DenseMatrix::to_sparse() const {
    IntMatrix m(r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j)
            if ((*this)(i, j) != 0) m.set(i, j, (*this)(i, j));
    return m;
}

DenseMatrix DenseMatrix::rows_range(std::size_t r0, std::size_t n) const {
    DenseMatrix m(n, c_);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(r0 + i, j);
    return m;
}

DenseMatrix DenseMatrix::cols_range(std::size_t c0, std::size_t n) const {
    DenseMatrix m(r_, n);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = (*this)(i, c0 + j);
    return m;
}

}  // namespace hk::exactalg
