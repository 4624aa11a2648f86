#include <algorithm>

#include "hk/hkpipeline.hpp"

namespace hk::hkpipeline {

std::size_t E2Page::at(int p, int q) const {
    auto it = dims.find({p, q});
    return it == dims.end() ? 0 : it->second;
}

std::vector<int> E2Page::rows() const {
    std::vector<int> out;
    for (const auto& [pq, d] : dims)
        if (d != 0 && std::find(out.begin(), out.end(), pq.second) == out.end()) out.push_back(pq.second);
    std::sort(out.rbegin(), out.rend());
    return out;
}

int E2Page::max_p() const {
    int m = 0;
    for (const auto& [pq, d] : dims) m = std::max(m, pq.first);
    return m;
}

E2Page e2_page(const std::map<int, std::vector<std::size_t>>& rows) {
    E2Page page;
    for (const auto& [q, row] : rows) {
        if (q > 0) throw InputError("rows must have q <= 0", "/rows/" + std::to_string(q));
        for (std::size_t p = 0; p < row.size(); ++p)
            if (row[p] != 0) page.dims[{static_cast<int>(p), q}] = row[p];
    }
    return page;
}

E2Page e2_page(const std::vector<std::size_t>& group_homology_dims, const std::map<int, std::size_t>& cohomology_dims) {
    std::map<int, std::vector<std::size_t>> rows;
    for (const auto& [j, c] : cohomology_dims) {
        if (j < 0) throw InputError("cohomology degrees must be non-negative", "/cohomology/" + std::to_string(j));
        auto& row = rows[-j];
        for (auto h : group_homology_dims) row.push_back(h * c);
    }
    return e2_page(rows);
}

std::string to_string(TwoRowResult::Status s) {
    switch (s) {
        case TwoRowResult::Status::Unique: return "unique";
        case TwoRowResult::Status::Multiple: return "multiple";
        case TwoRowResult::Status::Inconsistent: return "inconsistent";
    }
    return "?";
}

namespace {

std::pair<std::size_t, std::size_t> e2_totals(const E2Page& page) {
    std::size_t even = 0, odd = 0;
    for (const auto& [pq, d] : page.dims) ((pq.first + pq.second) % 2 == 0 ? even : odd) += d;
    return {even, odd};
}

// Source row of d^2 (the lower one) and its column bounds.
struct Shape {
    bool has_differential = false;
    int lo = 0;
    std::vector<std::pair<int, std::size_t>> columns;  // (p, max rank)
};

Shape shape(const E2Page& page) {
    const auto rows = page.rows();
    if (rows.size() > 2) throw InputError("the page has more than two nonzero rows");
    Shape s;
    if (rows.size() < 2) return s;
    if (rows[0] - rows[1] != 1) throw InputError("the two nonzero rows are not adjacent");
    s.has_differential = true;
    s.lo = rows[1];
    for (int p = 2; p <= page.max_p(); ++p) {
        const std::size_t b = std::min(page.at(p, s.lo), page.at(p - 2, s.lo + 1));
        if (b != 0) s.columns.emplace_back(p, b);
    }
    return s;
}

}  // namespace

std::pair<std::size_t, std::size_t> infinity_totals(const E2Page& page, const std::map<int, std::size_t>& ranks) {
    auto [even, odd] = e2_totals(page);
    const Shape s = shape(page);
    for (const auto& [p, r] : ranks) {
        if (r == 0) continue;
        auto it = std::find_if(s.columns.begin(), s.columns.end(), [p = p](const auto& c) { return c.first == p; });
        if (it == s.columns.end() || r > it->second)
            throw InputError("rank " + std::to_string(r) + " is impossible at column " + std::to_string(p));
        // source and target have opposite total parity
        even -= r;
        odd -= r;
    }
    return {even, odd};
}

TwoRowResult two_row_solve(const E2Page& page, std::size_t even_target, std::size_t odd_target) {
    TwoRowResult res;
    std::tie(res.e2_even, res.e2_odd) = e2_totals(page);
    const Shape s = shape(page);
    std::map<int, std::size_t> cur;
    std::size_t visited = 0;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        check_budget(++visited, "two-row rank search");
        if (i == s.columns.size()) {
            if (infinity_totals(page, cur) == std::make_pair(even_target, odd_target)) res.solutions.push_back(cur);
            return;
        }
        const auto [p, bound] = s.columns[i];
        for (std::size_t r = 0; r <= bound; ++r) {
            if (r == 0)
                cur.erase(p);
            else
                cur[p] = r;
            self(self, i + 1);
        }
        cur.erase(p);
    };
    rec(rec, 0);
    res.status = res.solutions.empty()     ? TwoRowResult::Status::Inconsistent
                 : res.solutions.size() == 1 ? TwoRowResult::Status::Unique
                                             : TwoRowResult::Status::Multiple;
    return res;
}

}  // namespace hk::hkpipeline
