#include <set>

#include "hk/exactalg.hpp"

namespace hk::exactalg {

CompareReport graded_table_compare(const GradedTable& a, const GradedTable& b, CompareMode mode) {
    CompareReport rep;
    std::set<int> degrees;
    for (const auto& [n, _] : a) degrees.insert(n);
    for (const auto& [n, _] : b) degrees.insert(n);
    static const AbGroup zero;
    auto get = [](const GradedTable& t, int n) -> const AbGroup& {
        auto it = t.find(n);
        return it == t.end() ? zero : it->second;
    };

    if (mode == CompareMode::Exact) {
        for (int n : degrees)
            if (!a.count(n) || !b.count(n))
                throw InputError("exact comparison needs both tables on the same degrees; degree " +
                                 std::to_string(n) + " is missing from one side");
    }
    for (int n : degrees) {
        const auto& x = get(a, n);
        const auto& y = get(b, n);
        std::size_t rx = x.rational_rank(), ry = y.rational_rank();
        ((n % 2 == 0) ? rep.even_a : rep.odd_a) += rx;
        ((n % 2 == 0) ? rep.even_b : rep.odd_b) += ry;
        if (mode == CompareMode::Exact && !(x == y))
            rep.mismatches.push_back("degree " + std::to_string(n) + ": " + x.to_string() + " vs " + y.to_string());
        if (mode == CompareMode::Rational && rx != ry)
            rep.mismatches.push_back("degree " + std::to_string(n) + ": rank " + std::to_string(rx) + " vs " +
                                     std::to_string(ry));
    }
    if (mode == CompareMode::Z2GradedRational) {
        if (rep.even_a != rep.even_b)
            rep.mismatches.push_back("even: rank " + std::to_string(rep.even_a) + " vs " + std::to_string(rep.even_b));
        if (rep.odd_a != rep.odd_b)
            rep.mismatches.push_back("odd: rank " + std::to_string(rep.odd_a) + " vs " + std::to_string(rep.odd_b));
    }
    rep.pass = rep.mismatches.empty();
    return rep;
}

CompareReport graded_table_compare(const std::map<int, FgAbGroup>& a, const std::map<int, FgAbGroup>& b,
                                   CompareMode mode) {
    GradedTable x, y;
    for (const auto& [n, g] : a) x[n] = AbGroup::from(g);
    for (const auto& [n, g] : b) y[n] = AbGroup::from(g);
    return graded_table_compare(x, y, mode);
}

}  // namespace hk::exactalg
