#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "hk/groups.hpp"

namespace hk::groups {

struct GroupDesc::FiniteData {
    std::vector<Element> elements;  // sorted
    std::vector<Word> words;        // parallel to elements
};

namespace {

long long mod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

GroupDesc::GroupDesc() { build_finite(); }

GroupDesc GroupDesc::trivial() { return GroupDesc(); }

GroupDesc GroupDesc::cyclic(long long m) {
    if (m < 1) throw InputError("cyclic group order must be positive, got " + std::to_string(m));
    GroupDesc g;
    g.family_ = Family::FiniteCyclic;
    g.a_ = m;
    g.gens_ = {{1 % m}};
    g.build_finite();
    return g;
}

GroupDesc GroupDesc::integers() {
    GroupDesc g;
    g.family_ = Family::FreeAbelianRank1;
    g.gens_ = {{1}};
    g.fin_.reset();
    return g;
}

GroupDesc GroupDesc::infinite_dihedral() {
    GroupDesc g;
    g.family_ = Family::InfiniteDihedral;
    g.gens_ = {{1, 0}, {0, 1}};
    g.fin_.reset();
    return g;
}

GroupDesc GroupDesc::amalgam(long long a, long long b) {
    if (a < 2 || b < 2)
        throw InputError("amalgam factors need order >= 2, got " + std::to_string(a) + " and " + std::to_string(b));
    GroupDesc g;
    g.family_ = Family::Amalgam;
    g.a_ = a;
    g.b_ = b;
    g.gens_ = {{0, 1}, {1, 1}};
    g.fin_.reset();
    return g;
}

GroupDesc GroupDesc::permutation(std::size_t degree, const std::vector<std::vector<long long>>& generators) {
    GroupDesc g;
    g.family_ = Family::FinitePermutation;
    g.a_ = static_cast<long long>(degree);
    for (std::size_t i = 0; i < generators.size(); ++i) {
        const auto& p = generators[i];
        if (p.size() != degree)
            throw InputError("permutation generator " + std::to_string(i) + " has " + std::to_string(p.size()) +
                             " entries, expected " + std::to_string(degree));
        std::vector<bool> seen(degree);
        for (long long v : p) {
            if (v < 0 || v >= static_cast<long long>(degree) || seen[static_cast<std::size_t>(v)])
                throw InputError("permutation generator " + std::to_string(i) + " is not a permutation of 0.." +
                                 std::to_string(degree - 1));
            seen[static_cast<std::size_t>(v)] = true;
        }
        g.gens_.push_back(p);
    }
    g.build_finite();
    return g;
}

void GroupDesc::build_finite() {
    auto data = std::make_shared<FiniteData>();
    const Element e = identity();
    std::map<Element, Word> found{{e, {}}};
    std::deque<Element> queue{e};
    while (!queue.empty()) {
        Element g = queue.front();
        queue.pop_front();
        for (std::size_t s = 0; s < gens_.size(); ++s) {
            Element h = multiply(gens_[s], g);
            if (found.count(h)) continue;
            Word w{{s, 1}};
            const Word& wg = found[g];
            w.insert(w.end(), wg.begin(), wg.end());
            found.emplace(h, std::move(w));
            check_budget(found.size(), "finite group enumeration");
            queue.push_back(h);
        }
    }
    for (auto& [g, w] : found) {
        data->elements.push_back(g);
        data->words.push_back(std::move(w));
    }
    fin_ = std::move(data);
}

std::string GroupDesc::name() const {
    switch (family_) {
        case Family::Trivial: return "1";
        case Family::FiniteCyclic: return "Z/" + std::to_string(a_);
        case Family::FreeAbelianRank1: return "Z";
        case Family::InfiniteDihedral: return "D_inf";
        case Family::Amalgam: return "Z/" + std::to_string(a_) + " * Z/" + std::to_string(b_);
        case Family::FinitePermutation: return "Perm(" + std::to_string(a_) + ", order " + std::to_string(order()) + ")";
    }
    return "?";
}

bool GroupDesc::is_finite() const {
    return family_ == Family::Trivial || family_ == Family::FiniteCyclic || family_ == Family::FinitePermutation;
}

bool GroupDesc::is_abelian() const {
    switch (family_) {
        case Family::Trivial:
        case Family::FiniteCyclic:
        case Family::FreeAbelianRank1: return true;
        case Family::InfiniteDihedral:
        case Family::Amalgam: return false;
        case Family::FinitePermutation:
            for (const auto& x : gens_)
                for (const auto& y : gens_)
                    if (multiply(x, y) != multiply(y, x)) return false;
            return true;
    }
    return false;
}

std::size_t GroupDesc::order() const {
    if (!is_finite()) throw DomainError(name() + " is infinite");
    return fin_->elements.size();
}

Element GroupDesc::identity() const {
    switch (family_) {
        case Family::Trivial:
        case Family::Amalgam: return {};
        case Family::FiniteCyclic:
        case Family::FreeAbelianRank1: return {0};
        case Family::InfiniteDihedral: return {0, 0};
        case Family::FinitePermutation: {
            Element e(static_cast<std::size_t>(a_));
            std::iota(e.begin(), e.end(), 0);
            return e;
        }
    }
    return {};
}

Element GroupDesc::reduce_amalgam(Element w) const {
    Element out;
    for (std::size_t i = 0; i + 1 < w.size(); i += 2) {
        long long f = w[i];
        long long ord = f == 0 ? a_ : b_;
        long long e = mod(w[i + 1], ord);
        if (e == 0) continue;
        if (!out.empty() && out[out.size() - 2] == f) {
            long long merged = mod(out.back() + e, ord);
            if (merged == 0) {
                out.resize(out.size() - 2);
            } else {
                out.back() = merged;
            }
        } else {
            out.push_back(f);
            out.push_back(e);
        }
    }
    return out;
}

Element GroupDesc::multiply(const Element& g, const Element& h) const {
    switch (family_) {
        case Family::Trivial: return {};
        case Family::FiniteCyclic: return {mod(g[0] + h[0], a_)};
        case Family::FreeAbelianRank1: return {g[0] + h[0]};
        case Family::InfiniteDihedral: return {g[0] + (g[1] ? -h[0] : h[0]), (g[1] + h[1]) % 2};
        case Family::Amalgam: {
            Element w = g;
            w.insert(w.end(), h.begin(), h.end());
            return reduce_amalgam(std::move(w));
        }
        case Family::FinitePermutation: {
            Element out(g.size());
            for (std::size_t p = 0; p < g.size(); ++p) out[p] = g[static_cast<std::size_t>(h[p])];
            return out;
        }
    }
    return {};
}

Element GroupDesc::inverse(const Element& g) const {
    switch (family_) {
        case Family::Trivial: return {};
        case Family::FiniteCyclic: return {mod(-g[0], a_)};
        case Family::FreeAbelianRank1: return {-g[0]};
        case Family::InfiniteDihedral: return g[1] ? g : Element{-g[0], 0};
        case Family::Amalgam: {
            Element out;
            for (std::size_t i = g.size(); i >= 2; i -= 2) {
                long long f = g[i - 2];
                out.push_back(f);
                out.push_back((f == 0 ? a_ : b_) - g[i - 1]);
            }
            return out;
        }
        case Family::FinitePermutation: {
            Element out(g.size());
            for (std::size_t p = 0; p < g.size(); ++p) out[static_cast<std::size_t>(g[p])] = static_cast<long long>(p);
            return out;
        }
    }
    return {};
}

Element GroupDesc::power(const Element& g, long long k) const {
    Element base = k < 0 ? inverse(g) : g;
    unsigned long long n = static_cast<unsigned long long>(k < 0 ? -k : k);
    Element acc = identity();
    while (n) {
        if (n & 1) acc = multiply(acc, base);
        n >>= 1;
        if (n) base = multiply(base, base);
    }
    return acc;
}

Element GroupDesc::conjugate(const Element& g, const Element& by) const {
    return multiply(multiply(by, g), inverse(by));
}

bool GroupDesc::contains(const Element& g) const {
    switch (family_) {
        case Family::Trivial: return g.empty();
        case Family::FiniteCyclic: return g.size() == 1 && g[0] >= 0 && g[0] < a_;
        case Family::FreeAbelianRank1: return g.size() == 1;
        case Family::InfiniteDihedral: return g.size() == 2 && (g[1] == 0 || g[1] == 1);
        case Family::Amalgam: {
            if (g.size() % 2) return false;
            for (std::size_t i = 0; i < g.size(); i += 2) {
                if (g[i] != 0 && g[i] != 1) return false;
                long long ord = g[i] == 0 ? a_ : b_;
                if (g[i + 1] <= 0 || g[i + 1] >= ord) return false;
                if (i >= 2 && g[i - 2] == g[i]) return false;
            }
            return true;
        }
        case Family::FinitePermutation:
            return std::binary_search(fin_->elements.begin(), fin_->elements.end(), g);
    }
    return false;
}

std::optional<long long> GroupDesc::element_order(const Element& g) const {
    switch (family_) {
        case Family::Trivial: return 1;
        case Family::FiniteCyclic: return a_ / std::gcd(g[0], a_);
        case Family::FreeAbelianRank1:
            if (g[0] == 0) return 1;
            return std::nullopt;
        case Family::InfiniteDihedral:
            if (g[1] == 1) return 2;
            if (g[0] == 0) return 1;
            return std::nullopt;
        case Family::Amalgam: {
            // conjugate until cyclically reduced; finite order iff the core is a single syllable
            Element c = g;
            while (c.size() >= 4 && c[0] == c[c.size() - 2]) {
                Element u{c[0], c[1]};
                c = multiply(multiply(inverse(u), c), u);
            }
            if (c.empty()) return 1;
            if (c.size() == 2) {
                long long ord = c[0] == 0 ? a_ : b_;
                return ord / std::gcd(c[1], ord);
            }
            return std::nullopt;
        }
        case Family::FinitePermutation: {
            long long l = 1;
            std::vector<bool> seen(g.size());
            for (std::size_t p = 0; p < g.size(); ++p) {
                if (seen[p]) continue;
                long long len = 0;
                for (std::size_t q = p; !seen[q]; q = static_cast<std::size_t>(g[q])) {
                    seen[q] = true;
                    ++len;
                }
                l = std::lcm(l, len);
            }
            return l;
        }
    }
    return std::nullopt;
}

Word GroupDesc::word(const Element& g) const {
    switch (family_) {
        case Family::Trivial: return {};
        case Family::FiniteCyclic:
        case Family::FreeAbelianRank1:
            if (g[0] == 0) return {};
            return {{0, g[0]}};
        case Family::InfiniteDihedral: {
            Word w;
            if (g[0] != 0) w.push_back({0, g[0]});
            if (g[1]) w.push_back({1, 1});
            return w;
        }
        case Family::Amalgam: {
            Word w;
            for (std::size_t i = 0; i < g.size(); i += 2) w.push_back({static_cast<std::size_t>(g[i]), g[i + 1]});
            return w;
        }
        case Family::FinitePermutation: return fin_->words[index_of(g)];
    }
    return {};
}

Element GroupDesc::evaluate(const Word& w) const {
    Element acc = identity();
    for (const auto& [s, k] : w) {
        if (s >= gens_.size()) throw InputError("word uses generator " + std::to_string(s) + " of " + name());
        acc = multiply(acc, power(gens_[s], k));
    }
    return acc;
}

std::vector<Word> GroupDesc::relators() const {
    switch (family_) {
        case Family::FiniteCyclic: return {{{0, a_}}};
        case Family::InfiniteDihedral: return {{{1, 2}}, {{1, 1}, {0, 1}, {1, 1}, {0, 1}}};
        case Family::Amalgam: return {{{0, a_}}, {{1, b_}}};
        default: return {};
    }
}

const std::vector<Element>& GroupDesc::elements() const {
    if (!is_finite()) throw DomainError(name() + " is infinite; its elements cannot be listed");
    return fin_->elements;
}

std::size_t GroupDesc::index_of(const Element& g) const {
    const auto& els = elements();
    auto it = std::lower_bound(els.begin(), els.end(), g);
    if (it == els.end() || *it != g) throw InputError(format(g) + " is not an element of " + name());
    return static_cast<std::size_t>(it - els.begin());
}

std::vector<Element> GroupDesc::ball(std::size_t radius) const {
    std::set<Element> seen{identity()};
    std::vector<Element> frontier{identity()};
    std::vector<Element> steps = gens_;
    for (const auto& s : gens_) steps.push_back(inverse(s));
    for (std::size_t r = 0; r < radius; ++r) {
        std::vector<Element> next;
        for (const auto& g : frontier)
            for (const auto& s : steps) {
                Element h = multiply(g, s);
                if (seen.insert(h).second) next.push_back(h);
            }
        check_budget(seen.size(), "word ball enumeration");
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

std::string GroupDesc::format(const Element& g) const {
    auto join = [](const Element& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s;
    };
    switch (family_) {
        case Family::Trivial: return "e";
        case Family::FiniteCyclic:
        case Family::FreeAbelianRank1:
            if (g[0] == 0) return "e";
            return g[0] == 1 ? "t" : "t^" + std::to_string(g[0]);
        case Family::InfiniteDihedral: return "(" + join(g) + ")";
        case Family::Amalgam: {
            if (g.empty()) return "e";
            std::string s;
            for (std::size_t i = 0; i < g.size(); i += 2) {
                if (i) s += " ";
                s += g[i] == 0 ? "x" : "y";
                if (g[i + 1] != 1) s += "^" + std::to_string(g[i + 1]);
            }
            return s;
        }
        case Family::FinitePermutation: return "[" + join(g) + "]";
    }
    return "?";
}

}  // namespace hk::groups
