#include "hk/groups.hpp"

namespace hk::groups {

Representation Representation::trivial(const GroupDesc& g, std::size_t rank) {
    Representation r;
    r.group = g;
    r.rank = rank;
    for (std::size_t i = 0; i < g.generators().size(); ++i) {
        r.gens.push_back(IntMatrix::identity(rank));
        r.gens_inv.push_back(IntMatrix::identity(rank));
    }
    return r;
}

Representation Representation::permutation(const GroupDesc& g, const std::vector<std::vector<std::size_t>>& perms) {
    if (perms.size() != g.generators().size())
        throw InputError("permutation representation needs one permutation per generator of " + g.name());
    Representation r;
    r.group = g;
    r.rank = perms.empty() ? 0 : perms[0].size();
    for (const auto& p : perms) {
        if (p.size() != r.rank) throw InputError("permutations of different sizes");
        IntMatrix m(r.rank, r.rank);
        for (std::size_t i = 0; i < p.size(); ++i) m.set(p[i], i, 1);
        r.gens.push_back(m);
        r.gens_inv.push_back(m.transpose());
    }
    return r;
}

IntMatrix Representation::act(const Element& g) const {
    IntMatrix acc = IntMatrix::identity(rank);
    for (const auto& [s, k] : group.word(g)) {
        const IntMatrix& m = k < 0 ? gens_inv[s] : gens[s];
        for (long long i = 0; i < (k < 0 ? -k : k); ++i) acc = acc * m;
    }
    return acc;
}

void Representation::validate() const {
    if (gens.size() != group.generators().size() || gens_inv.size() != gens.size())
        throw InputError("representation of " + group.name() + " needs " +
                         std::to_string(group.generators().size()) + " generator matrices");
    IntMatrix id = IntMatrix::identity(rank);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].rows() != rank || gens[i].cols() != rank)
            throw InputError("generator matrix " + std::to_string(i) + " is not " + std::to_string(rank) + "x" +
                             std::to_string(rank));
        if (!(gens[i] * gens_inv[i] == id) || !(gens_inv[i] * gens[i] == id))
            throw InputError("generator matrix " + std::to_string(i) + " is not invertible over Z as given");
    }
    auto eval = [&](const Word& w) {
        IntMatrix acc = id;
        for (const auto& [s, k] : w) {
            const IntMatrix& m = k < 0 ? gens_inv[s] : gens[s];
            for (long long j = 0; j < (k < 0 ? -k : k); ++j) acc = acc * m;
        }
        return acc;
    };
    for (const auto& rel : group.relators())
        if (!(eval(rel) == id)) throw InputError("representation violates a relator of " + group.name());
    if (group.family() == Family::FinitePermutation) {
        // g -> act(word(g)) is a homomorphism iff act(s g) = act(s) act(g)
        for (const auto& g : group.elements())
            for (std::size_t s = 0; s < gens.size(); ++s)
                if (!(act(group.multiply(group.generators()[s], g)) == gens[s] * act(g)))
                    throw InputError("representation is not compatible with the multiplication of " + group.name());
    }
}

GroupRingElt gr_normalize(GroupRingElt x) {
    std::sort(x.begin(), x.end());
    GroupRingElt out;
    for (auto& [g, c] : x) {
        if (!out.empty() && out.back().first == g) {
            out.back().second += c;
        } else {
            out.emplace_back(std::move(g), c);
        }
        if (out.back().second == 0) out.pop_back();
    }
    return out;
}

GroupRingElt gr_multiply(const GroupDesc& g, const GroupRingElt& x, const GroupRingElt& y) {
    GroupRingElt out;
    for (const auto& [a, c] : x)
        for (const auto& [b, d] : y) out.emplace_back(g.multiply(a, b), c * d);
    return gr_normalize(std::move(out));
}

GroupRingElt gr_add(const GroupRingElt& x, const GroupRingElt& y) {
    GroupRingElt out = x;
    out.insert(out.end(), y.begin(), y.end());
    return gr_normalize(std::move(out));
}

GroupRingElt RingMatrix::at(std::size_t r, std::size_t c) const {
    auto it = e_.find({r, c});
    return it == e_.end() ? GroupRingElt{} : it->second;
}

void RingMatrix::add(std::size_t r, std::size_t c, const GroupRingElt& v) {
    if (r >= rows_ || c >= cols_) throw InputError("group ring matrix index out of range");
    auto s = gr_add(at(r, c), v);
    if (s.empty()) {
        e_.erase({r, c});
    } else {
        e_[{r, c}] = std::move(s);
    }
}

}  // namespace hk::groups
