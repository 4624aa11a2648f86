#include <map>

#include "hk/groups.hpp"

namespace hk::groups {

namespace {

GroupRingElt one_minus(const GroupDesc& g, const Element& x) { return gr_normalize({{g.identity(), 1}, {x, -1}}); }

GroupRingElt norm(const GroupDesc& g, const Element& x, long long order) {
    GroupRingElt out;
    Element acc = g.identity();
    for (long long k = 0; k < order; ++k) {
        out.emplace_back(acc, 1);
        acc = g.multiply(acc, x);
    }
    return gr_normalize(std::move(out));
}

GroupRingElt unit(const GroupDesc& g, long long c = 1) { return {{g.identity(), c}}; }

GResolution trivial_resolution(const GroupDesc& g, std::size_t depth) {
    GResolution f;
    f.group = g;
    f.kind = "trivial";
    f.ranks.assign(depth + 1, 0);
    f.ranks[0] = 1;
    for (std::size_t n = 1; n <= depth; ++n) f.boundaries.emplace_back(f.ranks[n - 1], f.ranks[n]);
    f.augmentation = {1};
    return f;
}

}  // namespace

bool GResolution::is_complex() const {
    if (ranks.size() != boundaries.size() + 1 || augmentation.size() != (ranks.empty() ? 0 : ranks[0])) return false;
    for (std::size_t n = 0; n < boundaries.size(); ++n)
        if (boundaries[n].rows() != ranks[n] || boundaries[n].cols() != ranks[n + 1]) return false;
    // augmentation after d_1
    if (!boundaries.empty())
        for (std::size_t k = 0; k < ranks[1]; ++k) {
            long long s = 0;
            for (std::size_t j = 0; j < ranks[0]; ++j)
                for (const auto& [h, c] : boundaries[0].at(j, k)) s += c * augmentation[j];
            if (s != 0) return false;
        }
    // d_n(d_{n+1}(x_i)) coefficient on x_j: sum_k d_{n+1}(k,i) * d_n(j,k)
    for (std::size_t n = 0; n + 1 < boundaries.size(); ++n) {
        const auto& lo = boundaries[n];
        const auto& hi = boundaries[n + 1];
        for (std::size_t i = 0; i < hi.cols(); ++i)
            for (std::size_t j = 0; j < lo.rows(); ++j) {
                GroupRingElt acc;
                for (std::size_t k = 0; k < hi.rows(); ++k) {
                    auto a = hi.at(k, i);
                    if (a.empty()) continue;
                    auto b = lo.at(j, k);
                    if (b.empty()) continue;
                    acc = gr_add(acc, gr_multiply(group, a, b));
                }
                if (!acc.empty()) return false;
            }
    }
    return true;
}

GResolution periodic_resolution(long long m, std::size_t depth) {
    if (m < 2) throw InputError("periodic resolution needs m >= 2, got " + std::to_string(m));
    GResolution f;
    f.group = GroupDesc::cyclic(m);
    f.kind = "periodic";
    f.ranks.assign(depth + 1, 1);
    const Element t = f.group.generators()[0];
    for (std::size_t n = 1; n <= depth; ++n) {
        RingMatrix d(1, 1);
        d.add(0, 0, n % 2 ? one_minus(f.group, t) : norm(f.group, t, m));
        f.boundaries.push_back(d);
    }
    f.augmentation = {1};
    return f;
}

GResolution z_resolution(std::size_t depth) {
    GResolution f;
    f.group = GroupDesc::integers();
    f.kind = "z";
    f.ranks.assign(depth + 1, 0);
    f.ranks[0] = 1;
    if (depth >= 1) f.ranks[1] = 1;
    for (std::size_t n = 1; n <= depth; ++n) {
        RingMatrix d(f.ranks[n - 1], f.ranks[n]);
        if (n == 1) d.add(0, 0, one_minus(f.group, {1}));
        f.boundaries.push_back(d);
    }
    f.augmentation = {1};
    return f;
}

GResolution bar_resolution(const GroupDesc& g, std::size_t depth) {
    // the unnormalized bar complex of the trivial group is not minimal; use Z itself
    if (g.order() == 1) return trivial_resolution(g, depth);
    const std::size_t q = g.order();
    const auto& els = g.elements();
    GResolution f;
    f.group = g;
    f.kind = "bar";
    std::size_t r = 1;
    for (std::size_t n = 0; n <= depth; ++n) {
        f.ranks.push_back(r);
        if (n < depth) {
            r *= q;
            check_budget(r, "bar resolution rank");
        }
    }
    for (std::size_t n = 1; n <= depth; ++n) {
        RingMatrix d(f.ranks[n - 1], f.ranks[n]);
        std::vector<std::size_t> t(n);
        for (std::size_t col = 0; col < f.ranks[n]; ++col) {
            // digits of col in base q, most significant first
            std::size_t c = col;
            for (std::size_t i = n; i-- > 0;) {
                t[i] = c % q;
                c /= q;
            }
            auto encode = [&](const std::vector<std::size_t>& v) {
                std::size_t x = 0;
                for (std::size_t e : v) x = x * q + e;
                return x;
            };
            // g1 [g2 | ... | gn]
            d.add(encode({t.begin() + 1, t.end()}), col, {{els[t[0]], 1}});
            for (std::size_t i = 0; i + 1 < n; ++i) {
                std::vector<std::size_t> v;
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == i) {
                        v.push_back(g.index_of(g.multiply(els[t[i]], els[t[i + 1]])));
                        ++j;
                    } else {
                        v.push_back(t[j]);
                    }
                }
                d.add(encode(v), col, unit(g, (i + 1) % 2 ? -1 : 1));
            }
            d.add(encode({t.begin(), t.end() - 1}), col, unit(g, n % 2 ? -1 : 1));
        }
        f.boundaries.push_back(std::move(d));
    }
    f.augmentation = {1};
    return f;
}

GResolution wall_resolution(const GroupDesc& g, const Element& x, long long a, const Element& y, long long b,
                            std::size_t depth) {
    GResolution f;
    f.group = g;
    f.kind = "wall";
    for (std::size_t n = 0; n <= depth; ++n) f.ranks.push_back(n == 1 ? 3 : 2);
    for (std::size_t n = 1; n <= depth; ++n) {
        RingMatrix d(f.ranks[n - 1], f.ranks[n]);
        // vertex-stabilizer periodic pieces
        if (n % 2) {
            d.add(0, 0, one_minus(g, x));
            d.add(1, 1, one_minus(g, y));
        } else {
            d.add(0, 0, norm(g, x, a));
            d.add(1, 1, norm(g, y, b));
        }
        // the edge generator lives in degree 1 and maps to x_A - x_B
        if (n == 1) {
            d.add(0, 2, unit(g, 1));
            d.add(1, 2, unit(g, -1));
        }
        f.boundaries.push_back(std::move(d));
    }
    f.augmentation = {1, 1};
    return f;
}

GResolution amalgam_resolution(long long a, long long b, std::size_t depth) {
    GroupDesc g = GroupDesc::amalgam(a, b);
    return wall_resolution(g, {0, 1}, a, {1, 1}, b, depth);
}

GResolution resolution_for(const GroupDesc& g, std::size_t depth) {
    switch (g.family()) {
        case Family::Trivial: return trivial_resolution(g, depth);
        case Family::FiniteCyclic:
            if (g.param_a() == 1) return trivial_resolution(g, depth);
            return periodic_resolution(g.param_a(), depth);
        case Family::FreeAbelianRank1: return z_resolution(depth);
        case Family::InfiniteDihedral: return wall_resolution(g, {0, 1}, 2, {1, 1}, 2, depth);
        case Family::Amalgam: return amalgam_resolution(g.param_a(), g.param_b(), depth);
        case Family::FinitePermutation:
            if (g.order() == 1) return trivial_resolution(g, depth);
            return bar_resolution(g, depth);
    }
    return trivial_resolution(g, depth);
}

namespace {

class ActionCache {
public:
    explicit ActionCache(const Representation& m) : m_(m) {}
    const IntMatrix& get(const Element& g) {
        auto it = cache_.find(g);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(g, m_.act(g)).first->second;
    }

private:
    const Representation& m_;
    std::map<Element, IntMatrix> cache_;
};

void check_groups(const GResolution& f, const Representation& m) {
    if (!(f.group == m.group))
        throw InputError("resolution is over " + f.group.name() + " but the module is over " + m.group.name());
}

}  // namespace

exactalg::ChainComplex tensor_complex(const GResolution& f, const Representation& m, const CoeffRing& coeffs) {
    check_groups(f, m);
    ActionCache cache(m);
    const std::size_t r = m.rank;
    std::vector<std::size_t> ranks;
    for (auto n : f.ranks) ranks.push_back(n * r);
    std::vector<IntMatrix> ds;
    for (const auto& d : f.boundaries) {
        check_budget(d.rows() * r + d.cols() * r, "tensor complex size");
        IntMatrix out(d.rows() * r, d.cols() * r);
        for (const auto& [key, elt] : d.entries()) {
            IntMatrix block(r, r);
            for (const auto& [h, c] : elt) block = block + cache.get(f.group.inverse(h)).scaled(big(c));
            out.add_block(key.first * r, key.second * r, block);
        }
        ds.push_back(std::move(out));
    }
    return exactalg::ChainComplex(0, ranks, ds, coeffs);
}

exactalg::ChainComplex hom_complex(const GResolution& f, const Representation& m, const CoeffRing& coeffs) {
    check_groups(f, m);
    ActionCache cache(m);
    const std::size_t r = m.rank;
    const std::size_t depth = f.depth();
    std::vector<std::size_t> ranks;
    for (std::size_t j = 0; j <= depth; ++j) ranks.push_back(f.ranks[depth - j] * r);
    std::vector<IntMatrix> ds;
    // boundaries[j]: Hom(F_n) -> Hom(F_{n+1}) with n = depth - j - 1
    for (std::size_t j = 0; j < depth; ++j) {
        std::size_t n = depth - j - 1;
        const auto& d = f.boundaries[n];  // F_{n+1} -> F_n
        IntMatrix out(d.cols() * r, d.rows() * r);
        for (const auto& [key, elt] : d.entries()) {
            IntMatrix block(r, r);
            for (const auto& [h, c] : elt) block = block + cache.get(h).scaled(big(c));
            out.add_block(key.second * r, key.first * r, block);
        }
        ds.push_back(std::move(out));
    }
    return exactalg::ChainComplex(-static_cast<int>(depth), ranks, ds, coeffs);
}

std::map<int, FgAbGroup> group_homology(const GResolution& f, const Representation& m, std::size_t depth,
                                        const CoeffRing& coeffs) {
    if (f.depth() < depth + 1)
        throw InputError("resolution of depth " + std::to_string(f.depth()) + " cannot give homology in degree " +
                         std::to_string(depth));
    auto all = exactalg::homology_all(tensor_complex(f, m, coeffs));
    std::map<int, FgAbGroup> out;
    for (int n = 0; n <= static_cast<int>(depth); ++n) out[n] = all[n];
    return out;
}

std::map<int, FgAbGroup> group_homology(const Representation& m, std::size_t depth, const CoeffRing& coeffs) {
    m.validate();
    return group_homology(resolution_for(m.group, depth + 1), m, depth, coeffs);
}

std::map<int, FgAbGroup> group_cohomology(const Representation& m, std::size_t depth, const CoeffRing& coeffs) {
    m.validate();
    auto all = exactalg::homology_all(hom_complex(resolution_for(m.group, depth + 1), m, coeffs));
    std::map<int, FgAbGroup> out;
    for (int n = 0; n <= static_cast<int>(depth); ++n) out[n] = all[-n];
    return out;
}

namespace {

// Z-matrix of d_n on the basis (generator, group element) = g . x_k.
IntMatrix regular_boundary(const GResolution& f, std::size_t n) {
    const auto& g = f.group;
    const std::size_t q = g.order();
    const auto& els = g.elements();
    const auto& d = f.boundaries[n - 1];
    IntMatrix out(d.rows() * q, d.cols() * q);
    for (const auto& [key, elt] : d.entries())
        for (std::size_t gi = 0; gi < q; ++gi)
            for (const auto& [h, c] : elt)
                out.add(key.first * q + g.index_of(g.multiply(els[gi], h)), key.second * q + gi, big(c));
    return out;
}

IntMatrix regular_augmentation(const GResolution& f) {
    const std::size_t q = f.group.order();
    IntMatrix out(1, f.ranks[0] * q);
    for (std::size_t k = 0; k < f.ranks[0]; ++k)
        for (std::size_t gi = 0; gi < q; ++gi)
            if (f.augmentation[k]) out.set(0, k * q + gi, big(f.augmentation[k]));
    return out;
}

}  // namespace

bool exact_in_low_degrees(const GResolution& f) {
    if (!f.group.is_finite()) throw DomainError("exactness check needs a finite group");
    const std::size_t q = f.group.order();
    std::vector<std::size_t> rk;  // rk[n]: rank of the map out of degree n (n = 0 is augmentation)
    rk.push_back(exactalg::rank(regular_augmentation(f)));
    for (std::size_t n = 1; n <= f.depth(); ++n) rk.push_back(exactalg::rank(regular_boundary(f, n)));
    if (rk[0] != 1) return false;
    for (std::size_t n = 0; n < f.depth(); ++n)
        if (f.ranks[n] * q != rk[n] + rk[n + 1]) return false;
    return true;
}

std::vector<IntMatrix> lift_comparison(const GResolution& f, const GResolution& h) {
    if (!(f.group == h.group)) throw InputError("comparison maps need resolutions of the same group");
    const auto& g = f.group;
    const std::size_t q = g.order();
    const auto& els = g.elements();
    const std::size_t depth = std::min(f.depth(), h.depth());
    std::vector<IntMatrix> out;

    // translate a Z-vector on (generator, element) by left multiplication with x
    auto translate = [&](const std::vector<BigInt>& v, const Element& x) {
        std::vector<BigInt> w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            std::size_t k = i / q, gi = i % q;
            w[k * q + g.index_of(g.multiply(x, els[gi]))] += v[i];
        }
        return w;
    };

    auto aug = exactalg::smith_decompose(regular_augmentation(h));
    IntMatrix f0(h.ranks[0] * q, f.ranks[0]);
    for (std::size_t k = 0; k < f.ranks[0]; ++k) {
        auto y = exactalg::integer_solve(aug, {big(f.augmentation[k])});
        if (!y) throw DomainError("augmentations are incompatible");
        for (std::size_t i = 0; i < y->size(); ++i)
            if ((*y)[i] != 0) f0.set(i, k, (*y)[i]);
    }
    out.push_back(f0);
    for (std::size_t n = 1; n <= depth; ++n) {
        const IntMatrix& prev = out.back();
        auto sd = exactalg::smith_decompose(regular_boundary(h, n));
        IntMatrix fn(h.ranks[n] * q, f.ranks[n]);
        for (std::size_t k = 0; k < f.ranks[n]; ++k) {
            std::vector<BigInt> target(h.ranks[n - 1] * q);
            for (const auto& [key, elt] : f.boundaries[n - 1].entries()) {
                if (key.second != k) continue;
                std::vector<BigInt> img(prev.rows());
                for (std::size_t i = 0; i < prev.rows(); ++i) img[i] = prev.at(i, key.first);
                for (const auto& [x, c] : elt) {
                    auto t = translate(img, x);
                    for (std::size_t i = 0; i < t.size(); ++i) target[i] += big(c) * t[i];
                }
            }
            auto y = exactalg::integer_solve(sd, target);
            if (!y) throw DomainError("comparison map does not lift in degree " + std::to_string(n));
            for (std::size_t i = 0; i < y->size(); ++i)
                if ((*y)[i] != 0) fn.set(i, k, (*y)[i]);
        }
        out.push_back(fn);
    }
    return out;
}

}  // namespace hk::groups
