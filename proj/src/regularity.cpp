#include "geninv/regularity.hpp"

namespace geninv {

RegularityCertificate make_certificate(const Element& a, const Element& inner) {
    if (!a.ring()->same_ring(*inner.ring()))
        throw usage_error("inner inverse from " + inner.ring()->spec() + " for an element of " +
                          a.ring()->spec());
    if (a * inner * a != a)
        throw usage_error("supplied inner inverse fails a*x*a = a");
    Element reflexive = inner * a * inner;
    if (a * reflexive * a != a || reflexive * a * reflexive != reflexive)
        throw invariant_violation("derived reflexive inverse failed its laws");
    return RegularityCertificate{a, inner, reflexive};
}

std::optional<RegularityCertificate> scan_inner_inverse(const Element& a) {
    const RingPtr& ring = a.ring();
    const std::uint64_t n = require_enumerable(*ring);
    for (std::uint64_t i = 0; i < n; ++i) {
        Element x = element_at(ring, i);
        if (a * x * a == a) return make_certificate(a, x);
    }
    return std::nullopt;
}

namespace {

// Reduce A to P*A*Q = diag(I_r, 0) with P, Q invertible, by row and column
// elimination over a scalar field base. Returns Q*diag(I_r,0)*P.
Element rank_factorization_inner(const Element& a) {
    const RingPtr& ring = a.ring();
    const RingPtr& base = ring->base();
    const int k = ring->dim();
    const Element zr = zero(base);

    auto grid = [&](bool identity) {
        std::vector<Element> g;
        g.reserve(static_cast<std::size_t>(k) * k);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                g.push_back(identity && r == c ? one(base) : zr);
        return g;
    };
    std::vector<Element> u = a.entries();
    std::vector<Element> p = grid(true);
    std::vector<Element> q = grid(true);
    auto at = [&](std::vector<Element>& m, int r, int c) -> Element& {
        return m[static_cast<std::size_t>(r) * k + c];
    };

    int rank = 0;
    for (int t = 0; t < k; ++t) {
        // first non-zero entry in the trailing block, row-major
        int pr = -1, pc = -1;
        for (int r = t; r < k && pr < 0; ++r)
            for (int c = t; c < k; ++c)
                if (at(u, r, c) != zr) {
                    pr = r;
                    pc = c;
                    break;
                }
        if (pr < 0) break;
        for (int c = 0; c < k; ++c) std::swap(at(u, t, c), at(u, pr, c));
        for (int c = 0; c < k; ++c) std::swap(at(p, t, c), at(p, pr, c));
        for (int r = 0; r < k; ++r) std::swap(at(u, r, t), at(u, r, pc));
        for (int r = 0; r < k; ++r) std::swap(at(q, r, t), at(q, r, pc));
        Element inv = *try_invert(at(u, t, t));
        for (int c = 0; c < k; ++c) at(u, t, c) = inv * at(u, t, c);
        for (int c = 0; c < k; ++c) at(p, t, c) = inv * at(p, t, c);
        for (int r = 0; r < k; ++r) {
            if (r == t || at(u, r, t) == zr) continue;
            Element factor = at(u, r, t);
            for (int c = 0; c < k; ++c) at(u, r, c) = at(u, r, c) - factor * at(u, t, c);
            for (int c = 0; c < k; ++c) at(p, r, c) = at(p, r, c) - factor * at(p, t, c);
        }
        for (int c = 0; c < k; ++c) {
            if (c == t || at(u, t, c) == zr) continue;
            Element factor = at(u, t, c);
            for (int r = 0; r < k; ++r) at(u, r, c) = at(u, r, c) - at(u, r, t) * factor;
            for (int r = 0; r < k; ++r) at(q, r, c) = at(q, r, c) - at(q, r, t) * factor;
        }
        ++rank;
    }
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c)
            if (at(u, r, c) != ((r == c && r < rank) ? one(base) : zr))
                throw invariant_violation("rank factorization did not reach diag(I_r, 0)");

    Element pm = Element::matrix(ring, std::move(p));
    Element qm = Element::matrix(ring, std::move(q));
    Element dm = Element::matrix(ring, std::move(u));
    return qm * dm * pm;
}

}  // namespace

RegularityCertificate field_inner_inverse(const Element& a) {
    const RingPtr& ring = a.ring();
    if (ring->is_scalar_field()) {
        auto inv = try_invert(a);
        return make_certificate(a, inv ? *inv : zero(ring));
    }
    if (ring->kind() == Ring::Kind::matrix && ring->scalar_base().is_scalar_field()) {
        if (ring->base()->kind() == Ring::Kind::matrix) {
            Element flat_inner = rank_factorization_inner(flatten(a));
            return make_certificate(a, unflatten(flat_inner, ring));
        }
        return make_certificate(a, rank_factorization_inner(a));
    }
    throw capability_error("no field algorithm for inner inverses in " + ring->spec());
}

std::optional<RegularityCertificate> inner_inverse(const Element& a) {
    const Ring& ring = *a.ring();
    if (ring.is_finite() && *ring.cardinality() <= ring.enumeration_bound())
        return scan_inner_inverse(a);
    if (ring.is_scalar_field() ||
        (ring.kind() == Ring::Kind::matrix && ring.scalar_base().is_scalar_field()))
        return field_inner_inverse(a);
    throw capability_error("regularity in " + ring.spec() +
                           " is undecidable here: not enumerable and no field algorithm applies");
}

std::vector<Element> all_inner_inverses(const Element& a) {
    const RingPtr& ring = a.ring();
    const std::uint64_t n = require_enumerable(*ring);
    std::vector<Element> out;
    for (std::uint64_t i = 0; i < n; ++i) {
        Element x = element_at(ring, i);
        if (a * x * a == a) out.push_back(std::move(x));
    }
    return out;
}

bool is_regular(const Element& a) { return inner_inverse(a).has_value(); }

}  // namespace geninv
