#include "geninv/along.hpp"

namespace geninv {

namespace {

void require_same_ring(const Element& a, const Element& b, const char* what) {
    if (!a.ring()->same_ring(*b.ring()))
        throw usage_error(std::string("mixed-ring operands for ") + what + ": " +
                          a.ring()->spec() + " vs " + b.ring()->spec());
}

}  // namespace

std::optional<JacobsonInverses> jacobson_invert(const Element& a, const Element& b) {
    require_same_ring(a, b, "jacobson_invert");
    const Element id = one(a.ring());
    const Element one_ab = id + a * b;
    const Element one_ba = id + b * a;
    auto inv_ab = try_invert(one_ab);
    if (!inv_ab) {
        if (try_invert(one_ba))
            throw invariant_violation("1+ab is not a unit but 1+ba is");
        return std::nullopt;
    }
    Element inv_ba = id - b * *inv_ab * a;
    if (one_ba * inv_ba != id || inv_ba * one_ba != id)
        throw invariant_violation("1 - b(1+ab)^-1 a failed to invert 1+ba");
    return JacobsonInverses{*inv_ab, inv_ba};
}

CornerReport corner_invertible(const Element& e, const Element& x) {
    require_same_ring(e, x, "corner_invertible");
    if (!is_idempotent(e)) throw usage_error("corner_invertible requires an idempotent e");
    const RingPtr& ring = e.ring();
    const Element id = one(ring);
    const Element zr = zero(ring);
    const Element exe = e * x * e;
    const bool global_unit = try_invert(exe + id - e).has_value();

    std::optional<Element> corner_inverse;
    if (e == zr) {
        // corner ring {0}: 0 is its own unity, so 0 is invertible there
        corner_inverse = zr;
    } else if (e == id) {
        corner_inverse = try_invert(exe);
    } else {
        const std::uint64_t n = require_enumerable(*ring);
        for (std::uint64_t i = 0; i < n; ++i) {
            Element y = element_at(ring, i);
            if (e * y * e == y && exe * y == e && y * exe == e) {
                corner_inverse = std::move(y);
                break;
            }
        }
    }
    const bool corner_unit = corner_inverse.has_value();
    if (global_unit != corner_unit)
        throw invariant_violation("corner lemma failed: global and corner answers disagree");
    return CornerReport{global_unit, corner_unit, std::move(corner_inverse)};
}

void verify_along_result(const AlongResult& r) {
    const Element id = one(r.a.ring());
    auto check = [](bool ok, const char* what) {
        if (!ok) throw invariant_violation(std::string("along result failed: ") + what);
    };
    check(r.u * r.u_inv == id && r.u_inv * r.u == id, "u*u_inv = u_inv*u = 1");
    check(r.v * r.v_inv == id && r.v_inv * r.v == id, "v*v_inv = v_inv*v = 1");
    check(r.d * r.a * r.b == r.d, "d*a*b = d");
    check(r.b * r.a * r.d == r.d, "b*a*d = d");
    check(r.h_witness.verify(r.b, r.d), "b <=_H d witness equations");
    if (r.u == r.d * r.a + id - r.d * r.inner_used) {
        check(r.b == r.u_inv * r.d, "b = u_inv*d");
        check(r.b == r.d * r.v_inv, "b = d*v_inv");
    }
}

AlongOutcome inverse_along(const Element& a, const Element& m, std::optional<Element> inner) {
    require_same_ring(a, m, "inverse_along");
    std::optional<RegularityCertificate> cert;
    if (inner) {
        cert = make_certificate(m, *inner);  // rejects an invalid supplied inner inverse
    } else {
        cert = inner_inverse(m);
        if (!cert) return AlongOutcome{AlongStatus::not_regular, std::nullopt, std::nullopt};
    }
    const Element id = one(a.ring());
    const Element u = m * a + id - m * cert->inner;
    const Element v = a * m + id - cert->inner * m;
    auto u_inv = try_invert(u);
    auto v_inv = try_invert(v);
    if (u_inv.has_value() != v_inv.has_value())
        throw invariant_violation("u and v disagree on invertibility");
    if (!u_inv) return AlongOutcome{AlongStatus::not_invertible, std::nullopt, u};

    Element b = *u_inv * m;
    if (b != m * *v_inv) throw invariant_violation("u^-1 m != m v^-1");
    GreenWitness h{GreenKind::leq_h, {}, {}, {}, {}};
    h.left_x = *u_inv;   // b = u^-1 * m
    h.right_x = *v_inv;  // b = m * v^-1
    AlongResult result{a, m, cert->inner, u, *u_inv, v, *v_inv, std::move(b), std::move(h)};
    verify_along_result(result);
    return AlongOutcome{AlongStatus::found, std::move(result), std::nullopt};
}

std::optional<ProductProblem> make_product_problem(const Element& a, const Element& p,
                                                   const Element& m, const Element& q,
                                                   std::optional<Element> p_witness,
                                                   std::optional<Element> q_witness,
                                                   std::optional<Element> m_inner) {
    require_same_ring(a, m, "inverse_along_product");
    require_same_ring(p, m, "inverse_along_product");
    require_same_ring(q, m, "inverse_along_product");

    std::optional<RegularityCertificate> cert;
    if (m_inner) {
        cert = make_certificate(m, *m_inner);
    } else {
        cert = inner_inverse(m);
        if (!cert) return std::nullopt;
    }

    Element pw = [&] {
        if (p_witness) {
            if (*p_witness * p * m != m)
                throw usage_error("supplied p' fails p'*p*m = m");
            return *p_witness;
        }
        auto w = leq_l(m, p * m);
        if (!w) throw usage_error("hypothesis m <=_L pm fails");
        return *w->left_x;
    }();
    Element qw = [&] {
        if (q_witness) {
            if (m * q * *q_witness != m)
                throw usage_error("supplied q' fails m*q*q' = m");
            return *q_witness;
        }
        auto w = leq_r(m, m * q);
        if (!w) throw usage_error("hypothesis m <=_R mq fails");
        return *w->right_x;
    }();
    return ProductProblem{a, p, m, q, std::move(pw), std::move(qw), std::move(*cert)};
}

AlongOutcome inverse_along_product(const ProductProblem& prob) {
    const Element& a = prob.a;
    const Element& p = prob.p;
    const Element& m = prob.m;
    const Element& q = prob.q;
    if (prob.p_witness * p * m != m || m * q * prob.q_witness != m)
        throw usage_error("product problem witnesses fail their equations");
    if (m * prob.m_cert.inner * m != m)
        throw usage_error("product problem certificate fails m*x*m = m");

    const Element id = one(a.ring());
    const Element& mi = prob.m_cert.inner;
    const Element u = m * q * a * p + id - m * mi;
    const Element v = q * a * p * m + id - mi * m;
    auto u_inv = try_invert(u);
    auto v_inv = try_invert(v);
    if (u_inv.has_value() != v_inv.has_value())
        throw invariant_violation("u and v disagree on invertibility");
    if (!u_inv) return AlongOutcome{AlongStatus::not_invertible, std::nullopt, u};

    const Element d = p * m * q;
    Element b = p * *u_inv * m * q;
    if (b != p * m * *v_inv * q) throw invariant_violation("p u^-1 m q != p m v^-1 q");
    GreenWitness h{GreenKind::leq_h, {}, {}, {}, {}};
    h.left_x = p * *u_inv * prob.p_witness;   // b = (p u^-1 p') d
    h.right_x = prob.q_witness * *v_inv * q;  // b = d (q' v^-1 q)
    AlongResult result{a, d, mi, u, *u_inv, v, *v_inv, std::move(b), std::move(h)};
    verify_along_result(result);
    return AlongOutcome{AlongStatus::found, std::move(result), std::nullopt};
}

AlongOutcome inverse_along_product(const Element& a, const Element& p, const Element& m,
                                   const Element& q) {
    auto prob = make_product_problem(a, p, m, q);
    if (!prob) return AlongOutcome{AlongStatus::not_regular, std::nullopt, std::nullopt};
    return inverse_along_product(*prob);
}

bool exists_via_h(const Element& a, const Element& d) {
    require_same_ring(a, d, "exists_via_h");
    return green_h(d, d * a * d).has_value();
}

std::vector<Element> along_candidates_by_definition(const Element& a, const Element& d) {
    require_same_ring(a, d, "along_candidates_by_definition");
    const RingPtr& ring = a.ring();
    const std::uint64_t n = require_enumerable(*ring);
    std::vector<Element> out;
    for (std::uint64_t i = 0; i < n; ++i) {
        Element b = element_at(ring, i);
        if (d * a * b == d && b * a * d == d && leq_h(b, d)) out.push_back(std::move(b));
    }
    return out;
}

std::vector<Element> along_oracle(const Element& a, const Element& d) {
    std::vector<Element> out = along_candidates_by_definition(a, d);
    if (out.size() > 1)
        throw invariant_violation("uniqueness violated: " + std::to_string(out.size()) +
                                  " inverses along " + format_element(d) + " for a = " +
                                  format_element(a) + " (first two: " + format_element(out[0]) +
                                  ", " + format_element(out[1]) + ")");
    return out;
}

}  // namespace geninv
