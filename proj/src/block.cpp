#include "geninv/block.hpp"

namespace geninv {

namespace {

RegularityCertificate certificate_for(const Element& x, const std::optional<Element>& choice,
                                      const char* name) {
    if (choice) return make_certificate(x, *choice);
    auto cert = inner_inverse(x);
    if (!cert) throw usage_error(std::string(name) + " must be regular");
    return std::move(*cert);
}

// Inner-inverse slot where non-regularity is an answer, not a usage error.
std::optional<RegularityCertificate> optional_certificate_for(
    const Element& x, const std::optional<Element>& choice) {
    if (choice) return make_certificate(x, *choice);
    return inner_inverse(x);
}

}  // namespace

Element Block2x2::to_element() const {
    RingPtr ring = Ring::matrix_ring(base(), 2);
    return Element::matrix(ring, {d1, d3, d2, d4});
}

Block2x2 Block2x2::from_element(const Element& m) {
    if (m.ring()->kind() != Ring::Kind::matrix || m.ring()->dim() != 2)
        throw usage_error("Block2x2 requires an element of a 2x2 matrix ring");
    return Block2x2{m.entry(0, 0), m.entry(0, 1), m.entry(1, 0), m.entry(1, 1)};
}

bool operator==(const Block2x2& a, const Block2x2& b) {
    return a.d1 == b.d1 && a.d3 == b.d3 && a.d2 == b.d2 && a.d4 == b.d4;
}

LtRegularity lt_regular_inner(const Element& d2, const Element& d1, const Element& d3,
                              const BlockChoices& choices) {
    const RingPtr& ring = d2.ring();
    const Element id = one(ring);
    const Element zr = zero(ring);
    RegularityCertificate c2 = certificate_for(d2, choices.d2_inner, "d2");
    RegularityCertificate c3 = certificate_for(d3, choices.d3_inner, "d3");
    const Element& d2p = c2.reflexive;
    const Element& d3p = c3.reflexive;

    Element w = (id - d3 * d3p) * d1 * (id - d2p * d2);
    auto cw = optional_certificate_for(w, choices.w_inner);
    if (!cw) return LtRegularity{false, std::move(w), std::nullopt, std::nullopt};

    const Element ww = w * cw->inner;
    Block2x2 mm{d2 * d2p, zr, (id - ww) * (id - d3 * d3p) * d1 * d2p,
                d3 * d3p + ww * (id - d3 * d3p)};
    Block2x2 m{d2, zr, d1, d3};
    Element mm_el = mm.to_element();
    Element m_el = m.to_element();
    if (mm_el * m_el != m_el || mm_el * mm_el != mm_el)
        throw invariant_violation("closed-form M M^- failed MM^- M = M or idempotency");
    return LtRegularity{true, std::move(w), cw->inner, std::move(mm)};
}

std::optional<SchurData> schur_decompose(const Block2x2& D, const BlockChoices& choices) {
    const RingPtr& ring = D.base();
    const Element id = one(ring);
    const Element zr = zero(ring);
    auto c4 = optional_certificate_for(D.d4, choices.d4_inner);
    if (!c4) return std::nullopt;
    const Element& d4p = c4->reflexive;

    Element e = id - D.d4 * d4p;
    Element f = id - d4p * D.d4;
    Element s = D.d1 - D.d3 * d4p * D.d2;
    Block2x2 P{id, D.d3 * d4p, zr, id};
    Block2x2 M{s, D.d3 * f, e * D.d2, D.d4};
    Block2x2 Q{id, zr, d4p * D.d2, id};
    if (Block2x2::from_element(P.to_element() * M.to_element() * Q.to_element()) != D)
        throw invariant_violation("Schur decomposition P*M*Q != D");
    return SchurData{std::move(e), std::move(f), std::move(s), std::move(P), std::move(M),
                     std::move(Q), d4p};
}

bool flattened_along_available(const RingPtr& base) {
    RingPtr ring2 = Ring::matrix_ring(base, 2, base->enumeration_bound());
    if (ring2->is_finite() && *ring2->cardinality() <= ring2->enumeration_bound()) return true;
    return ring2->scalar_base().is_scalar_field();
}

namespace {

// Cross-check a closed-form outcome against inverse_along in M:2:<base>.
void check_against_flattened(const Block2x2& A, const Block2x2& D, const BlockOutcome& out) {
    if (!flattened_along_available(A.base())) return;
    AlongOutcome direct = inverse_along(A.to_element(), D.to_element());
    if (out.status == BlockStatus::found) {
        if (!direct.exists())
            throw invariant_violation("closed form found an inverse the flattened ring denies");
        if (direct.result->b != out.result->to_element())
            throw invariant_violation("closed form disagrees with the flattened-ring inverse");
    } else {
        if (direct.exists())
            throw invariant_violation(
                "closed form found no inverse but the flattened ring has one");
    }
}

}  // namespace

BlockOutcome inverse_along_220(const Block2x2& A, const Block2x2& D, const BlockChoices& choices) {
    const RingPtr& ring = A.base();
    if (!ring->same_ring(*D.base()))
        throw usage_error("A and D live over different base rings");
    const Element id = one(ring);
    const Element zr = zero(ring);
    if (D.d4 != zr) throw usage_error("inverse_along_220 requires d4 = 0");

    const Element& a = A.d1;
    const Element& c = A.d3;
    const Element& b = A.d2;
    const Element& d = A.d4;

    RegularityCertificate c2 = certificate_for(D.d2, choices.d2_inner, "d2");
    RegularityCertificate c3 = certificate_for(D.d3, choices.d3_inner, "d3");
    const Element& d2p = c2.reflexive;
    const Element& d3p = c3.reflexive;

    AlongOutcome c_along = inverse_along(c, D.d2, d2p);
    if (!c_along.exists())
        throw usage_error("precondition failed: c along d2 does not exist");
    const Element& cb = c_along.result->b;

    // D = P M Q with P the swap, Q = I, M = [d2 0; d1 d3]; lt_regular_inner
    // supplies the MM^- idempotent (or decides that D is not regular)
    BlockChoices lifted = choices;
    lifted.d2_inner = c2.inner;
    lifted.d3_inner = c3.inner;
    LtRegularity lt = lt_regular_inner(D.d2, D.d1, D.d3, lifted);
    if (!lt.regular) {
        BlockOutcome out{BlockStatus::d_not_regular, std::nullopt, std::nullopt};
        check_against_flattened(A, D, out);
        return out;
    }

    RingPtr ring2 = Ring::matrix_ring(ring, 2);
    Element m_el = Block2x2{D.d2, zr, D.d1, D.d3}.to_element();
    Element p_el = Element::matrix(ring2, {zr, id, id, zr});
    Element unit = m_el * A.to_element() * p_el + one(ring2) - lt.mm_inner->to_element();
    Block2x2 U = Block2x2::from_element(unit);
    Element u = U.d1;
    if (u != c_along.result->u)
        throw invariant_violation("unit of c^||d2 disagrees with d2 c + 1 - d2 d2^+");
    if (U.d3 != D.d2 * a) throw invariant_violation("U(0,1) != d2 a");
    const Element& alpha = U.d2;
    const Element& beta = U.d4;
    Element xi = beta - alpha * cb * a;

    BlockData data(BlockVariant::lower_220, u, alpha, beta, xi);
    data.unit_matrix = unit;
    data.mm_inner_matrix = lt.mm_inner->to_element();
    data.w = lt.w;
    data.w_inner = lt.w_inner;
    data.c_along_d2 = cb;
    data.d2_plus = d2p;
    data.d3_plus = d3p;

    auto xi_inv = try_invert(xi);
    if (!xi_inv) {
        BlockOutcome out{BlockStatus::not_invertible, std::nullopt, std::move(data)};
        check_against_flattened(A, D, out);
        return out;
    }
    data.xi_inv = *xi_inv;

    Element top_l = *xi_inv * (D.d1 - alpha * cb);
    Element top_r = *xi_inv * D.d3;
    Element bot_l = cb * (id - a * top_l);
    Element bot_r = -(cb * a * *xi_inv * D.d3);
    BlockOutcome out{BlockStatus::found,
                     Block2x2{std::move(top_l), std::move(top_r), std::move(bot_l),
                              std::move(bot_r)},
                     std::move(data)};
    check_against_flattened(A, D, out);
    return out;
}

BlockOutcome inverse_along_general(const Block2x2& A, const Block2x2& D,
                                   const BlockChoices& choices) {
    const RingPtr& ring = A.base();
    if (!ring->same_ring(*D.base()))
        throw usage_error("A and D live over different base rings");
    const Element id = one(ring);
    const Element zr = zero(ring);

    const Element& a = A.d1;
    const Element& c = A.d3;
    const Element& b = A.d2;
    const Element& d = A.d4;

    auto sd = schur_decompose(D, choices);
    if (!sd) throw usage_error("precondition failed: d4 must be regular");
    const Element& d4p = sd->d4_plus;
    const Element& e = sd->e;
    const Element& f = sd->f;
    const Element& s = sd->s;
    if (D.d3 * f != zr) throw usage_error("hypothesis d3*f = 0 fails");

    auto cs = optional_certificate_for(s, choices.s_inner);
    if (!cs) throw usage_error("precondition failed: s must be regular");
    const Element& sp = cs->reflexive;
    AlongOutcome a_along = inverse_along(a, s, sp);
    if (!a_along.exists())
        throw usage_error("precondition failed: a along s does not exist");
    const Element& als = a_along.result->b;

    Element t = e * D.d2 * (id - sp * s);
    auto ct = optional_certificate_for(t, choices.t_inner);
    if (!ct) {
        BlockOutcome out{BlockStatus::d_not_regular, std::nullopt, std::nullopt};
        check_against_flattened(A, D, out);
        return out;
    }
    const Element tt = id - t * ct->inner;  // 1 - t t^-

    // I - MM^- for the lower triangular M = [s 0; ed2 d4], then the unit
    // U = MQAP + I - MM^-; u, alpha, beta are its entries
    RingPtr ring2 = Ring::matrix_ring(ring, 2);
    Element imm = Block2x2{id - s * sp, zr, -(tt * e * D.d2 * sp), tt * e}.to_element();
    Element mm = one(ring2) - imm;
    Element m_el = sd->M.to_element();
    if (mm * m_el != m_el || mm * mm != mm)
        throw invariant_violation("closed-form M M^- failed MM^- M = M or idempotency");
    Element unit =
        m_el * sd->Q.to_element() * A.to_element() * sd->P.to_element() + imm;
    Block2x2 U = Block2x2::from_element(unit);
    Element u = U.d1;
    if (u != a_along.result->u)
        throw invariant_violation("unit of a^||s disagrees with s a + 1 - s s^+");
    Element arg = a * D.d3 * d4p + c;
    if (U.d3 != s * arg) throw invariant_violation("U(0,1) != s(a d3 d4^+ + c)");
    const Element& u_inv = a_along.result->u_inv;
    const Element& alpha = U.d2;
    const Element& beta = U.d4;
    Element xi = beta - alpha * als * arg;

    BlockData data(BlockVariant::general, u, alpha, beta, xi);
    data.unit_matrix = unit;
    data.mm_inner_matrix = mm;
    data.e = e;
    data.f = f;
    data.s = s;
    data.s_plus = sp;
    data.d4_plus = d4p;
    data.t = t;
    data.t_inner = ct->inner;
    data.u_inv = u_inv;
    data.a_along_s = als;

    auto xi_inv = try_invert(xi);
    if (!xi_inv) {
        BlockOutcome out{BlockStatus::not_invertible, std::nullopt, std::move(data)};
        check_against_flattened(A, D, out);
        return out;
    }
    data.xi_inv = *xi_inv;

    Element x1 = ((id - als * a) * D.d3 * d4p - als * c) * *xi_inv;
    Element x2 = u_inv - x1 * alpha * u_inv;
    data.x1 = x1;
    data.x2 = x2;
    BlockOutcome out{BlockStatus::found,
                     Block2x2{x1 * D.d2 + x2 * s, x1 * D.d4,
                              *xi_inv * (D.d2 - alpha * als), *xi_inv * D.d4},
                     std::move(data)};
    check_against_flattened(A, D, out);
    return out;
}

}  // namespace geninv
