#pragma once

#include <optional>
#include <vector>

#include "geninv/green.hpp"
#include "geninv/regularity.hpp"

namespace geninv {

// Both inverses of the pair 1+ab, 1+ba. The second is produced by the
// identity (1+ba)^-1 = 1 - b(1+ab)^-1 a and then verified, not recomputed.
struct JacobsonInverses {
    Element inv_one_plus_ab;
    Element inv_one_plus_ba;
};
// nullopt when 1+ab is not a unit; in that case 1+ba is checked to be a
// non-unit as well.
std::optional<JacobsonInverses> jacobson_invert(const Element& a, const Element& b);

// exe + 1 - e invertible in R versus exe invertible in the corner ring eRe
// (whose unity is e; for e = 0 the corner is the trivial ring and 0 counts
// as invertible). The two answers are checked to agree.
struct CornerReport {
    bool global_unit;
    bool corner_unit;
    std::optional<Element> corner_inverse;  // y in eRe with (exe)y = y(exe) = e
};
CornerReport corner_invertible(const Element& e, const Element& x);

// A successful inverse-along computation with everything needed to re-verify
// it: the units u, v built from inner_used, their inverses, the inverse b and
// an H-witness certifying b <=_H d.
struct AlongResult {
    Element a;
    Element d;
    Element inner_used;
    Element u, u_inv;
    Element v, v_inv;
    Element b;
    GreenWitness h_witness;
};
// Re-evaluates the defining equations; throws invariant_violation on any
// failure. When u = d*a + 1 - d*inner_used (the along-an-element shape) the
// identities b = u_inv*d = d*v_inv are checked too.
void verify_along_result(const AlongResult& r);

enum class AlongStatus { found, not_regular, not_invertible };

struct AlongOutcome {
    AlongStatus status = AlongStatus::found;
    std::optional<AlongResult> result;   // found
    std::optional<Element> failed_unit;  // not_invertible: the u that is no unit
    bool exists() const { return status == AlongStatus::found; }
};

// The inverse of a along m via the unit criterion: u = ma + 1 - m m^(1).
// A supplied inner inverse is validated, never silently replaced.
AlongOutcome inverse_along(const Element& a, const Element& m,
                           std::optional<Element> inner = std::nullopt);

// Inputs of the product form: d = p*m*q with m regular and the divisibility
// hypotheses m <=_L pm, m <=_R mq held as explicit witnesses.
struct ProductProblem {
    Element a, p, m, q;
    Element p_witness;  // p' with p'*p*m = m
    Element q_witness;  // q' with m*q*q' = m
    RegularityCertificate m_cert;
};

// Builds a ProductProblem, deriving missing witnesses with the deterministic
// Green choices. nullopt = m not regular. usage_error when a supplied witness
// or inner inverse fails its equation, or the divisibility hypotheses fail.
std::optional<ProductProblem> make_product_problem(
    const Element& a, const Element& p, const Element& m, const Element& q,
    std::optional<Element> p_witness = std::nullopt,
    std::optional<Element> q_witness = std::nullopt,
    std::optional<Element> m_inner = std::nullopt);

// The inverse of a along p*m*q via u = mqap + 1 - m m^(1). On success the
// result carries d = pmq, both units and the proof-shaped H-witness.
AlongOutcome inverse_along_product(const ProductProblem& prob);
AlongOutcome inverse_along_product(const Element& a, const Element& p, const Element& m,
                                   const Element& q);

// Existence via the H-criterion: a is invertible along d iff d H dad.
bool exists_via_h(const Element& a, const Element& d);

// Definitional scan: every b with dab = d = bad and b <=_H d, in enumeration
// order. No uniqueness assertion.
std::vector<Element> along_candidates_by_definition(const Element& a, const Element& d);

// The scan with the uniqueness invariant enforced: finding two candidates
// would falsify uniqueness of the inverse along an element, so it aborts
// loudly rather than return.
std::vector<Element> along_oracle(const Element& a, const Element& d);

}  // namespace geninv
