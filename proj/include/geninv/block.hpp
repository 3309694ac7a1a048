#pragma once

#include <optional>

#include "geninv/along.hpp"

namespace geninv {

// One element of the 2x2 matrix ring over a common base, held entrywise:
//   [ d1  d3 ]
//   [ d2  d4 ]
struct Block2x2 {
    Element d1, d3, d2, d4;

    const RingPtr& base() const { return d1.ring(); }
    Element to_element() const;  // the same value in M:2:<base>
    static Block2x2 from_element(const Element& m);

    friend bool operator==(const Block2x2& a, const Block2x2& b);
    friend bool operator!=(const Block2x2& a, const Block2x2& b) { return !(a == b); }
};

// Optional explicit inner-inverse choices, one slot per intermediate. Each is
// validated before use; missing slots fall back to the canonical choice.
// Reflexive inverses are always derived as x^- * x * x^-.
struct BlockChoices {
    std::optional<Element> d2_inner, d3_inner, d4_inner, s_inner, w_inner, t_inner;
};

// Regularity of the lower triangular M = [d2 0; d1 d3] via
// w = (1 - d3 d3^+) d1 (1 - d2^+ d2), with the closed-form M M^- idempotent.
// Preconditions (usage_error): d2, d3 regular.
struct LtRegularity {
    bool regular;  // w regular, equivalently M regular
    Element w;
    std::optional<Element> w_inner;
    std::optional<Block2x2> mm_inner;  // M*M^-; checked idempotent with MM^- M = M
};
LtRegularity lt_regular_inner(const Element& d2, const Element& d1, const Element& d3,
                              const BlockChoices& choices = {});

// D = P*M*Q with P, Q unit triangular and M = [s d3f; ed2 d4], where
// e = 1 - d4 d4^+, f = 1 - d4^+ d4, s = d1 - d3 d4^+ d2.
// nullopt when d4 is not regular. P*M*Q = D is verified entrywise.
struct SchurData {
    Element e, f, s;
    Block2x2 P, M, Q;
    Element d4_plus;
};
std::optional<SchurData> schur_decompose(const Block2x2& D, const BlockChoices& choices = {});

enum class BlockVariant { lower_220, general };

// Intermediates of the closed-form computation, kept so tests can re-evaluate
// their defining equations. Slots only used by one variant are optional.
struct BlockData {
    BlockData(BlockVariant variant, Element u, Element alpha, Element beta, Element xi)
        : variant(variant),
          u(std::move(u)),
          alpha(std::move(alpha)),
          beta(std::move(beta)),
          xi(std::move(xi)) {}

    BlockVariant variant;
    Element u;
    Element alpha, beta, xi;
    std::optional<Element> xi_inv;
    // the unit U = MQAP + I - MM^- and the MM^- idempotent, as elements of
    // the 2x2 matrix ring (u, alpha, beta are entries of U)
    std::optional<Element> unit_matrix, mm_inner_matrix;
    // lower_220
    std::optional<Element> w, w_inner, c_along_d2, d2_plus, d3_plus;
    // general
    std::optional<Element> e, f, s, s_plus, d4_plus, t, t_inner, u_inv, a_along_s, x1, x2;
};

enum class BlockStatus { found, not_invertible, d_not_regular };

struct BlockOutcome {
    BlockStatus status = BlockStatus::found;
    std::optional<Block2x2> result;
    std::optional<BlockData> data;  // absent when d_not_regular cuts the computation short
    bool exists() const { return status == BlockStatus::found; }
};

// Closed-form inverse of A = [a c; b d] along the (2,2,0) matrix
// D = [d1 d3; d2 0]. Preconditions (usage_error): D.d4 = 0; d2, d3 regular;
// c^||d2 exists. d_not_regular when w is not regular (D itself is then not
// regular). On success the result is checked against the inverse computed
// directly in the flattened 2x2 matrix ring whenever that ring supports it.
BlockOutcome inverse_along_220(const Block2x2& A, const Block2x2& D,
                               const BlockChoices& choices = {});

// Closed-form inverse of A = [a c; b d] along a general D with d4 regular.
// Preconditions (usage_error): d4 regular; d3*f = 0; s regular; a^||s exists.
// d_not_regular when t = e d2 (1 - s^+ s) is not regular. Cross-checked
// against the flattened ring like inverse_along_220.
BlockOutcome inverse_along_general(const Block2x2& A, const Block2x2& D,
                                   const BlockChoices& choices = {});

// Whether inverse_along is computable in M:2:<base> (used to gate the
// flattened cross-checks).
bool flattened_along_available(const RingPtr& base);

}  // namespace geninv
