#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "geninv/errors.hpp"

namespace geninv {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

inline constexpr std::uint64_t default_enumeration_bound = std::uint64_t{1} << 20;

// A concrete unital ring: Z_n, GF(p), k-by-k matrices over another ring
// (nestable), or the rationals. Descriptors are immutable values shared by
// the elements living in them.
class Ring : public std::enable_shared_from_this<Ring> {
public:
    enum class Kind { modular, prime_field, matrix, rationals };

    static RingPtr modular(std::int64_t n,
                           std::uint64_t enumeration_bound = default_enumeration_bound);
    static RingPtr prime_field(std::int64_t p,
                               std::uint64_t enumeration_bound = default_enumeration_bound);
    static RingPtr matrix_ring(RingPtr base, int dim,
                               std::uint64_t enumeration_bound = default_enumeration_bound);
    static RingPtr rationals(std::uint64_t enumeration_bound = default_enumeration_bound);

    Kind kind() const { return kind_; }
    std::int64_t modulus() const;   // modular / prime_field only
    const RingPtr& base() const;    // matrix only
    int dim() const;                // matrix only

    // nullopt means infinite; UINT64_MAX means finite but beyond 64 bits.
    std::optional<std::uint64_t> cardinality() const { return cardinality_; }
    bool is_finite() const { return cardinality_.has_value(); }
    std::uint64_t enumeration_bound() const { return enumeration_bound_; }

    bool is_scalar() const { return kind_ != Kind::matrix; }
    bool is_scalar_field() const { return kind_ == Kind::prime_field || kind_ == Kind::rationals; }
    // Scalar ring at the bottom of a (possibly nested) matrix tower; *this if scalar.
    const Ring& scalar_base() const;
    // Product of dims down the matrix tower; 1 for scalars.
    int flat_dim() const;

    // Mathematical identity; the enumeration bound is not part of it.
    bool same_ring(const Ring& other) const;

    std::string spec() const;  // canonical spec string: "Z:6", "GF:7", "M:2:Z:6", "Q"

private:
    Ring() = default;
    Kind kind_ = Kind::modular;
    std::int64_t modulus_ = 0;
    RingPtr base_;
    int dim_ = 0;
    std::optional<std::uint64_t> cardinality_;
    std::uint64_t enumeration_bound_ = default_enumeration_bound;
};

bool is_prime(std::int64_t n);

// Reduced fraction: coprime numerator/denominator, positive denominator.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;
    friend bool operator==(const Fraction&, const Fraction&) = default;
};

// A canonical value in a ring context. Payloads are always in canonical form
// (least non-negative residue, reduced fraction, row-major entry grid), so
// structural equality is ring equality.
class Element {
public:
    const RingPtr& ring() const { return ring_; }

    std::int64_t residue() const;                 // modular / prime_field
    const Fraction& fraction() const;             // rationals
    const std::vector<Element>& entries() const;  // matrix, row-major dim*dim
    const Element& entry(int row, int col) const;

    friend bool operator==(const Element& a, const Element& b);
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    // Factories; each reduces its input to canonical form.
    static Element integer(const RingPtr& ring, std::int64_t value);
    static Element fraction_value(const RingPtr& ring, std::int64_t num, std::int64_t den);
    static Element matrix(const RingPtr& ring, std::vector<Element> entries);

private:
    Element(RingPtr ring, std::variant<std::int64_t, Fraction, std::vector<Element>> payload)
        : ring_(std::move(ring)), payload_(std::move(payload)) {}
    RingPtr ring_;
    std::variant<std::int64_t, Fraction, std::vector<Element>> payload_;
};

Element zero(const RingPtr& ring);
Element one(const RingPtr& ring);

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator*(const Element& a, const Element& b);
Element operator-(const Element& a);

// Two-sided unit inversion. nullopt = not a unit (a negative answer, not a
// fault). The returned inverse is verified on both sides.
std::optional<Element> try_invert(const Element& a);

bool is_idempotent(const Element& e);

// --- enumeration ----------------------------------------------------------
//
// Order is fixed: lexicographic on the canonical payload. Residues ascend
// 0..n-1; matrices compare entry-by-entry in row-major order with the first
// entry most significant. element_at(ring, i) is the i-th element in that
// order.

// Cardinality after the capability gate: throws capability_error for
// infinite rings and when the cardinality exceeds the enumeration bound.
std::uint64_t require_enumerable(const Ring& ring);
Element element_at(const RingPtr& ring, std::uint64_t index);
std::uint64_t index_of(const Element& a);
std::vector<Element> all_elements(const RingPtr& ring);

template <typename F>
void for_each_element(const RingPtr& ring, F&& f) {
    const std::uint64_t n = require_enumerable(*ring);
    for (std::uint64_t i = 0; i < n; ++i) f(element_at(ring, i));
}

// --- matrix tower flattening ----------------------------------------------
//
// M_k(M_j(B)) is the same ring as M_{k*j}(B); flatten/unflatten move elements
// across that identification. flatten is the identity on scalars and on
// matrices over scalar bases.

RingPtr flatten_ring(const RingPtr& ring);
Element flatten(const Element& a);
Element unflatten(const Element& flat, const RingPtr& nested_ring);

// --- literals and specs ----------------------------------------------------
//
// Ring specs:      Z:<n> | GF:<p> | M:<k>:<base-spec> | Q
// Element literals: integers for Z/GF, `n` or `n/d` for Q, bracketed
// row-major rows for matrices ([[1,0],[0,1]]), nesting allowed.

std::string format_element(const Element& a);
Element parse_element(const RingPtr& ring, std::string_view text);
RingPtr parse_ring_spec(std::string_view text);

}  // namespace geninv
