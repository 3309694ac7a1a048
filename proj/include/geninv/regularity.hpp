#pragma once

#include <optional>
#include <vector>

#include "geninv/ring.hpp"

namespace geninv {

// An element with a verified inner inverse (a*x*a = a) and the reflexive
// inverse derived from it (x*a*x).
struct RegularityCertificate {
    Element a;
    Element inner;
    Element reflexive;
};

// Validates the supplied inner inverse (usage_error on failure) and derives
// the reflexive inverse.
RegularityCertificate make_certificate(const Element& a, const Element& inner);

// Deterministic inner inverse: first in enumeration order when the ring is
// finite and within its enumeration bound, otherwise the canonical
// rank-factorization output for matrix towers over a scalar field.
// nullopt = not regular (decided by exhaustive scan).
std::optional<RegularityCertificate> inner_inverse(const Element& a);

// Forced paths, kept separate so they can cross-check each other.
std::optional<RegularityCertificate> scan_inner_inverse(const Element& a);
RegularityCertificate field_inner_inverse(const Element& a);

// Complete list of x with a*x*a = a, in enumeration order. Finite rings only.
std::vector<Element> all_inner_inverses(const Element& a);

bool is_regular(const Element& a);

}  // namespace geninv
