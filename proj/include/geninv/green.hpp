#pragma once

#include <optional>

#include "geninv/ring.hpp"

namespace geninv {

enum class GreenKind { leq_l, leq_r, leq_h, rel_l, rel_r, rel_h };

// Decision path. `automatic` scans when the ring is enumerable within its
// bound, and otherwise falls back to the linear-algebra deciders (matrix
// towers over a scalar field, plus the closed rule for scalar fields).
enum class GreenPath { automatic, scan, linear };

// Explicit witnesses for a Green decision. Only the slots the kind calls for
// are populated:
//   left_x:  a = left_x * b      left_y:  b = left_y * a
//   right_x: a = b * right_x     right_y: b = a * right_y
struct GreenWitness {
    GreenKind kind;
    std::optional<Element> left_x, left_y, right_x, right_y;

    // Re-evaluates every stored witness equation.
    bool verify(const Element& a, const Element& b) const;
};

std::optional<GreenWitness> leq_l(const Element& a, const Element& b,
                                  GreenPath path = GreenPath::automatic);
std::optional<GreenWitness> leq_r(const Element& a, const Element& b,
                                  GreenPath path = GreenPath::automatic);
std::optional<GreenWitness> leq_h(const Element& a, const Element& b,
                                  GreenPath path = GreenPath::automatic);
std::optional<GreenWitness> green_l(const Element& a, const Element& b,
                                    GreenPath path = GreenPath::automatic);
std::optional<GreenWitness> green_r(const Element& a, const Element& b,
                                    GreenPath path = GreenPath::automatic);
std::optional<GreenWitness> green_h(const Element& a, const Element& b,
                                    GreenPath path = GreenPath::automatic);

}  // namespace geninv
