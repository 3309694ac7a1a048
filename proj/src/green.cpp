#include "geninv/green.hpp"

namespace geninv {

namespace {

Element transpose(const Element& a) {
    const RingPtr& ring = a.ring();
    const int k = ring->dim();
    std::vector<Element> es;
    es.reserve(static_cast<std::size_t>(k) * k);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) es.push_back(a.entry(c, r));
    return Element::matrix(ring, std::move(es));
}

// Solve B*X = A over a matrix ring whose base is a scalar field; free
// variables are set to zero. nullopt when inconsistent.
std::optional<Element> solve_linear(const Element& b, const Element& a) {
    const RingPtr& ring = b.ring();
    const RingPtr& base = ring->base();
    const int k = ring->dim();
    const Element zr = zero(base);

    std::vector<std::vector<Element>> aug;  // [B | A], k x 2k
    aug.reserve(k);
    for (int r = 0; r < k; ++r) {
        std::vector<Element> row;
        row.reserve(2 * static_cast<std::size_t>(k));
        for (int c = 0; c < k; ++c) row.push_back(b.entry(r, c));
        for (int c = 0; c < k; ++c) row.push_back(a.entry(r, c));
        aug.push_back(std::move(row));
    }

    int row = 0;
    std::vector<int> pivot_cols;
    for (int col = 0; col < k && row < k; ++col) {
        int pr = -1;
        for (int r = row; r < k; ++r)
            if (aug[r][col] != zr) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(aug[row], aug[pr]);
        Element inv = *try_invert(aug[row][col]);
        for (int c = 0; c < 2 * k; ++c) aug[row][c] = inv * aug[row][c];
        for (int r = 0; r < k; ++r) {
            if (r == row || aug[r][col] == zr) continue;
            Element factor = aug[r][col];
            for (int c = 0; c < 2 * k; ++c) aug[r][c] = aug[r][c] - factor * aug[row][c];
        }
        pivot_cols.push_back(col);
        ++row;
    }
    for (int r = row; r < k; ++r)
        for (int c = k; c < 2 * k; ++c)
            if (aug[r][c] != zr) return std::nullopt;

    std::vector<Element> x(static_cast<std::size_t>(k) * k, zr);
    for (int i = 0; i < row; ++i)
        for (int c = 0; c < k; ++c)
            x[static_cast<std::size_t>(pivot_cols[i]) * k + c] = aug[i][k + c];
    return Element::matrix(ring, std::move(x));
}

enum class Side { left, right };  // left: a = x*b, right: a = b*x

std::optional<Element> find_factor_scan(const Element& a, const Element& b, Side side) {
    const RingPtr& ring = a.ring();
    const std::uint64_t n = require_enumerable(*ring);
    for (std::uint64_t i = 0; i < n; ++i) {
        Element x = element_at(ring, i);
        if ((side == Side::left ? x * b : b * x) == a) return x;
    }
    return std::nullopt;
}

std::optional<Element> find_factor_linear(const Element& a, const Element& b, Side side) {
    const RingPtr& ring = a.ring();
    if (ring->is_scalar_field()) {
        // units act transitively: a <= b iff a = 0 or b != 0
        if (a == zero(ring)) return zero(ring);
        auto binv = try_invert(b);
        if (!binv) return std::nullopt;
        return a * *binv;  // scalar fields are commutative; works for both sides
    }
    if (ring->kind() == Ring::Kind::matrix && ring->scalar_base().is_scalar_field()) {
        if (ring->base()->kind() == Ring::Kind::matrix) {
            auto flat = find_factor_linear(flatten(a), flatten(b), side);
            if (!flat) return std::nullopt;
            return unflatten(*flat, ring);
        }
        if (side == Side::right) return solve_linear(b, a);
        auto xt = solve_linear(transpose(b), transpose(a));
        if (!xt) return std::nullopt;
        return transpose(*xt);
    }
    throw capability_error("linear Green decision needs a field tower; ring is " + ring->spec());
}

std::optional<Element> find_factor(const Element& a, const Element& b, Side side, GreenPath path) {
    if (!a.ring()->same_ring(*b.ring()))
        throw usage_error("mixed-ring operands for a Green decision: " + a.ring()->spec() + " vs " +
                          b.ring()->spec());
    switch (path) {
        case GreenPath::scan:
            return find_factor_scan(a, b, side);
        case GreenPath::linear:
            return find_factor_linear(a, b, side);
        case GreenPath::automatic: {
            const Ring& ring = *a.ring();
            if (ring.is_finite() && *ring.cardinality() <= ring.enumeration_bound())
                return find_factor_scan(a, b, side);
            if (ring.is_scalar_field() ||
                (ring.kind() == Ring::Kind::matrix && ring.scalar_base().is_scalar_field()))
                return find_factor_linear(a, b, side);
            require_enumerable(ring);  // throws the capability diagnostic
            return std::nullopt;
        }
    }
    throw invariant_violation("unreachable Green path");
}

}  // namespace

bool GreenWitness::verify(const Element& a, const Element& b) const {
    const bool want_left = kind == GreenKind::leq_l || kind == GreenKind::leq_h ||
                           kind == GreenKind::rel_l || kind == GreenKind::rel_h;
    const bool want_right = kind == GreenKind::leq_r || kind == GreenKind::leq_h ||
                            kind == GreenKind::rel_r || kind == GreenKind::rel_h;
    const bool want_back = kind == GreenKind::rel_l || kind == GreenKind::rel_r ||
                           kind == GreenKind::rel_h;
    if (want_left) {
        if (!left_x || *left_x * b != a) return false;
        if (want_back && (!left_y || *left_y * a != b)) return false;
    }
    if (want_right) {
        if (!right_x || b * *right_x != a) return false;
        if (want_back && (!right_y || a * *right_y != b)) return false;
    }
    return true;
}

std::optional<GreenWitness> leq_l(const Element& a, const Element& b, GreenPath path) {
    auto x = find_factor(a, b, Side::left, path);
    if (!x) return std::nullopt;
    GreenWitness w{GreenKind::leq_l, {}, {}, {}, {}};
    w.left_x = std::move(x);
    return w;
}

std::optional<GreenWitness> leq_r(const Element& a, const Element& b, GreenPath path) {
    auto x = find_factor(a, b, Side::right, path);
    if (!x) return std::nullopt;
    GreenWitness w{GreenKind::leq_r, {}, {}, {}, {}};
    w.right_x = std::move(x);
    return w;
}

std::optional<GreenWitness> leq_h(const Element& a, const Element& b, GreenPath path) {
    auto l = find_factor(a, b, Side::left, path);
    if (!l) return std::nullopt;
    auto r = find_factor(a, b, Side::right, path);
    if (!r) return std::nullopt;
    GreenWitness w{GreenKind::leq_h, {}, {}, {}, {}};
    w.left_x = std::move(l);
    w.right_x = std::move(r);
    return w;
}

std::optional<GreenWitness> green_l(const Element& a, const Element& b, GreenPath path) {
    auto x = find_factor(a, b, Side::left, path);
    if (!x) return std::nullopt;
    auto y = find_factor(b, a, Side::left, path);
    if (!y) return std::nullopt;
    GreenWitness w{GreenKind::rel_l, {}, {}, {}, {}};
    w.left_x = std::move(x);
    w.left_y = std::move(y);
    return w;
}

std::optional<GreenWitness> green_r(const Element& a, const Element& b, GreenPath path) {
    auto x = find_factor(a, b, Side::right, path);
    if (!x) return std::nullopt;
    auto y = find_factor(b, a, Side::right, path);
    if (!y) return std::nullopt;
    GreenWitness w{GreenKind::rel_r, {}, {}, {}, {}};
    w.right_x = std::move(x);
    w.right_y = std::move(y);
    return w;
}

std::optional<GreenWitness> green_h(const Element& a, const Element& b, GreenPath path) {
    auto l = green_l(a, b, path);
    if (!l) return std::nullopt;
    auto r = green_r(a, b, path);
    if (!r) return std::nullopt;
    GreenWitness w{GreenKind::rel_h, {}, {}, {}, {}};
    w.left_x = std::move(l->left_x);
    w.left_y = std::move(l->left_y);
    w.right_x = std::move(r->right_x);
    w.right_y = std::move(r->right_y);
    return w;
}

}  // namespace geninv
