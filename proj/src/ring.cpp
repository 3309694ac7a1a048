#include "geninv/ring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <utility>

namespace geninv {

namespace {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

i64 checked_i64(i128 v, const char* what) {
    if (v > i128{INT64_MAX} || v < i128{INT64_MIN})
        throw capability_error(std::string(what) + ": 64-bit rational arithmetic overflow");
    return static_cast<i64>(v);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Fraction reduce_fraction(i128 num, i128 den, const char* what) {
    if (den == 0) throw usage_error("fraction with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Fraction{checked_i64(num, what), checked_i64(den, what)};
}

i64 mod_reduce(i64 v, i64 n) {
    i64 r = v % n;
    return r < 0 ? r + n : r;
}

i64 mul_mod(i64 a, i64 b, i64 n) { return static_cast<i64>(i128{a} * b % n); }

i64 pow_mod(i64 base, i64 exp, i64 n) {
    i64 r = 1 % n;
    base %= n;
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, base, n);
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    return r;
}

// Extended gcd; returns g and x with a*x = g (mod n), for a in [0, n).
i64 mod_inverse_or_zero(i64 a, i64 n) {
    i64 old_r = a, r = n;
    i64 old_s = 1, s = 0;
    while (r != 0) {
        i64 q = old_r / r;
        i64 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) return 0;  // gcd != 1: not a unit
    return mod_reduce(old_s, n);
}

u64 saturating_pow(u64 base, int exp) {
    u64 result = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && result > UINT64_MAX / base) return UINT64_MAX;
        result *= base;
    }
    return result;
}

}  // namespace

// --- primality (deterministic Miller-Rabin for 64-bit) ----------------------

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        i64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// --- Ring -------------------------------------------------------------------

RingPtr Ring::modular(std::int64_t n, std::uint64_t enumeration_bound) {
    if (n < 2) throw usage_error("Z:<n> requires modulus >= 2");
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = Kind::modular;
    r->modulus_ = n;
    r->cardinality_ = static_cast<u64>(n);
    r->enumeration_bound_ = enumeration_bound;
    return r;
}

RingPtr Ring::prime_field(std::int64_t p, std::uint64_t enumeration_bound) {
    if (!is_prime(p)) throw usage_error("GF:<p> requires a prime modulus, got " + std::to_string(p));
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = Kind::prime_field;
    r->modulus_ = p;
    r->cardinality_ = static_cast<u64>(p);
    r->enumeration_bound_ = enumeration_bound;
    return r;
}

RingPtr Ring::matrix_ring(RingPtr base, int dim, std::uint64_t enumeration_bound) {
    if (!base) throw usage_error("matrix ring requires a base ring");
    if (dim < 1) throw usage_error("M:<k>:... requires dimension >= 1");
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = Kind::matrix;
    r->dim_ = dim;
    if (base->cardinality_)
        r->cardinality_ = saturating_pow(*base->cardinality_, dim * dim);
    r->base_ = std::move(base);
    r->enumeration_bound_ = enumeration_bound;
    return r;
}

RingPtr Ring::rationals(std::uint64_t enumeration_bound) {
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = Kind::rationals;
    r->cardinality_ = std::nullopt;
    r->enumeration_bound_ = enumeration_bound;
    return r;
}

std::int64_t Ring::modulus() const {
    if (kind_ != Kind::modular && kind_ != Kind::prime_field)
        throw invariant_violation("modulus() on a non-residue ring");
    return modulus_;
}

const RingPtr& Ring::base() const {
    if (kind_ != Kind::matrix) throw invariant_violation("base() on a non-matrix ring");
    return base_;
}

int Ring::dim() const {
    if (kind_ != Kind::matrix) throw invariant_violation("dim() on a non-matrix ring");
    return dim_;
}

const Ring& Ring::scalar_base() const {
    const Ring* r = this;
    while (r->kind_ == Kind::matrix) r = r->base_.get();
    return *r;
}

int Ring::flat_dim() const {
    int d = 1;
    const Ring* r = this;
    while (r->kind_ == Kind::matrix) {
        d *= r->dim_;
        r = r->base_.get();
    }
    return d;
}

bool Ring::same_ring(const Ring& other) const {
    if (this == &other) return true;
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case Kind::modular:
        case Kind::prime_field:
            return modulus_ == other.modulus_;
        case Kind::rationals:
            return true;
        case Kind::matrix:
            return dim_ == other.dim_ && base_->same_ring(*other.base_);
    }
    return false;
}

std::string Ring::spec() const {
    switch (kind_) {
        case Kind::modular:
            return "Z:" + std::to_string(modulus_);
        case Kind::prime_field:
            return "GF:" + std::to_string(modulus_);
        case Kind::rationals:
            return "Q";
        case Kind::matrix:
            return "M:" + std::to_string(dim_) + ":" + base_->spec();
    }
    return {};
}

// --- Element ----------------------------------------------------------------

namespace {

void require_same_ring(const Element& a, const Element& b, const char* op) {
    if (!a.ring()->same_ring(*b.ring()))
        throw usage_error(std::string("mixed-ring operands for ") + op + ": " + a.ring()->spec() +
                          " vs " + b.ring()->spec());
}

}  // namespace

std::int64_t Element::residue() const {
    if (auto* v = std::get_if<i64>(&payload_)) return *v;
    throw invariant_violation("residue() on a non-residue element");
}

const Fraction& Element::fraction() const {
    if (auto* v = std::get_if<Fraction>(&payload_)) return *v;
    throw invariant_violation("fraction() on a non-rational element");
}

const std::vector<Element>& Element::entries() const {
    if (auto* v = std::get_if<std::vector<Element>>(&payload_)) return *v;
    throw invariant_violation("entries() on a non-matrix element");
}

const Element& Element::entry(int row, int col) const {
    return entries()[static_cast<std::size_t>(row) * ring_->dim() + col];
}

bool operator==(const Element& a, const Element& b) {
    if (!a.ring_->same_ring(*b.ring_)) return false;
    return a.payload_ == b.payload_;
}

Element Element::integer(const RingPtr& ring, std::int64_t value) {
    switch (ring->kind()) {
        case Ring::Kind::modular:
        case Ring::Kind::prime_field:
            return Element(ring, mod_reduce(value, ring->modulus()));
        case Ring::Kind::rationals:
            return Element(ring, Fraction{value, 1});
        case Ring::Kind::matrix: {
            // scalar embedding: value * identity
            const int k = ring->dim();
            std::vector<Element> es;
            es.reserve(static_cast<std::size_t>(k) * k);
            Element diag = integer(ring->base(), value);
            Element off = integer(ring->base(), 0);
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) es.push_back(r == c ? diag : off);
            return Element(ring, std::move(es));
        }
    }
    throw invariant_violation("unreachable ring kind");
}

Element Element::fraction_value(const RingPtr& ring, std::int64_t num, std::int64_t den) {
    if (ring->kind() != Ring::Kind::rationals)
        throw usage_error("fraction literal in non-rational ring " + ring->spec());
    return Element(ring, reduce_fraction(num, den, "fraction"));
}

Element Element::matrix(const RingPtr& ring, std::vector<Element> entries) {
    if (ring->kind() != Ring::Kind::matrix)
        throw usage_error("matrix payload in non-matrix ring " + ring->spec());
    const std::size_t want = static_cast<std::size_t>(ring->dim()) * ring->dim();
    if (entries.size() != want)
        throw usage_error("matrix payload has " + std::to_string(entries.size()) +
                          " entries, expected " + std::to_string(want));
    for (const Element& e : entries)
        if (!e.ring()->same_ring(*ring->base()))
            throw usage_error("matrix entry from " + e.ring()->spec() + " in " + ring->spec());
    return Element(ring, std::move(entries));
}

Element zero(const RingPtr& ring) { return Element::integer(ring, 0); }
Element one(const RingPtr& ring) { return Element::integer(ring, 1); }

// --- arithmetic -------------------------------------------------------------

Element operator+(const Element& a, const Element& b) {
    require_same_ring(a, b, "add");
    const RingPtr& ring = a.ring();
    switch (ring->kind()) {
        case Ring::Kind::modular:
        case Ring::Kind::prime_field: {
            i64 n = ring->modulus();
            i64 s = a.residue() + b.residue();
            return Element::integer(ring, s >= n ? s - n : s);
        }
        case Ring::Kind::rationals: {
            const auto& x = a.fraction();
            const auto& y = b.fraction();
            i128 num = i128{x.num} * y.den + i128{y.num} * x.den;
            i128 den = i128{x.den} * y.den;
            Fraction f = reduce_fraction(num, den, "add");
            return Element::fraction_value(ring, f.num, f.den);
        }
        case Ring::Kind::matrix: {
            std::vector<Element> es;
            es.reserve(a.entries().size());
            for (std::size_t i = 0; i < a.entries().size(); ++i)
                es.push_back(a.entries()[i] + b.entries()[i]);
            return Element::matrix(ring, std::move(es));
        }
    }
    throw invariant_violation("unreachable ring kind");
}

Element operator-(const Element& a) {
    const RingPtr& ring = a.ring();
    switch (ring->kind()) {
        case Ring::Kind::modular:
        case Ring::Kind::prime_field: {
            i64 n = ring->modulus();
            i64 r = a.residue();
            return Element::integer(ring, r == 0 ? 0 : n - r);
        }
        case Ring::Kind::rationals:
            return Element::fraction_value(ring, checked_i64(-i128{a.fraction().num}, "neg"),
                                           a.fraction().den);
        case Ring::Kind::matrix: {
            std::vector<Element> es;
            es.reserve(a.entries().size());
            for (const Element& e : a.entries()) es.push_back(-e);
            return Element::matrix(ring, std::move(es));
        }
    }
    throw invariant_violation("unreachable ring kind");
}

Element operator-(const Element& a, const Element& b) {
    require_same_ring(a, b, "sub");
    const RingPtr& ring = a.ring();
    switch (ring->kind()) {
        case Ring::Kind::modular:
        case Ring::Kind::prime_field: {
            i64 n = ring->modulus();
            i64 s = a.residue() - b.residue();
            return Element::integer(ring, s < 0 ? s + n : s);
        }
        default:
            return a + (-b);
    }
}

Element operator*(const Element& a, const Element& b) {
    require_same_ring(a, b, "mul");
    const RingPtr& ring = a.ring();
    switch (ring->kind()) {
        case Ring::Kind::modular:
        case Ring::Kind::prime_field:
            return Element::integer(ring, mul_mod(a.residue(), b.residue(), ring->modulus()));
        case Ring::Kind::rationals: {
            const auto& x = a.fraction();
            const auto& y = b.fraction();
            Fraction f = reduce_fraction(i128{x.num} * y.num, i128{x.den} * y.den, "mul");
            return Element::fraction_value(ring, f.num, f.den);
        }
        case Ring::Kind::matrix: {
            const int k = ring->dim();
            std::vector<Element> es;
            es.reserve(static_cast<std::size_t>(k) * k);
            for (int r = 0; r < k; ++r) {
                for (int c = 0; c < k; ++c) {
                    Element acc = a.entry(r, 0) * b.entry(0, c);
                    for (int t = 1; t < k; ++t) acc = acc + a.entry(r, t) * b.entry(t, c);
                    es.push_back(std::move(acc));
                }
            }
            return Element::matrix(ring, std::move(es));
        }
    }
    throw invariant_violation("unreachable ring kind");
}

bool is_idempotent(const Element& e) { return e * e == e; }

// --- inversion ---------------------------------------------------------------

namespace {

// Determinant over a commutative base by subset DP (expansion along rows).
Element det_commutative(const std::vector<Element>& a, int k, const RingPtr& base) {
    if (k > 16) throw capability_error("determinant dimension above adjugate-path limit (16)");
    const std::size_t full = std::size_t{1} << k;
    std::vector<std::optional<Element>> dp(full);
    dp[0] = one(base);
    for (std::size_t mask = 1; mask < full; ++mask) {
        const int row = __builtin_popcountll(mask) - 1;
        std::optional<Element> acc;
        int pos = 0;  // index of the column within the mask
        for (int col = 0; col < k; ++col) {
            if (!(mask & (std::size_t{1} << col))) continue;
            Element term = a[static_cast<std::size_t>(row) * k + col] *
                           *dp[mask ^ (std::size_t{1} << col)];
            if ((row + pos) % 2 != 0) term = -term;
            acc = acc ? *acc + term : term;
            ++pos;
        }
        dp[mask] = std::move(acc);
    }
    return *dp[full - 1];
}

Element minor_det(const Element& m, int drop_row, int drop_col) {
    const int k = m.ring()->dim();
    const RingPtr& base = m.ring()->base();
    if (k == 1) return one(base);
    std::vector<Element> sub;
    sub.reserve(static_cast<std::size_t>(k - 1) * (k - 1));
    for (int r = 0; r < k; ++r) {
        if (r == drop_row) continue;
        for (int c = 0; c < k; ++c) {
            if (c == drop_col) continue;
            sub.push_back(m.entry(r, c));
        }
    }
    return det_commutative(sub, k - 1, base);
}

// det-is-a-unit + adjugate; valid over any commutative base, used for Z_n.
std::optional<Element> invert_adjugate(const Element& a) {
    const RingPtr& ring = a.ring();
    const int k = ring->dim();
    const RingPtr& base = ring->base();
    Element det = det_commutative(a.entries(), k, base);
    auto det_inv = try_invert(det);
    if (!det_inv) return std::nullopt;
    std::vector<Element> inv;
    inv.reserve(static_cast<std::size_t>(k) * k);
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
            Element cof = minor_det(a, c, r);  // adjugate transposes
            if ((r + c) % 2 != 0) cof = -cof;
            inv.push_back(*det_inv * cof);
        }
    }
    return Element::matrix(ring, std::move(inv));
}

// Gauss-Jordan on [A | I]; base must be a field.
std::optional<Element> invert_elimination(const Element& a) {
    const RingPtr& ring = a.ring();
    const int k = ring->dim();
    const RingPtr& base = ring->base();
    const Element zr = zero(base);
    std::vector<std::vector<Element>> aug;
    aug.reserve(k);
    for (int r = 0; r < k; ++r) {
        std::vector<Element> row;
        row.reserve(2 * static_cast<std::size_t>(k));
        for (int c = 0; c < k; ++c) row.push_back(a.entry(r, c));
        for (int c = 0; c < k; ++c) row.push_back(r == c ? one(base) : zr);
        aug.push_back(std::move(row));
    }
    for (int col = 0; col < k; ++col) {
        int pivot = -1;
        for (int r = col; r < k; ++r)
            if (aug[r][col] != zr) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        std::swap(aug[col], aug[pivot]);
        Element inv = *try_invert(aug[col][col]);
        for (int c = 0; c < 2 * k; ++c) aug[col][c] = inv * aug[col][c];
        for (int r = 0; r < k; ++r) {
            if (r == col || aug[r][col] == zr) continue;
            Element factor = aug[r][col];
            for (int c = 0; c < 2 * k; ++c) aug[r][c] = aug[r][c] - factor * aug[col][c];
        }
    }
    std::vector<Element> inv;
    inv.reserve(static_cast<std::size_t>(k) * k);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) inv.push_back(aug[r][k + c]);
    return Element::matrix(ring, std::move(inv));
}

}  // namespace

std::optional<Element> try_invert(const Element& a) {
    const RingPtr& ring = a.ring();
    std::optional<Element> result;
    switch (ring->kind()) {
        case Ring::Kind::modular:
        case Ring::Kind::prime_field: {
            // modulus >= 2, so 0 is never a legitimate inverse
            i64 inv = mod_inverse_or_zero(a.residue(), ring->modulus());
            if (inv == 0) return std::nullopt;
            result = Element::integer(ring, inv);
            break;
        }
        case Ring::Kind::rationals: {
            const auto& f = a.fraction();
            if (f.num == 0) return std::nullopt;
            result = Element::fraction_value(ring, f.den, f.num);
            break;
        }
        case Ring::Kind::matrix: {
            if (ring->base()->kind() == Ring::Kind::matrix) {
                auto flat_inv = try_invert(flatten(a));
                if (!flat_inv) return std::nullopt;
                result = unflatten(*flat_inv, ring);
            } else if (ring->base()->is_scalar_field()) {
                result = invert_elimination(a);
            } else {
                result = invert_adjugate(a);
            }
            if (!result) return std::nullopt;
            break;
        }
    }
    // Two-sidedness is checked, not assumed.
    Element id = one(ring);
    if (a * *result != id || *result * a != id)
        throw invariant_violation("computed inverse failed the two-sided check in " + ring->spec());
    return result;
}

// --- enumeration -------------------------------------------------------------

std::uint64_t require_enumerable(const Ring& ring) {
    auto card = ring.cardinality();
    if (!card)
        throw capability_error("ring " + ring.spec() + " is infinite; enumeration is not available");
    if (*card > ring.enumeration_bound())
        throw capability_error("ring " + ring.spec() + " has " +
                               (*card == UINT64_MAX ? std::string("more than 2^64")
                                                    : std::to_string(*card)) +
                               " elements, above the enumeration bound " +
                               std::to_string(ring.enumeration_bound()));
    return *card;
}

Element element_at(const RingPtr& ring, std::uint64_t index) {
    switch (ring->kind()) {
        case Ring::Kind::modular:
        case Ring::Kind::prime_field:
            return Element::integer(ring, static_cast<i64>(index));
        case Ring::Kind::rationals:
            throw capability_error("ring Q is infinite; enumeration is not available");
        case Ring::Kind::matrix: {
            const int k = ring->dim();
            const u64 b = *ring->base()->cardinality();
            const std::size_t n = static_cast<std::size_t>(k) * k;
            std::vector<Element> es(n, zero(ring->base()));
            for (std::size_t i = n; i-- > 0;) {  // last entry least significant
                es[i] = element_at(ring->base(), index % b);
                index /= b;
            }
            return Element::matrix(ring, std::move(es));
        }
    }
    throw invariant_violation("unreachable ring kind");
}

std::uint64_t index_of(const Element& a) {
    const RingPtr& ring = a.ring();
    switch (ring->kind()) {
        case Ring::Kind::modular:
        case Ring::Kind::prime_field:
            return static_cast<u64>(a.residue());
        case Ring::Kind::rationals:
            throw capability_error("ring Q is infinite; enumeration is not available");
        case Ring::Kind::matrix: {
            const u64 b = *ring->base()->cardinality();
            u64 idx = 0;
            for (const Element& e : a.entries()) idx = idx * b + index_of(e);
            return idx;
        }
    }
    throw invariant_violation("unreachable ring kind");
}

std::vector<Element> all_elements(const RingPtr& ring) {
    const u64 n = require_enumerable(*ring);
    std::vector<Element> out;
    out.reserve(n);
    for (u64 i = 0; i < n; ++i) out.push_back(element_at(ring, i));
    return out;
}

// --- flattening ---------------------------------------------------------------

RingPtr flatten_ring(const RingPtr& ring) {
    if (ring->kind() != Ring::Kind::matrix || ring->base()->kind() != Ring::Kind::matrix)
        return ring;
    const Ring& scalar = ring->scalar_base();
    RingPtr base = scalar.kind() == Ring::Kind::modular ? Ring::modular(scalar.modulus())
                   : scalar.kind() == Ring::Kind::prime_field
                       ? Ring::prime_field(scalar.modulus())
                       : Ring::rationals();
    return Ring::matrix_ring(base, ring->flat_dim(), ring->enumeration_bound());
}

Element flatten(const Element& a) {
    const RingPtr& ring = a.ring();
    if (ring->kind() != Ring::Kind::matrix || ring->base()->kind() != Ring::Kind::matrix) return a;
    const int k = ring->dim();
    const int j = ring->base()->flat_dim();
    const int n = k * j;
    RingPtr flat_ring = flatten_ring(ring);
    std::vector<Element> es(static_cast<std::size_t>(n) * n, zero(flat_ring->base()));
    for (int br = 0; br < k; ++br) {
        for (int bc = 0; bc < k; ++bc) {
            Element block = flatten(a.entry(br, bc));
            for (int r = 0; r < j; ++r)
                for (int c = 0; c < j; ++c)
                    es[static_cast<std::size_t>(br * j + r) * n + (bc * j + c)] =
                        block.entry(r, c);
        }
    }
    return Element::matrix(flat_ring, std::move(es));
}

Element unflatten(const Element& flat, const RingPtr& nested_ring) {
    if (nested_ring->kind() != Ring::Kind::matrix ||
        nested_ring->base()->kind() != Ring::Kind::matrix) {
        if (!flat.ring()->same_ring(*nested_ring))
            throw usage_error("unflatten target " + nested_ring->spec() + " does not match " +
                              flat.ring()->spec());
        return flat;
    }
    const int k = nested_ring->dim();
    const int j = nested_ring->base()->flat_dim();
    const int n = k * j;
    if (flat.ring()->kind() != Ring::Kind::matrix || flat.ring()->dim() != n)
        throw usage_error("unflatten source does not match target shape");
    RingPtr block_flat_ring = flatten_ring(nested_ring->base());
    std::vector<Element> outer;
    outer.reserve(static_cast<std::size_t>(k) * k);
    for (int br = 0; br < k; ++br) {
        for (int bc = 0; bc < k; ++bc) {
            std::vector<Element> block;
            block.reserve(static_cast<std::size_t>(j) * j);
            for (int r = 0; r < j; ++r)
                for (int c = 0; c < j; ++c) block.push_back(flat.entry(br * j + r, bc * j + c));
            outer.push_back(
                unflatten(Element::matrix(block_flat_ring, std::move(block)), nested_ring->base()));
        }
    }
    return Element::matrix(nested_ring, std::move(outer));
}

// --- literals ------------------------------------------------------------------

std::string format_element(const Element& a) {
    switch (a.ring()->kind()) {
        case Ring::Kind::modular:
        case Ring::Kind::prime_field:
            return std::to_string(a.residue());
        case Ring::Kind::rationals: {
            const auto& f = a.fraction();
            if (f.den == 1) return std::to_string(f.num);
            return std::to_string(f.num) + "/" + std::to_string(f.den);
        }
        case Ring::Kind::matrix: {
            const int k = a.ring()->dim();
            std::string out = "[";
            for (int r = 0; r < k; ++r) {
                if (r) out += ",";
                out += "[";
                for (int c = 0; c < k; ++c) {
                    if (c) out += ",";
                    out += format_element(a.entry(r, c));
                }
                out += "]";
            }
            out += "]";
            return out;
        }
    }
    throw invariant_violation("unreachable ring kind");
}

namespace {

struct LiteralParser {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos + 1); }

    char peek() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of literal");
        return s[pos];
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }

    i64 parse_int() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) {
            pos = start;
            fail("expected an integer");
        }
        i64 value = 0;
        auto res = std::from_chars(s.data() + start, s.data() + pos, value);
        if (res.ec != std::errc()) {
            pos = start;
            fail("integer out of 64-bit range");
        }
        return value;
    }

    Element parse(const RingPtr& ring) {
        switch (ring->kind()) {
            case Ring::Kind::modular:
            case Ring::Kind::prime_field:
                return Element::integer(ring, parse_int());
            case Ring::Kind::rationals: {
                i64 num = parse_int();
                skip_ws();
                if (pos < s.size() && s[pos] == '/') {
                    ++pos;
                    i64 den = parse_int();
                    if (den == 0) fail("fraction with zero denominator");
                    return Element::fraction_value(ring, num, den);
                }
                return Element::fraction_value(ring, num, 1);
            }
            case Ring::Kind::matrix: {
                const int k = ring->dim();
                std::vector<Element> es;
                es.reserve(static_cast<std::size_t>(k) * k);
                expect('[');
                for (int r = 0; r < k; ++r) {
                    if (r) expect(',');
                    expect('[');
                    for (int c = 0; c < k; ++c) {
                        if (c) expect(',');
                        es.push_back(parse(ring->base()));
                    }
                    expect(']');
                }
                expect(']');
                return Element::matrix(ring, std::move(es));
            }
        }
        throw invariant_violation("unreachable ring kind");
    }
};

}  // namespace

Element parse_element(const RingPtr& ring, std::string_view text) {
    LiteralParser p{text};
    Element e = p.parse(ring);
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing characters after literal");
    return e;
}

RingPtr parse_ring_spec(std::string_view text) {
    // grammar: Z:<n> | GF:<p> | M:<k>:<base> | Q
    auto parse_i64 = [&](std::string_view t, const char* what) {
        i64 value = 0;
        auto res = std::from_chars(t.data(), t.data() + t.size(), value);
        if (res.ec != std::errc() || res.ptr != t.data() + t.size())
            throw usage_error("ring spec: bad " + std::string(what) + " in '" + std::string(text) +
                              "'");
        return value;
    };
    if (text == "Q") return Ring::rationals();
    if (text.starts_with("Z:")) return Ring::modular(parse_i64(text.substr(2), "modulus"));
    if (text.starts_with("GF:")) return Ring::prime_field(parse_i64(text.substr(3), "prime"));
    if (text.starts_with("M:")) {
        std::string_view rest = text.substr(2);
        std::size_t colon = rest.find(':');
        if (colon == std::string_view::npos)
            throw usage_error("ring spec: M:<k>:<base> missing base in '" + std::string(text) + "'");
        i64 k = parse_i64(rest.substr(0, colon), "dimension");
        if (k < 1 || k > 64) throw usage_error("ring spec: dimension out of range 1..64");
        return Ring::matrix_ring(parse_ring_spec(rest.substr(colon + 1)), static_cast<int>(k));
    }
    throw usage_error("unknown ring spec '" + std::string(text) + "' (expected Z:<n>, GF:<p>, M:<k>:<base>, Q)");
}

}  // namespace geninv
