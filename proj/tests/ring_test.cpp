#include "doctest.h"
#include "geninv/ring.hpp"

using namespace geninv;

namespace {

Element el(const RingPtr& ring, const char* text) { return parse_element(ring, text); }

}  // namespace

TEST_CASE("ring spec parsing and canonical formatting") {
    for (const char* spec : {"Z:6", "GF:7", "M:2:Z:6", "M:2:M:2:GF:3", "Q", "M:3:Q"})
        CHECK(parse_ring_spec(spec)->spec() == spec);
    CHECK_THROWS_AS(parse_ring_spec("Z:1"), usage_error);
    CHECK_THROWS_AS(parse_ring_spec("GF:4"), usage_error);
    CHECK_THROWS_AS(parse_ring_spec("GF:91"), usage_error);  // 7*13
    CHECK_THROWS_AS(parse_ring_spec("M:0:Q"), usage_error);
    CHECK_THROWS_AS(parse_ring_spec("M:2"), usage_error);
    CHECK_THROWS_AS(parse_ring_spec("ZZ:4"), usage_error);
    CHECK_THROWS_AS(parse_ring_spec("Z:x"), usage_error);
}

TEST_CASE("cardinality and enumeration metadata") {
    CHECK(*parse_ring_spec("Z:6")->cardinality() == 6);
    CHECK(*parse_ring_spec("M:2:Z:2")->cardinality() == 16);
    CHECK(*parse_ring_spec("M:2:M:2:Z:2")->cardinality() == 65536);
    CHECK(!parse_ring_spec("Q")->cardinality().has_value());
    CHECK(!parse_ring_spec("M:2:Q")->cardinality().has_value());
    // saturates instead of overflowing
    CHECK(*parse_ring_spec("M:8:Z:1000003")->cardinality() == UINT64_MAX);
}

TEST_CASE("modular arithmetic matches small examples") {
    RingPtr z6 = parse_ring_spec("Z:6");
    CHECK(el(z6, "2") * el(z6, "5") == el(z6, "4"));  // 10 mod 6
    CHECK(el(z6, "3") + el(z6, "5") == el(z6, "2"));
    CHECK(el(z6, "1") - el(z6, "3") == el(z6, "4"));
    CHECK(-el(z6, "2") == el(z6, "4"));
    CHECK(-el(z6, "0") == el(z6, "0"));
    CHECK(Element::integer(z6, -7) == el(z6, "5"));
}

TEST_CASE("unity axiom on sample rings") {
    for (const char* spec : {"Z:6", "GF:5", "M:2:Z:4", "Q"}) {
        RingPtr ring = parse_ring_spec(spec);
        Element id = one(ring);
        for (std::int64_t v : {-3, 0, 1, 7}) {
            Element a = Element::integer(ring, v);
            CHECK(id * a == a);
            CHECK(a * id == a);
        }
    }
}

TEST_CASE("matrix swap is an involution over Z2") {
    RingPtr ring = parse_ring_spec("M:2:Z:2");
    Element swap = el(ring, "[[0,1],[1,0]]");
    CHECK(swap * swap == one(ring));
}

TEST_CASE("ring axioms hold exhaustively on small rings") {
    for (const char* spec : {"Z:4", "Z:6", "M:2:Z:2"}) {
        RingPtr ring = parse_ring_spec(spec);
        std::vector<Element> elems = all_elements(ring);
        bool ok = true;
        for (const Element& a : elems) {
            ok = ok && one(ring) * a == a && a * one(ring) == a;
            ok = ok && a + zero(ring) == a && a + (-a) == zero(ring);
            for (const Element& b : elems) {
                ok = ok && a + b == b + a;
                for (const Element& c : elems) {
                    ok = ok && (a + b) + c == a + (b + c);
                    ok = ok && (a * b) * c == a * (b * c);
                    ok = ok && a * (b + c) == a * b + a * c;
                    ok = ok && (a + b) * c == a * c + b * c;
                }
            }
        }
        CHECK_MESSAGE(ok, "ring axioms failed in ", spec);
    }
}

TEST_CASE("mixed-ring operands are rejected") {
    RingPtr z6 = parse_ring_spec("Z:6");
    RingPtr z7 = parse_ring_spec("Z:7");
    CHECK_THROWS_AS((void)(el(z6, "1") + el(z7, "1")), usage_error);
    CHECK_THROWS_AS((void)(el(z6, "1") * el(z7, "1")), usage_error);
    // the same ring built twice is the same ring
    CHECK(el(z6, "2") == el(parse_ring_spec("Z:6"), "2"));
}

TEST_CASE("try_invert decides units two-sidedly") {
    RingPtr z6 = parse_ring_spec("Z:6");
    CHECK(*try_invert(el(z6, "5")) == el(z6, "5"));
    CHECK(!try_invert(el(z6, "2")).has_value());
    CHECK(!try_invert(el(z6, "0")).has_value());

    RingPtr gf2m = parse_ring_spec("M:2:GF:2");
    Element swap = el(gf2m, "[[0,1],[1,0]]");
    CHECK(*try_invert(swap) == swap);

    RingPtr q = parse_ring_spec("Q");
    CHECK(*try_invert(el(q, "3/4")) == el(q, "4/3"));
    CHECK(!try_invert(el(q, "0")).has_value());
}

TEST_CASE("inverse of the inverse returns the element") {
    for (const char* spec : {"Z:6", "Z:9", "M:2:Z:2", "M:2:Z:3"}) {
        RingPtr ring = parse_ring_spec(spec);
        for (const Element& a : all_elements(ring)) {
            auto inv = try_invert(a);
            if (inv) CHECK(*try_invert(*inv) == a);
        }
    }
}

TEST_CASE("matrix inversion over composite moduli uses exact adjugate arithmetic") {
    RingPtr ring = parse_ring_spec("M:2:Z:6");
    Element a = el(ring, "[[1,2],[3,5]]");  // det = 5 - 6 = -1, a unit mod 6
    auto inv = try_invert(a);
    REQUIRE(inv.has_value());
    CHECK(*inv * a == one(ring));
    CHECK(!try_invert(el(ring, "[[2,0],[0,1]]")).has_value());  // det 2, not a unit

    RingPtr m3 = parse_ring_spec("M:3:Z:10");
    Element b = el(m3, "[[1,2,0],[0,1,3],[1,0,1]]");
    auto binv = try_invert(b);
    REQUIRE(binv.has_value());
    CHECK(b * *binv == one(m3));
}

TEST_CASE("matrix inversion over fields uses elimination") {
    RingPtr mq = parse_ring_spec("M:2:Q");
    Element a = el(mq, "[[1,1/2],[0,1]]");
    CHECK(*try_invert(a) == el(mq, "[[1,-1/2],[0,1]]"));
    CHECK(!try_invert(el(mq, "[[1,2],[2,4]]")).has_value());

    RingPtr gf7 = parse_ring_spec("M:2:GF:7");
    Element b = el(gf7, "[[2,3],[1,4]]");
    auto binv = try_invert(b);
    REQUIRE(binv.has_value());
    CHECK(b * *binv == one(gf7));
}

TEST_CASE("nested matrix rings invert through flattening") {
    RingPtr nested = parse_ring_spec("M:2:M:2:Z:2");
    Element a = el(nested, "[[[[1,0],[0,1]],[[0,1],[1,0]]],[[[0,0],[0,0]],[[1,1],[0,1]]]]");
    auto inv = try_invert(a);
    REQUIRE(inv.has_value());
    CHECK(a * *inv == one(nested));
    CHECK(*inv * a == one(nested));
}

TEST_CASE("idempotents") {
    RingPtr z6 = parse_ring_spec("Z:6");
    CHECK(is_idempotent(el(z6, "3")));  // 9 = 3 mod 6
    CHECK(is_idempotent(el(z6, "4")));
    CHECK(is_idempotent(one(z6)));
    CHECK(is_idempotent(zero(z6)));
    CHECK(!is_idempotent(el(z6, "2")));
}

TEST_CASE("enumeration is lexicographic on the canonical payload") {
    RingPtr z6 = parse_ring_spec("Z:6");
    std::vector<Element> elems = all_elements(z6);
    REQUIRE(elems.size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(elems[i] == Element::integer(z6, i));

    RingPtr m2 = parse_ring_spec("M:2:Z:2");
    std::vector<Element> mats = all_elements(m2);
    REQUIRE(mats.size() == 16);
    CHECK(format_element(mats[0]) == "[[0,0],[0,0]]");
    CHECK(format_element(mats[1]) == "[[0,0],[0,1]]");
    CHECK(format_element(mats[4]) == "[[0,1],[0,0]]");
    CHECK(format_element(mats[15]) == "[[1,1],[1,1]]");
}

TEST_CASE("element_at and index_of are inverse bijections") {
    for (const char* spec : {"Z:10", "M:2:Z:3"}) {
        RingPtr ring = parse_ring_spec(spec);
        const std::uint64_t n = *ring->cardinality();
        for (std::uint64_t i = 0; i < n; ++i) CHECK(index_of(element_at(ring, i)) == i);
    }
}

TEST_CASE("enumerating an infinite ring fails, never loops") {
    RingPtr q = parse_ring_spec("Q");
    CHECK_THROWS_AS(all_elements(q), capability_error);
    CHECK_THROWS_AS(element_at(q, 0), capability_error);
    CHECK_THROWS_AS(all_elements(parse_ring_spec("M:2:Q")), capability_error);
}

TEST_CASE("enumeration bound is enforced and named in the error") {
    RingPtr small = Ring::modular(7, 3);
    try {
        all_elements(small);
        FAIL("expected capability_error");
    } catch (const capability_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("3") != std::string::npos);
        CHECK(msg.find("Z:7") != std::string::npos);
    }
}

TEST_CASE("canonical round trip: parse(format(x)) == x") {
    for (const char* spec : {"Z:6", "M:2:Z:2", "GF:5"}) {
        RingPtr ring = parse_ring_spec(spec);
        for (const Element& x : all_elements(ring))
            CHECK(parse_element(ring, format_element(x)) == x);
    }
    // spot checks beyond the enumerable rings
    RingPtr q = parse_ring_spec("Q");
    for (const char* lit : {"0", "5", "-7", "3/4", "-1/2"}) {
        Element x = el(q, lit);
        CHECK(parse_element(q, format_element(x)) == x);
        CHECK(format_element(x) == lit);
    }
    RingPtr nested = parse_ring_spec("M:2:M:2:Z:2");
    Element x = element_at(nested, 54321);
    CHECK(parse_element(nested, format_element(x)) == x);
}

TEST_CASE("rational canonicalization") {
    RingPtr q = parse_ring_spec("Q");
    CHECK(el(q, "2/4") == el(q, "1/2"));
    CHECK(el(q, "3/-6") == el(q, "-1/2"));
    CHECK(format_element(el(q, "3/-6")) == "-1/2");
    CHECK(format_element(el(q, "8/4")) == "2");
    CHECK(el(q, "1/3") + el(q, "1/6") == el(q, "1/2"));
    CHECK(el(q, "2/3") * el(q, "3/4") == el(q, "1/2"));
    CHECK_THROWS_AS(el(q, "1/0"), usage_error);
}

TEST_CASE("rational overflow is a capability error, not wraparound") {
    RingPtr q = parse_ring_spec("Q");
    Element big = el(q, "4611686018427387904");  // 2^62
    CHECK_THROWS_AS((void)(big * big), capability_error);
}

TEST_CASE("literal parse errors carry a column") {
    RingPtr z6 = parse_ring_spec("Z:6");
    RingPtr m2 = parse_ring_spec("M:2:Z:2");
    try {
        parse_element(m2, "[[1,0],[0,x]]");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.column == 11);
    }
    CHECK_THROWS_AS(parse_element(z6, ""), parse_error);
    CHECK_THROWS_AS(parse_element(z6, "12 34"), parse_error);
    CHECK_THROWS_AS(parse_element(m2, "[[1,0],[0,1]"), parse_error);
    CHECK_THROWS_AS(parse_element(z6, "99999999999999999999999"), parse_error);
    // whitespace is tolerated
    CHECK(parse_element(m2, " [[ 1, 0], [0 ,1] ] ") == one(m2));
}

TEST_CASE("flatten and unflatten are mutually inverse ring homomorphisms") {
    RingPtr nested = parse_ring_spec("M:2:M:2:Z:3");
    RingPtr flat = flatten_ring(nested);
    CHECK(flat->spec() == "M:4:Z:3");
    Element a = element_at(nested, 123456);
    Element b = element_at(nested, 654321);
    CHECK(unflatten(flatten(a), nested) == a);
    CHECK(flatten(a * b) == flatten(a) * flatten(b));
    CHECK(flatten(a + b) == flatten(a) + flatten(b));
    CHECK(flatten(one(nested)) == one(flat));
    // identity on single-level matrices
    RingPtr m2 = parse_ring_spec("M:2:Z:3");
    Element c = element_at(m2, 17);
    CHECK(flatten(c) == c);
}

TEST_CASE("primality check is deterministic and exact") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(1000003));
    CHECK(is_prime(2147483647));
    CHECK(!is_prime(1));
    CHECK(!is_prime(561));  // Carmichael
    CHECK(!is_prime(1000004));
    CHECK(is_prime(9223372036854775783LL));
}
