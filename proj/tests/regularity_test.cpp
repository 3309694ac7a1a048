#include "doctest.h"
#include "geninv/regularity.hpp"

using namespace geninv;

namespace {

Element el(const RingPtr& ring, const char* text) { return parse_element(ring, text); }

void check_certificate(const RegularityCertificate& cert) {
    CHECK(cert.a * cert.inner * cert.a == cert.a);
    CHECK(cert.reflexive == cert.inner * cert.a * cert.inner);
    CHECK(cert.a * cert.reflexive * cert.a == cert.a);
    CHECK(cert.reflexive * cert.a * cert.reflexive == cert.reflexive);
}

}  // namespace

TEST_CASE("inner inverse picks the first candidate in enumeration order") {
    RingPtr z6 = parse_ring_spec("Z:6");
    auto cert = inner_inverse(el(z6, "2"));
    REQUIRE(cert.has_value());
    CHECK(cert->inner == el(z6, "2"));  // 2*2*2 = 8 = 2 mod 6
    check_certificate(*cert);

    auto zero_cert = inner_inverse(zero(z6));
    REQUIRE(zero_cert.has_value());
    CHECK(zero_cert->inner == zero(z6));
}

TEST_CASE("non-regular elements are detected by scan") {
    RingPtr z4 = parse_ring_spec("Z:4");
    CHECK(!inner_inverse(el(z4, "2")).has_value());
    CHECK(!is_regular(el(z4, "2")));
    CHECK(all_inner_inverses(el(z4, "2")).empty());
}

TEST_CASE("idempotent matrices are their own inner inverses") {
    RingPtr ring = parse_ring_spec("M:2:GF:2");
    Element a = el(ring, "[[1,0],[0,0]]");
    auto cert = inner_inverse(a);
    REQUIRE(cert.has_value());
    CHECK(cert->inner == a);
    auto field_cert = field_inner_inverse(a);
    CHECK(field_cert.inner == a);
}

TEST_CASE("all_inner_inverses is complete and ordered") {
    RingPtr z6 = parse_ring_spec("Z:6");
    CHECK(all_inner_inverses(zero(z6)).size() == 6);
    CHECK(all_inner_inverses(one(z6)) == std::vector<Element>{one(z6)});
    std::vector<Element> inv2 = all_inner_inverses(el(z6, "2"));
    REQUIRE(inv2.size() == 2);
    CHECK(inv2[0] == el(z6, "2"));
    CHECK(inv2[1] == el(z6, "5"));
    std::vector<Element> inv3 = all_inner_inverses(el(z6, "3"));
    REQUIRE(inv3.size() == 3);  // {1, 3, 5}
    CHECK(inv3[0] == el(z6, "1"));
}

TEST_CASE("regularity equals non-empty inner inverse list, exhaustively") {
    for (const char* spec : {"Z:4", "Z:6", "Z:8", "Z:9", "M:2:Z:2"}) {
        RingPtr ring = parse_ring_spec(spec);
        for (const Element& a : all_elements(ring)) {
            auto cert = inner_inverse(a);
            CHECK(cert.has_value() == !all_inner_inverses(a).empty());
            if (cert) check_certificate(*cert);
        }
    }
}

TEST_CASE("scalars in a field are always regular") {
    RingPtr q = parse_ring_spec("Q");
    auto cert = inner_inverse(el(q, "2/3"));
    REQUIRE(cert.has_value());
    CHECK(cert->inner == el(q, "3/2"));
    CHECK(inner_inverse(zero(q))->inner == zero(q));
    CHECK(is_regular(el(q, "-7")));
}

TEST_CASE("field path and scan path agree on matrix rings over small fields") {
    for (const char* spec : {"M:2:GF:2", "M:2:GF:3"}) {
        RingPtr ring = parse_ring_spec(spec);
        for (const Element& a : all_elements(ring)) {
            auto scan = scan_inner_inverse(a);
            REQUIRE(scan.has_value());  // matrices over a field are regular
            RegularityCertificate field = field_inner_inverse(a);
            check_certificate(*scan);
            check_certificate(field);
        }
    }
}

TEST_CASE("rank factorization handles rectangular-rank cases over Q") {
    RingPtr mq = parse_ring_spec("M:3:Q");
    Element a = el(mq, "[[1,2,3],[2,4,6],[0,0,1]]");  // rank 2
    RegularityCertificate cert = field_inner_inverse(a);
    check_certificate(cert);
    check_certificate(field_inner_inverse(zero(mq)));
    check_certificate(field_inner_inverse(one(mq)));
}

TEST_CASE("nested matrix towers over a field use the flattened algorithm") {
    RingPtr nested = parse_ring_spec("M:2:M:2:GF:2");
    Element a = element_at(nested, 40000);
    RegularityCertificate cert = field_inner_inverse(a);
    check_certificate(cert);
}

TEST_CASE("no decision path is a capability error") {
    // 6^9 elements: beyond the default bound, and Z6 is no field
    RingPtr big = parse_ring_spec("M:3:Z:6");
    CHECK_THROWS_AS(inner_inverse(one(big)), capability_error);
    CHECK_THROWS_AS(all_inner_inverses(one(big)), capability_error);
}

TEST_CASE("a supplied invalid inner inverse is rejected") {
    RingPtr z6 = parse_ring_spec("Z:6");
    CHECK_THROWS_AS(make_certificate(el(z6, "2"), el(z6, "3")), usage_error);
    RingPtr z7 = parse_ring_spec("Z:7");
    CHECK_THROWS_AS(make_certificate(el(z6, "2"), el(z7, "2")), usage_error);
}
