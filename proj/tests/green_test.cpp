#include "doctest.h"
#include "geninv/green.hpp"

using namespace geninv;

namespace {

Element el(const RingPtr& ring, const char* text) { return parse_element(ring, text); }

}  // namespace

TEST_CASE("leq_L scan returns the first witness in enumeration order") {
    RingPtr z6 = parse_ring_spec("Z:6");
    auto w = leq_l(el(z6, "2"), el(z6, "4"));
    REQUIRE(w.has_value());
    CHECK(*w->left_x == el(z6, "2"));  // 2*4 = 8 = 2 mod 6
    CHECK(w->verify(el(z6, "2"), el(z6, "4")));

    auto refl = leq_l(el(z6, "4"), el(z6, "4"));
    REQUIRE(refl.has_value());
    CHECK(*refl->left_x == one(z6));
}

TEST_CASE("leq_R examples") {
    RingPtr z6 = parse_ring_spec("Z:6");
    auto w = leq_r(el(z6, "2"), el(z6, "4"));
    REQUIRE(w.has_value());
    CHECK(*w->right_x == el(z6, "2"));

    // 0 = b*0 for any b
    for (const Element& b : all_elements(z6)) {
        auto z = leq_r(zero(z6), b);
        REQUIRE(z.has_value());
        CHECK(*z->right_x == zero(z6));
    }

    RingPtr m2 = parse_ring_spec("M:2:Z:2");
    auto mw = leq_r(el(m2, "[[0,1],[0,0]]"), el(m2, "[[1,0],[0,0]]"));
    REQUIRE(mw.has_value());
    CHECK(*mw->right_x == el(m2, "[[0,1],[0,0]]"));
}

TEST_CASE("matrix identity divides projections from the left") {
    RingPtr m2 = parse_ring_spec("M:2:Z:2");
    Element proj = el(m2, "[[1,0],[0,0]]");
    auto w = leq_l(proj, one(m2));
    REQUIRE(w.has_value());
    CHECK(*w->left_x == proj);
}

TEST_CASE("leq_H and the H relation") {
    RingPtr z6 = parse_ring_spec("Z:6");
    CHECK(!leq_h(el(z6, "1"), el(z6, "2")).has_value());  // 1 = x*2 insoluble mod 6
    auto h24 = green_h(el(z6, "2"), el(z6, "4"));
    REQUIRE(h24.has_value());
    CHECK(h24->verify(el(z6, "2"), el(z6, "4")));
    for (const Element& a : all_elements(z6)) {
        auto w = green_h(a, a);
        REQUIRE(w.has_value());
        CHECK(w->verify(a, a));
    }
}

TEST_CASE("preorders are reflexive and transitive, H implies mutual leq_H") {
    for (const char* spec : {"Z:6", "Z:8", "M:2:Z:2"}) {
        RingPtr ring = parse_ring_spec(spec);
        std::vector<Element> elems = all_elements(ring);
        bool ok = true;
        for (const Element& a : elems) ok = ok && leq_l(a, a) && leq_r(a, a);
        for (const Element& a : elems)
            for (const Element& b : elems) {
                if (green_h(a, b)) ok = ok && leq_h(a, b) && leq_h(b, a);
                for (const Element& c : elems) {
                    if (leq_l(a, b) && leq_l(b, c)) ok = ok && leq_l(a, c).has_value();
                    if (leq_r(a, b) && leq_r(b, c)) ok = ok && leq_r(a, c).has_value();
                }
            }
        CHECK_MESSAGE(ok, "Green preorder laws failed in ", spec);
    }
}

TEST_CASE("scan and linear deciders agree over M:2:GF:2, witnesses verify") {
    RingPtr ring = parse_ring_spec("M:2:GF:2");
    std::vector<Element> elems = all_elements(ring);
    bool ok = true;
    for (const Element& a : elems) {
        for (const Element& b : elems) {
            auto sl = leq_l(a, b, GreenPath::scan);
            auto ll = leq_l(a, b, GreenPath::linear);
            ok = ok && sl.has_value() == ll.has_value();
            if (ll) ok = ok && ll->verify(a, b);
            auto sr = leq_r(a, b, GreenPath::scan);
            auto lr = leq_r(a, b, GreenPath::linear);
            ok = ok && sr.has_value() == lr.has_value();
            if (lr) ok = ok && lr->verify(a, b);
            auto sh = green_h(a, b, GreenPath::scan);
            auto lh = green_h(a, b, GreenPath::linear);
            ok = ok && sh.has_value() == lh.has_value();
            if (lh) ok = ok && lh->verify(a, b);
        }
    }
    CHECK(ok);
}

TEST_CASE("scalar field rule: a <= b iff a = 0 or b != 0") {
    RingPtr q = parse_ring_spec("Q");
    auto w0 = leq_l(zero(q), el(q, "7"));
    REQUIRE(w0.has_value());
    CHECK(*w0->left_x == zero(q));
    CHECK(!leq_l(el(q, "5"), zero(q)).has_value());
    auto w = leq_l(el(q, "3/2"), el(q, "5"));
    REQUIRE(w.has_value());
    CHECK(*w->left_x == el(q, "3/10"));
    CHECK(green_h(el(q, "-2"), el(q, "9/4")).has_value());
}

TEST_CASE("linear path over M:2:Q solves with free variables at zero") {
    RingPtr mq = parse_ring_spec("M:2:Q");
    Element b = el(mq, "[[1,0],[0,0]]");
    Element a = el(mq, "[[1/2,0],[0,0]]");
    auto w = leq_l(a, b);  // automatic -> linear (infinite ring)
    REQUIRE(w.has_value());
    CHECK(w->verify(a, b));
    CHECK(!leq_l(one(mq), b).has_value());  // identity is not below a rank-1
    auto wr = leq_r(a, b);
    REQUIRE(wr.has_value());
    CHECK(wr->verify(a, b));
}

TEST_CASE("undecidable rings raise capability errors") {
    RingPtr big = Ring::modular((std::int64_t{1} << 21));
    Element x = Element::integer(big, 5);
    CHECK_THROWS_AS(leq_l(x, x), capability_error);
    CHECK_THROWS_AS(leq_l(x, x, GreenPath::linear), capability_error);
}

TEST_CASE("mixed rings are rejected") {
    RingPtr z6 = parse_ring_spec("Z:6");
    RingPtr z8 = parse_ring_spec("Z:8");
    CHECK_THROWS_AS(leq_l(one(z6), one(z8)), usage_error);
}
