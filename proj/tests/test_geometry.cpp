#include "gridarr/geometry.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace gridarr;
using testsupport::Rng;

namespace {

Point pt(std::int64_t x, std::int64_t y) { return Point{Rational(x), Rational(y)}; }

}  // namespace

TEST_CASE("rational canonical form") {
    Rational r = make_rational(2, 4);
    CHECK(num(r) == 1);
    CHECK(den(r) == 2);
    Rational neg = make_rational(3, -6);
    CHECK(num(neg) == -1);
    CHECK(den(neg) == 2);
    CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
    // exact reconstruction: (a/b + c/d) - c/d == a/b bit for bit
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        Rational a = rng.rat(1000, 50), b = rng.rat(1000, 50);
        CHECK((a + b) - b == a);
        CHECK(to_string(a) == to_string(parse_rational(to_string(a))));
    }
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(rfloor(Rational(-3, 2)) == -2);
    CHECK(rfloor(Rational(3, 2)) == 1);
}

TEST_CASE("line canonicalization") {
    Line l = Line::from_coeffs(2, 2, 2);
    CHECK(l == Line::from_coeffs(1, 1, 1));
    CHECK(Line::from_coeffs(-1, 2, 3) == Line::from_coeffs(1, -2, -3));
    CHECK(Line::from_coeffs(0, -2, 4) == Line::from_coeffs(0, 1, -2));
    CHECK_THROWS_AS(Line::from_coeffs(0, 0, 5), std::invalid_argument);
    CHECK(Line::from_coeffs(1, 0, 2).is_vertical());
    CHECK(Line::from_coeffs(2, -1, 0).slope() == Rational(2));
    CHECK(Line::from_coeffs(2, -1, -3).y_intercept() == Rational(3));
    CHECK_THROWS_AS(Line::from_coeffs(1, 0, 0).slope(), std::invalid_argument);
}

TEST_CASE("line_through examples") {
    CHECK(Line::through(pt(0, 0), pt(1, 1)) == Line::from_coeffs(1, -1, 0));
    CHECK(Line::through(pt(0, 3), pt(5, 3)) == Line::from_coeffs(0, 1, 3));
    CHECK(Line::through(pt(2, 0), pt(2, 7)) == Line::from_coeffs(1, 0, 2));
    CHECK_THROWS_AS(Line::through(pt(1, 1), pt(1, 1)), std::invalid_argument);

    // rational endpoints stay exact
    Point a{Rational(1, 3), Rational(1, 7)};
    Point b{Rational(-2, 5), Rational(4, 9)};
    Line l = Line::through(a, b);
    CHECK(l.contains(a));
    CHECK(l.contains(b));
}

TEST_CASE("intersect examples and symmetry") {
    Line yx = Line::from_coeffs(1, -1, 0);   // y = x
    Line ymx2 = Line::from_coeffs(1, 1, 2);  // y = -x + 2
    auto p = intersect(yx, ymx2);
    REQUIRE(p);
    CHECK(*p == pt(1, 1));

    CHECK(!intersect(Line::from_coeffs(0, 1, 1), Line::from_coeffs(0, 1, 3)));

    // y = 2x + 1 meets x = 3 at (3, 7): substitute x = 3 into 2*3 + 1.
    auto q = intersect(Line::from_coeffs(2, -1, -1), Line::from_coeffs(1, 0, 3));
    REQUIRE(q);
    CHECK(*q == pt(3, 7));

    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        Int a1 = rng.range(-5, 5), b1 = rng.range(-5, 5);
        Int a2 = rng.range(-5, 5), b2 = rng.range(-5, 5);
        if ((a1 == 0 && b1 == 0) || (a2 == 0 && b2 == 0)) continue;
        Line l1 = Line::from_coeffs(a1, b1, rng.range(-5, 5));
        Line l2 = Line::from_coeffs(a2, b2, rng.range(-5, 5));
        auto a = intersect(l1, l2);
        auto b = intersect(l2, l1);
        CHECK(a.has_value() == b.has_value());
        if (a) {
            CHECK(*a == *b);
            CHECK(l1.contains(*a));
            CHECK(l2.contains(*a));
        }
    }
}

TEST_CASE("orientation") {
    CHECK(orientation(pt(0, 0), pt(1, 0), pt(0, 1)) == Orientation::CCW);
    CHECK(orientation(pt(0, 0), pt(1, 1), pt(2, 2)) == Orientation::COLLINEAR);
    CHECK(orientation(pt(0, 0), pt(0, 1), pt(1, 0)) == Orientation::CW);
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        Point p{rng.rat(20, 5), rng.rat(20, 5)};
        Point q{rng.rat(20, 5), rng.rat(20, 5)};
        Point r{rng.rat(20, 5), rng.rat(20, 5)};
        CHECK(static_cast<int>(orientation(p, q, r)) == -static_cast<int>(orientation(p, r, q)));
    }
}

TEST_CASE("point_above_line") {
    Line y0 = Line::from_coeffs(0, 1, 0);
    CHECK(point_above_line(pt(0, 1), y0) == VerticalSide::ABOVE);
    CHECK(point_above_line(pt(5, 5), Line::from_coeffs(1, -1, 0)) == VerticalSide::ON);
    CHECK(point_above_line(pt(0, -1), y0) == VerticalSide::BELOW);
    CHECK_THROWS_AS(point_above_line(pt(0, 0), Line::from_coeffs(1, 0, 2)),
                    std::invalid_argument);
}

TEST_CASE("convex hull examples") {
    CHECK(convex_hull({pt(0, 0)}) == std::vector<Point>{pt(0, 0)});

    auto h = convex_hull({pt(0, 0), pt(4, 0), pt(0, 4), pt(1, 1)});
    CHECK(h == std::vector<Point>{pt(0, 0), pt(4, 0), pt(0, 4)});

    // (1,0) lies on the edge (0,0)-(2,0): orientation oracle confirms, and
    // the hull must exclude it.
    CHECK(orientation(pt(0, 0), pt(2, 0), pt(1, 0)) == Orientation::COLLINEAR);
    auto h2 = convex_hull({pt(0, 0), pt(1, 0), pt(2, 0), pt(1, 1)});
    CHECK(h2 == std::vector<Point>{pt(0, 0), pt(2, 0), pt(1, 1)});

    // collinear set degenerates to the two extremes
    CHECK(convex_hull({pt(0, 0), pt(1, 1), pt(2, 2), pt(3, 3)}) ==
          std::vector<Point>{pt(0, 0), pt(3, 3)});
}

TEST_CASE("convex hull idempotent on random input") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Point> pts;
        int n = static_cast<int>(rng.range(1, 14));
        for (int i = 0; i < n; ++i) pts.push_back(Point{rng.rat(12, 4), rng.rat(12, 4)});
        auto h = convex_hull(pts);
        CHECK(convex_hull(h) == h);
        for (const Point& p : pts) CHECK(in_convex_hull(p, h) != HullLocation::OUTSIDE);
    }
}

TEST_CASE("in_convex_hull examples") {
    std::vector<Point> square{pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)};
    CHECK(in_convex_hull(pt(1, 1), square) == HullLocation::INSIDE);
    std::vector<Point> tri{pt(0, 0), pt(4, 0), pt(0, 4)};
    CHECK(in_convex_hull(pt(0, 2), tri) == HullLocation::BOUNDARY);
    CHECK(in_convex_hull(pt(9, 9), tri) == HullLocation::OUTSIDE);
    CHECK_THROWS_AS(in_convex_hull(pt(0, 0), std::vector<Point>{pt(0, 0), pt(1, 0), pt(2, 0)}),
                    std::invalid_argument);
}

TEST_CASE("points sampled on hull edges classify as BOUNDARY") {
    Rng rng(19);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Point> pts;
        for (int i = 0; i < 8; ++i) pts.push_back(Point{rng.rat(10, 3), rng.rat(10, 3)});
        auto h = convex_hull(pts);
        if (h.size() < 2) continue;
        std::size_t edges = h.size() == 2 ? 1 : h.size();
        for (std::size_t e = 0; e < edges; ++e) {
            const Point& a = h[e];
            const Point& b = h[(e + 1) % h.size()];
            Rational lambda(rng.range(1, 9), 10);
            Point p{a.x + lambda * (b.x - a.x), a.y + lambda * (b.y - a.y)};
            CHECK(in_convex_hull(p, h) == HullLocation::BOUNDARY);
        }
    }
}
