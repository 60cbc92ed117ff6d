#pragma once

#include "gridarr/rational.hpp"

#include <optional>
#include <vector>

namespace gridarr {

struct Point {
    Rational x;
    Rational y;

    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point& o) const { return !(*this == o); }
    // Lexicographic by x then y; total order.
    bool operator<(const Point& o) const {
        if (x != o.x) return x < o.x;
        return y < o.y;
    }
};

// The locus a*x + b*y = c with integer coefficients in canonical form:
// gcd(|a|,|b|,|c|) = 1 and the first nonzero of (a, b) positive. Vertical
// lines (b = 0) are first-class; slope/intercept are partial accessors.
struct Line {
    Int a;
    Int b;
    Int c;

    static Line from_coeffs(Int a, Int b, Int c);
    static Line through(const Point& p, const Point& q);

    bool is_vertical() const { return b == 0; }
    Rational slope() const;        // -a/b, throws for vertical lines
    Rational y_intercept() const;  // c/b, throws for vertical lines
    Rational y_at(const Rational& x) const;  // throws for vertical lines
    Rational x_at(const Rational& y) const;  // throws for horizontal lines

    bool contains(const Point& p) const { return a * p.x + b * p.y == c; }

    bool operator==(const Line& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator!=(const Line& o) const { return !(*this == o); }
    bool operator<(const Line& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

std::optional<Point> intersect(const Line& l1, const Line& l2);

enum class Orientation { CW = -1, COLLINEAR = 0, CCW = 1 };
Orientation orientation(const Point& p, const Point& q, const Point& r);

enum class VerticalSide { BELOW = -1, ON = 0, ABOVE = 1 };
// Compares p.y to l's y at p.x, exactly. l must be non-vertical.
VerticalSide point_above_line(const Point& p, const Line& l);

// Minimal hull vertex set in CCW order, no three collinear vertices.
// Degenerate inputs: one point -> itself, collinear set -> the two extremes.
std::vector<Point> convex_hull(std::vector<Point> pts);

enum class HullLocation { INSIDE, BOUNDARY, OUTSIDE };
// Exact classification against a valid CCW hull (throws on malformed hulls).
HullLocation in_convex_hull(const Point& p, const std::vector<Point>& hull);

}  // namespace gridarr

template <>
struct std::hash<gridarr::Point> {
    std::size_t operator()(const gridarr::Point& p) const {
        std::hash<gridarr::Rational> h;
        return gridarr::hash_combine(h(p.x), h(p.y));
    }
};

template <>
struct std::hash<gridarr::Line> {
    std::size_t operator()(const gridarr::Line& l) const {
        std::hash<gridarr::Int> h;
        return gridarr::hash_combine(gridarr::hash_combine(h(l.a), h(l.b)), h(l.c));
    }
};
