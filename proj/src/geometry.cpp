#include "gridarr/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace gridarr {

Line Line::from_coeffs(Int a, Int b, Int c) {
    if (a == 0 && b == 0) throw std::invalid_argument("line: (a, b) must not be (0, 0)");
    Int g = gcd(gcd(abs(a), abs(b)), abs(c));
    a /= g;
    b /= g;
    c /= g;
    const bool flip = (a != 0) ? (a < 0) : (b < 0);
    if (flip) {
        a = -a;
        b = -b;
        c = -c;
    }
    Line l;
    l.a = std::move(a);
    l.b = std::move(b);
    l.c = std::move(c);
    return l;
}

Line Line::through(const Point& p, const Point& q) {
    if (p == q) throw std::invalid_argument("line_through: identical points");
    // dy*(x - px) - dx*(y - py) = 0, then clear denominators.
    Rational dx = q.x - p.x;
    Rational dy = q.y - p.y;
    Rational ra = dy;
    Rational rb = -dx;
    Rational rc = dy * p.x - dx * p.y;
    Int m = den(ra) * den(rb) * den(rc);
    return from_coeffs(num(ra) * (m / den(ra)), num(rb) * (m / den(rb)), num(rc) * (m / den(rc)));
}

Rational Line::slope() const {
    if (b == 0) throw std::invalid_argument("slope: vertical line");
    return make_rational(-a, b);
}

Rational Line::y_intercept() const {
    if (b == 0) throw std::invalid_argument("y_intercept: vertical line");
    return make_rational(c, b);
}

Rational Line::y_at(const Rational& x) const {
    if (b == 0) throw std::invalid_argument("y_at: vertical line");
    return (Rational(c) - Rational(a) * x) / Rational(b);
}

Rational Line::x_at(const Rational& y) const {
    if (a == 0) throw std::invalid_argument("x_at: horizontal line");
    return (Rational(c) - Rational(b) * y) / Rational(a);
}

std::optional<Point> intersect(const Line& l1, const Line& l2) {
    Int det = l1.a * l2.b - l2.a * l1.b;
    if (det == 0) return std::nullopt;
    Point p;
    p.x = make_rational(l1.c * l2.b - l2.c * l1.b, det);
    p.y = make_rational(l1.a * l2.c - l2.a * l1.c, det);
    return p;
}

Orientation orientation(const Point& p, const Point& q, const Point& r) {
    // sign of (q-p) x (r-p), cross-multiplied to integers (denominators are
    // positive, so no sign corrections)
    Int n1 = num(q.x) * den(p.x) - num(p.x) * den(q.x);  // q.x - p.x
    Int d1 = den(q.x) * den(p.x);
    Int n2 = num(r.y) * den(p.y) - num(p.y) * den(r.y);  // r.y - p.y
    Int d2 = den(r.y) * den(p.y);
    Int n3 = num(q.y) * den(p.y) - num(p.y) * den(q.y);  // q.y - p.y
    Int d3 = den(q.y) * den(p.y);
    Int n4 = num(r.x) * den(p.x) - num(p.x) * den(r.x);  // r.x - p.x
    Int d4 = den(r.x) * den(p.x);
    Int cross = n1 * n2 * d3 * d4 - n3 * n4 * d1 * d2;
    int s = cross.sign();
    return s > 0 ? Orientation::CCW : (s < 0 ? Orientation::CW : Orientation::COLLINEAR);
}

VerticalSide point_above_line(const Point& p, const Line& l) {
    if (l.is_vertical()) throw std::invalid_argument("point_above_line: vertical line");
    // sign of (a*x + b*y - c) * sign(b) without rational normalization
    Int xd = den(p.x), yd = den(p.y);
    Int v = l.a * num(p.x) * yd + l.b * num(p.y) * xd - l.c * xd * yd;
    int s = v.sign() * l.b.sign();
    return s > 0 ? VerticalSide::ABOVE : (s < 0 ? VerticalSide::BELOW : VerticalSide::ON);
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
    if (pts.empty()) throw std::invalid_argument("convex_hull: empty point set");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;

    std::vector<Point> hull;
    hull.reserve(2 * n);
    // Lower hull, then upper; strict turns only so collinear edge-interior
    // points are excluded.
    for (const Point& p : pts) {
        while (hull.size() >= 2 &&
               orientation(hull[hull.size() - 2], hull.back(), p) != Orientation::CCW)
            hull.pop_back();
        hull.push_back(p);
    }
    const std::size_t lower = hull.size() + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
        while (hull.size() >= lower &&
               orientation(hull[hull.size() - 2], hull.back(), *it) != Orientation::CCW)
            hull.pop_back();
        hull.push_back(*it);
    }
    hull.pop_back();
    return hull;
}

namespace {

void check_hull(const std::vector<Point>& hull) {
    if (hull.empty()) throw std::invalid_argument("hull: empty");
    if (hull.size() == 2) {
        if (hull[0] == hull[1]) throw std::invalid_argument("hull: duplicate vertices");
        return;
    }
    for (std::size_t i = 0; i < hull.size() && hull.size() >= 3; ++i) {
        const Point& a = hull[i];
        const Point& b = hull[(i + 1) % hull.size()];
        const Point& c = hull[(i + 2) % hull.size()];
        if (orientation(a, b, c) != Orientation::CCW)
            throw std::invalid_argument("hull: not strictly convex CCW");
    }
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
    if (orientation(a, p, b) != Orientation::COLLINEAR) return false;
    const Point& lo = a < b ? a : b;
    const Point& hi = a < b ? b : a;
    return !(p < lo) && !(hi < p);
}

}  // namespace

HullLocation in_convex_hull(const Point& p, const std::vector<Point>& hull) {
    check_hull(hull);
    if (hull.size() == 1)
        return p == hull[0] ? HullLocation::BOUNDARY : HullLocation::OUTSIDE;
    if (hull.size() == 2)
        return on_segment(p, hull[0], hull[1]) ? HullLocation::BOUNDARY : HullLocation::OUTSIDE;
    bool boundary = false;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        switch (orientation(hull[i], hull[(i + 1) % hull.size()], p)) {
            case Orientation::CW:
                return HullLocation::OUTSIDE;
            case Orientation::COLLINEAR:
                boundary = true;
                break;
            case Orientation::CCW:
                break;
        }
    }
    return boundary ? HullLocation::BOUNDARY : HullLocation::INSIDE;
}

}  // namespace gridarr
