#pragma once

// Deterministic generators and independent oracles shared by the unit and
// acceptance suites. Everything is seeded; no std::*_distribution (their
// output is implementation-defined).

#include "gridarr/arrangement.hpp"
#include "gridarr/grid_detect.hpp"
#include "gridarr/grid_extract.hpp"

#include <random>
#include <set>
#include <unordered_set>
#include <vector>

namespace testsupport {

using namespace gridarr;

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    std::uint64_t next() { return eng(); }
    // uniform in [lo, hi]
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Rational rat(std::int64_t max_num, std::int64_t max_den) {
        return Rational(range(-max_num, max_num), range(1, max_den));
    }
};

// Random small-coefficient arrangement: a pool of lines plus a sampled
// subset of their pairwise intersections (grids appear with fair odds).
inline Arrangement random_arrangement(std::uint64_t seed, std::size_t nlines,
                                      int keep_numerator = 2, int keep_denominator = 3) {
    Rng rng(seed);
    std::vector<Line> lines;
    std::unordered_set<Line> seen;
    while (lines.size() < nlines) {
        Int a = rng.range(-4, 4);
        Int b = rng.range(-4, 4);
        Int c = rng.range(-6, 6);
        if (a == 0 && b == 0) continue;
        Line l = Line::from_coeffs(a, b, c);
        if (seen.insert(l).second) lines.push_back(l);
    }
    std::vector<Point> pts;
    std::unordered_set<Point> pseen;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            auto p = intersect(lines[i], lines[j]);
            if (!p) continue;
            if (static_cast<int>(rng.next() % keep_denominator) >= keep_numerator) continue;
            if (pseen.insert(*p).second) pts.push_back(*p);
        }
    return Arrangement(std::move(pts), std::move(lines));
}

// Exhaustive 2x2 grid oracle by quadruple enumeration over line subsets.
inline bool quadruple_grid_oracle(const Arrangement& arr) {
    const auto& lines = arr.lines();
    const std::size_t n = lines.size();
    auto in_p = [&](const Line& a, const Line& b, Point& out) {
        auto p = intersect(a, b);
        if (!p || !arr.point_index(*p)) return false;
        out = *p;
        return true;
    };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c)
                for (std::size_t d = c + 1; d < n; ++d) {
                    const std::array<std::array<std::size_t, 4>, 3> splits{
                        {{a, b, c, d}, {a, c, b, d}, {a, d, b, c}}};
                    for (const auto& s : splits) {
                        Point p1, p2, p3, p4;
                        if (!in_p(lines[s[0]], lines[s[2]], p1)) continue;
                        if (!in_p(lines[s[0]], lines[s[3]], p2)) continue;
                        if (!in_p(lines[s[1]], lines[s[2]], p3)) continue;
                        if (!in_p(lines[s[1]], lines[s[3]], p4)) continue;
                        std::set<Point> uniq{p1, p2, p3, p4};
                        if (uniq.size() == 4) return true;
                    }
                }
    return false;
}

// Pencil-style red/blue input: positive-slope reds crossing the y-axis low,
// negative-slope blues crossing high. Regenerates until the red-blue
// invariants hold, so the result is deterministic in the seed.
inline RedBlueInput random_red_blue(std::uint64_t seed, std::size_t per_color) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(seed * 1315423911ULL + attempt + 1);
        RedBlueInput input;
        std::unordered_set<Line> used;
        std::unordered_set<Rational> intercepts;
        auto add = [&](std::vector<Line>& side, bool red) {
            for (int tries = 0; tries < 200; ++tries) {
                // slope 1 + j/q for reds, -1 - j/q for blues; blue
                // intercepts sit far above the red band so blue-blue
                // crossings stay above every red line
                std::int64_t j = rng.range(0, 999);
                std::int64_t q = 1009;
                std::int64_t bn = red ? rng.range(0, 100000)
                                      : 1000000000 + rng.range(0, 100000);
                std::int64_t bd = 7;
                // y = s*x + b with s = sign*(q+j)/q, b = bn/bd:
                // sign*(q+j)*bd*x - q*bd*y + q*bn = 0
                std::int64_t sn = red ? (q + j) : -(q + j);
                Line l = Line::from_coeffs(Int(sn) * bd, Int(-q) * bd, Int(-q) * bn);
                if (used.count(l)) continue;
                Rational ic = l.y_intercept();
                if (intercepts.count(ic)) continue;
                used.insert(l);
                intercepts.insert(ic);
                side.push_back(l);
                return true;
            }
            return false;
        };
        bool ok = true;
        for (std::size_t i = 0; ok && i < per_color; ++i) ok = add(input.red, true);
        for (std::size_t i = 0; ok && i < per_color; ++i) ok = add(input.blue, false);
        if (!ok) continue;
        try {
            validate_red_blue(input);
            return input;
        } catch (const std::invalid_argument&) {
            continue;  // coincident cross-intersections; retry
        }
    }
}

// Random line cluster with a few pencils (shared points) so matchings have
// nontrivial per-point structure, plus the point set to match against.
inline std::pair<std::vector<Point>, std::vector<Line>> random_cluster(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Point> hubs;
    std::unordered_set<Point> hub_seen;
    while (hubs.size() < 3) {
        Point h{Rational(rng.range(-8, 8)), Rational(rng.range(-8, 8))};
        if (hub_seen.insert(h).second) hubs.push_back(h);
    }
    std::vector<Line> lines;
    std::unordered_set<Line> used;
    for (const Point& h : hubs) {
        std::size_t want = static_cast<std::size_t>(rng.range(3, 6));
        for (std::size_t i = 0; i < want * 4 && i < 100; ++i) {
            Int sa = rng.range(-9, 9);
            Int sb = rng.range(-9, 9);
            if (sa == 0 && sb == 0) continue;
            // line through h with direction-ish coefficients: a(x-hx)+b(y-hy)=0
            Rational cr = Rational(sa) * h.x + Rational(sb) * h.y;
            Int m = den(cr);
            Line l = Line::from_coeffs(sa * m, sb * m, num(cr));
            if (!used.insert(l).second) continue;
            lines.push_back(l);
            if (--want == 0) break;
        }
    }
    // some unrelated lines
    for (int i = 0; i < 4; ++i) {
        Int a = rng.range(-5, 5), b = rng.range(-5, 5), c = rng.range(-20, 20);
        if (a == 0 && b == 0) continue;
        Line l = Line::from_coeffs(a, b, c);
        if (used.insert(l).second) lines.push_back(l);
    }
    std::vector<Point> pts = hubs;
    std::unordered_set<Point> pseen(hubs.begin(), hubs.end());
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            auto p = intersect(lines[i], lines[j]);
            if (p && rng.next() % 3 == 0 && pseen.insert(*p).second) pts.push_back(*p);
        }
    return {pts, lines};
}

}  // namespace testsupport
