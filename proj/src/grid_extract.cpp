#include "gridarr/grid_extract.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace gridarr {

void validate_red_blue(const RedBlueInput& input) {
    if (input.red.empty() || input.blue.empty())
        throw std::invalid_argument("red-blue input: empty color class");
    std::unordered_set<Line> all;
    for (const auto* side : {&input.red, &input.blue})
        for (const Line& l : *side) {
            if (l.is_vertical()) throw std::invalid_argument("red-blue input: vertical line");
            if (!all.insert(l).second)
                throw std::invalid_argument("red-blue input: duplicate line");
        }
    std::unordered_set<Rational> intercepts;
    for (const Line& l : all)
        if (!intercepts.insert(l.y_intercept()).second)
            throw std::invalid_argument("red-blue input: two lines share a y-intercept");
    std::unordered_set<Point> cross;
    for (const Line& r : input.red)
        for (const Line& b : input.blue) {
            auto p = intersect(r, b);
            if (!p) throw std::invalid_argument("red-blue input: parallel red-blue pair");
            if (!cross.insert(*p).second)
                throw std::invalid_argument("red-blue input: coincident cross-intersections");
        }
}

SweepSplit split_by_sweep(const RedBlueInput& input) {
    if (input.red.empty() || input.blue.empty())
        throw std::invalid_argument("split_by_sweep: empty color class");
    struct Entry {
        Rational t;
        bool red;
        std::size_t idx;
    };
    std::vector<Entry> merged;
    for (std::size_t i = 0; i < input.red.size(); ++i) {
        const Line& l = input.red[i];
        if (l.is_vertical()) throw std::invalid_argument("split_by_sweep: vertical line");
        merged.push_back({l.y_intercept(), true, i});
    }
    for (std::size_t i = 0; i < input.blue.size(); ++i) {
        const Line& l = input.blue[i];
        if (l.is_vertical()) throw std::invalid_argument("split_by_sweep: vertical line");
        merged.push_back({l.y_intercept(), false, i});
    }
    std::sort(merged.begin(), merged.end(),
              [](const Entry& a, const Entry& b) { return a.t < b.t; });
    for (std::size_t i = 0; i + 1 < merged.size(); ++i)
        if (merged[i].t == merged[i + 1].t)
            throw std::invalid_argument("split_by_sweep: degenerate input, colliding y-intercepts");

    const std::size_t need_red = (input.red.size() + 1) / 2;
    const std::size_t need_blue = (input.blue.size() + 1) / 2;
    std::size_t reds = 0, blues = 0, stop = 0;
    bool red_below = true;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        if (merged[i].red) {
            if (++reds == need_red) {
                stop = i;
                red_below = true;
                break;
            }
        } else {
            if (++blues == need_blue) {
                stop = i;
                red_below = false;
                break;
            }
        }
    }
    // Push y1 further up through any run of the same color: keeping more
    // low lines costs the other color nothing.
    while (stop + 1 < merged.size() && merged[stop + 1].red == red_below) ++stop;
    SweepSplit out;
    out.red_below = red_below;
    out.y1 = (stop + 1 < merged.size()) ? Rational((merged[stop].t + merged[stop + 1].t) / 2)
                                        : Rational(merged[stop].t + 1);
    std::vector<bool> red_low(input.red.size(), false), blue_low(input.blue.size(), false);
    for (std::size_t i = 0; i <= stop; ++i)
        (merged[i].red ? red_low : blue_low)[merged[i].idx] = true;
    for (std::size_t i = 0; i < input.red.size(); ++i)
        if (red_low[i] == red_below) out.red_kept.push_back(input.red[i]);
    for (std::size_t i = 0; i < input.blue.size(); ++i)
        if (blue_low[i] != red_below) out.blue_kept.push_back(input.blue[i]);
    return out;
}

namespace {

// Uniform above/below verdict of all triples (r, b_i, b_j); parallel blue
// pairs are exempt. Vacuous triples count as ALL_BELOW.
std::optional<Polarity> homogeneity(const std::vector<Line>& rs, const std::vector<Line>& b1s,
                                    const std::vector<Line>& b2s) {
    bool any_edge = false, any_non = false;
    for (const Line& b1 : b1s)
        for (const Line& b2 : b2s) {
            auto p = intersect(b1, b2);
            if (!p) continue;
            for (const Line& r : rs) {
                if (point_above_line(*p, r) == VerticalSide::ABOVE)
                    any_edge = true;
                else
                    any_non = true;
                if (any_edge && any_non) return std::nullopt;
            }
        }
    return any_edge ? Polarity::ALL_ABOVE : Polarity::ALL_BELOW;
}

std::vector<Line> sorted_by_intercept(std::vector<Line> v) {
    std::sort(v.begin(), v.end(), [](const Line& a, const Line& b) {
        Rational ia = a.y_intercept(), ib = b.y_intercept();
        if (ia != ib) return ia < ib;
        return a < b;
    });
    return v;
}

struct BestTriple {
    bool found = false;
    Rational fraction;
    std::size_t total = 0;
    std::vector<Line> r, b1, b2;
    Polarity polarity = Polarity::ALL_BELOW;
};

// Exhaustive maximization of the minimum kept fraction over all nonempty
// subset triples; parts must have <= 6 lines. full_* are the denominators.
BestTriple exhaustive_triple(const std::vector<Line>& rs, const std::vector<Line>& b1s,
                             const std::vector<Line>& b2s, std::size_t full_r,
                             std::size_t full_b1, std::size_t full_b2) {
    const std::size_t nr = rs.size(), n1 = b1s.size(), n2 = b2s.size();
    // above/valid bitmasks over pair index i*n2 + j.
    std::vector<std::uint64_t> above(nr, 0);
    std::uint64_t valid = 0;
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) {
            auto p = intersect(b1s[i], b2s[j]);
            if (!p) continue;
            std::uint64_t bit = std::uint64_t(1) << (i * n2 + j);
            valid |= bit;
            for (std::size_t q = 0; q < nr; ++q)
                if (point_above_line(*p, rs[q]) == VerticalSide::ABOVE) above[q] |= bit;
        }

    BestTriple best;
    for (std::uint32_t mr = 1; mr < (1u << nr); ++mr)
        for (std::uint32_t m1 = 1; m1 < (1u << n1); ++m1) {
            std::uint64_t rows = 0;
            for (std::size_t i = 0; i < n1; ++i)
                if (m1 >> i & 1) rows |= std::uint64_t(1) << (i * n2);
            for (std::uint32_t m2 = 1; m2 < (1u << n2); ++m2) {
                std::uint64_t pairs = 0;
                for (std::size_t i = 0; i < n1; ++i)
                    if (m1 >> i & 1) pairs |= std::uint64_t(m2) << (i * n2);
                pairs &= valid;
                bool all_above = true, all_below = true;
                for (std::size_t q = 0; q < nr && (all_above || all_below); ++q) {
                    if (!(mr >> q & 1)) continue;
                    std::uint64_t hit = above[q] & pairs;
                    if (hit != pairs) all_above = false;
                    if (hit != 0) all_below = false;
                }
                if (!all_above && !all_below) continue;
                Rational frac = std::min(
                    {Rational(std::popcount(mr), full_r), Rational(std::popcount(m1), full_b1),
                     Rational(std::popcount(m2), full_b2)});
                std::size_t total = std::popcount(mr) + std::popcount(m1) + std::popcount(m2);
                if (best.found &&
                    (frac < best.fraction || (frac == best.fraction && total <= best.total)))
                    continue;
                best.found = true;
                best.fraction = frac;
                best.total = total;
                best.polarity = (pairs != 0 && all_above) ? Polarity::ALL_ABOVE
                                                          : Polarity::ALL_BELOW;
                best.r.clear();
                best.b1.clear();
                best.b2.clear();
                for (std::size_t q = 0; q < nr; ++q)
                    if (mr >> q & 1) best.r.push_back(rs[q]);
                for (std::size_t i = 0; i < n1; ++i)
                    if (m1 >> i & 1) best.b1.push_back(b1s[i]);
                for (std::size_t j = 0; j < n2; ++j)
                    if (m2 >> j & 1) best.b2.push_back(b2s[j]);
            }
            (void)rows;
        }
    return best;
}

std::vector<Line> slab(const std::vector<Line>& sorted, std::size_t count, bool low) {
    count = std::min(count, sorted.size());
    if (low) return {sorted.begin(), sorted.begin() + count};
    return {sorted.end() - count, sorted.end()};
}

}  // namespace

SameTypeResult same_type_triple(const std::vector<Line>& r, const std::vector<Line>& b1,
                                const std::vector<Line>& b2) {
    if (r.empty() || b1.empty() || b2.empty())
        throw std::invalid_argument("same_type_triple: empty part");
    for (const auto* part : {&r, &b1, &b2})
        for (const Line& l : *part)
            if (l.is_vertical())
                throw std::invalid_argument("same_type_triple: vertical line");

    SameTypeResult out;
    auto finish = [&](std::vector<Line> rr, std::vector<Line> bb1, std::vector<Line> bb2,
                      Polarity pol, Rational frac) {
        out.r = std::move(rr);
        out.b1 = std::move(bb1);
        out.b2 = std::move(bb2);
        out.polarity = pol;
        out.achieved_fraction = std::move(frac);
        // Soundness gate: re-verify homogeneity of the returned parts.
        auto check = homogeneity(out.r, out.b1, out.b2);
        if (!check || *check != out.polarity)
            throw std::logic_error("same_type_triple: selected parts are not homogeneous");
        return out;
    };

    if (r.size() <= 6 && b1.size() <= 6 && b2.size() <= 6) {
        BestTriple best = exhaustive_triple(r, b1, b2, r.size(), b1.size(), b2.size());
        return finish(best.r, best.b1, best.b2, best.polarity, best.fraction);
    }

    std::vector<Line> rs = sorted_by_intercept(r);
    std::vector<Line> b1s = sorted_by_intercept(b1);
    std::vector<Line> b2s = sorted_by_intercept(b2);

    for (std::size_t level = 0;; ++level) {
        std::size_t nr = std::max<std::size_t>(1, r.size() >> level);
        std::size_t n1 = std::max<std::size_t>(1, b1.size() >> level);
        std::size_t n2 = std::max<std::size_t>(1, b2.size() >> level);
        // Low reds against high blues first, then the mirror (level 0
        // tries the full sets, where the two coincide).
        for (bool low_reds : {true, false}) {
            if (level == 0 && !low_reds) continue;
            auto rr = slab(rs, nr, low_reds);
            auto bb1 = slab(b1s, n1, !low_reds);
            auto bb2 = slab(b2s, n2, !low_reds);
            auto pol = homogeneity(rr, bb1, bb2);
            if (pol) {
                Rational frac = std::min({Rational(rr.size(), r.size()),
                                          Rational(bb1.size(), b1.size()),
                                          Rational(bb2.size(), b2.size())});
                return finish(rr, bb1, bb2, *pol, frac);
            }
        }
        if (nr <= 6 && n1 <= 6 && n2 <= 6) {
            // Exhaustive fallback over the extreme slabs.
            BestTriple a = exhaustive_triple(slab(rs, 6, true), slab(b1s, 6, false),
                                             slab(b2s, 6, false), r.size(), b1.size(), b2.size());
            BestTriple b = exhaustive_triple(slab(rs, 6, false), slab(b1s, 6, true),
                                             slab(b2s, 6, true), r.size(), b1.size(), b2.size());
            BestTriple& pick =
                (!b.found || (a.found && (a.fraction > b.fraction ||
                                          (a.fraction == b.fraction && a.total >= b.total))))
                    ? a
                    : b;
            return finish(pick.r, pick.b1, pick.b2, pick.polarity, pick.fraction);
        }
    }
}

namespace {

// Longest nondecreasing (or nonincreasing) subsequence, patience style,
// returning positions.
std::vector<std::size_t> longest_monotone(const std::vector<Rational>& v, bool nonincreasing) {
    std::vector<std::size_t> tails;  // tails[k] = index ending best subseq of length k+1
    std::vector<std::size_t> parent(v.size(), SIZE_MAX);
    auto worse = [&](const Rational& a, const Rational& b) {
        return nonincreasing ? (a < b) : (a > b);
    };
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::size_t lo = 0, hi = tails.size();
        while (lo < hi) {  // first position whose tail cannot precede v[i]
            std::size_t mid = (lo + hi) / 2;
            if (worse(v[tails[mid]], v[i]))
                hi = mid;
            else
                lo = mid + 1;
        }
        if (lo > 0) parent[i] = tails[lo - 1];
        if (lo == tails.size())
            tails.push_back(i);
        else
            tails[lo] = i;
    }
    std::vector<std::size_t> out;
    for (std::size_t at = tails.back(); at != SIZE_MAX; at = parent[at]) out.push_back(at);
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

OneSidedResult one_sided_subset(const std::vector<Line>& l, const Line& ref) {
    if (l.empty()) throw std::invalid_argument("one_sided_subset: empty input");
    const bool vert = ref.is_vertical();
    Rational ref_slope, ref_x;
    if (vert)
        ref_x = Rational(ref.c, ref.a);
    else
        ref_slope = ref.slope();

    struct Item {
        Rational t;      // position of the crossing along ref
        Rational sigma;  // slope in the frame where ref is the y-axis
        std::size_t idx;
    };
    std::vector<Item> items;
    items.reserve(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
        auto p = intersect(l[i], ref);
        if (!p) throw std::invalid_argument("one_sided_subset: line parallel to reference");
        Item it;
        it.idx = i;
        if (vert) {
            it.t = p->y;
            it.sigma = l[i].slope();  // l[i] vertical would be parallel, caught above
        } else {
            it.t = p->x;
            it.sigma = l[i].is_vertical() ? Rational(0)
                                          : Rational(1) / (l[i].slope() - ref_slope);
        }
        items.push_back(std::move(it));
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.t < b.t; });
    for (std::size_t i = 0; i + 1 < items.size(); ++i)
        if (items[i].t == items[i + 1].t)
            throw std::invalid_argument("one_sided_subset: duplicate intercept on reference");

    std::vector<Rational> sig;
    sig.reserve(items.size());
    for (const Item& it : items) sig.push_back(it.sigma);
    auto inc = longest_monotone(sig, false);
    auto dec = longest_monotone(sig, true);
    const bool use_inc = inc.size() >= dec.size();
    const auto& pick = use_inc ? inc : dec;

    OneSidedResult out;
    out.side = use_inc ? RefSide::LEFT_OF_REF : RefSide::RIGHT_OF_REF;
    for (std::size_t pos : pick) out.subset.push_back(l[items[pos].idx]);

    // Exact sign check of every pairwise intersection of the result.
    for (std::size_t i = 0; i < out.subset.size(); ++i)
        for (std::size_t j = i + 1; j < out.subset.size(); ++j) {
            auto p = intersect(out.subset[i], out.subset[j]);
            if (!p) continue;
            bool left = vert ? (p->x < ref_x)
                             : (point_above_line(*p, ref) == VerticalSide::BELOW);
            bool right = vert ? (p->x > ref_x)
                              : (point_above_line(*p, ref) == VerticalSide::ABOVE);
            if ((out.side == RefSide::LEFT_OF_REF && !left) ||
                (out.side == RefSide::RIGHT_OF_REF && !right))
                throw std::logic_error("one_sided_subset: side certificate violated");
        }
    return out;
}

Line separator_line(const std::vector<Point>& above_pts, const std::vector<Point>& below_pts,
                    SlopeSign slope_sign) {
    std::optional<Rational> lo, hi;  // feasible slopes form the open interval (lo, hi)
    Point lo_a, lo_b, hi_a, hi_b;
    if (!above_pts.empty() && !below_pts.empty()) {
        auto ha = convex_hull(above_pts);
        auto hb = convex_hull(below_pts);
        for (const Point& a : ha)
            for (const Point& b : hb) {
                Rational dx = a.x - b.x;
                Rational dy = a.y - b.y;
                if (dx == 0) {
                    if (dy <= 0)
                        throw NotSeparableError("separator_line: vertically aligned pair", a, b);
                    continue;
                }
                Rational bound = dy / dx;
                if (dx > 0) {
                    if (!hi || bound < *hi) {
                        hi = bound;
                        hi_a = a;
                        hi_b = b;
                    }
                } else {
                    if (!lo || bound > *lo) {
                        lo = bound;
                        lo_a = a;
                        lo_b = b;
                    }
                }
            }
    }
    if (lo && hi && *lo >= *hi)
        throw NotSeparableError("separator_line: empty slope interval", hi_a, hi_b);

    Rational sigma;
    if (slope_sign == SlopeSign::POSITIVE) {
        Rational low = (lo && *lo > 0) ? *lo : Rational(0);
        if (hi) {
            if (*hi <= low)
                throw NotSeparableError("separator_line: no positive slope separates", hi_a, hi_b);
            sigma = (low + *hi) / 2;
        } else {
            sigma = low + 1;
        }
    } else {
        Rational high = (hi && *hi < 0) ? *hi : Rational(0);
        if (lo) {
            if (*lo >= high)
                throw NotSeparableError("separator_line: no negative slope separates", lo_a, lo_b);
            sigma = (*lo + high) / 2;
        } else {
            sigma = high - 1;
        }
    }

    Rational tau;
    auto score = [&](const Point& p) -> Rational { return p.y - sigma * p.x; };
    if (!above_pts.empty() && !below_pts.empty()) {
        Rational m_above = score(above_pts[0]), m_below = score(below_pts[0]);
        for (const Point& p : above_pts) m_above = std::min(m_above, score(p));
        for (const Point& p : below_pts) m_below = std::max(m_below, score(p));
        if (m_below >= m_above)
            throw NotSeparableError("separator_line: clouds interleave at chosen slope",
                                    above_pts[0], below_pts[0]);
        tau = (m_above + m_below) / 2;
    } else if (!above_pts.empty()) {
        Rational m_above = score(above_pts[0]);
        for (const Point& p : above_pts) m_above = std::min(m_above, score(p));
        tau = m_above - 1;
    } else if (!below_pts.empty()) {
        Rational m_below = score(below_pts[0]);
        for (const Point& p : below_pts) m_below = std::max(m_below, score(p));
        tau = m_below + 1;
    } else {
        tau = 0;
    }

    // y = sigma*x + tau as an integer triple.
    Int sn = num(sigma), sd = den(sigma), tn = num(tau), td = den(tau);
    Line out = Line::from_coeffs(sn * td, -sd * td, -tn * sd);
    for (const Point& p : above_pts)
        if (point_above_line(p, out) != VerticalSide::ABOVE)
            throw std::logic_error("separator_line: postcondition violated (above)");
    for (const Point& p : below_pts)
        if (point_above_line(p, out) != VerticalSide::BELOW)
            throw std::logic_error("separator_line: postcondition violated (below)");
    return out;
}

namespace {

std::vector<Point> cross_points(const std::vector<Line>& a, const std::vector<Line>& b) {
    std::vector<Point> out;
    out.reserve(a.size() * b.size());
    for (const Line& x : a)
        for (const Line& y : b) {
            auto p = intersect(x, y);
            if (p) out.push_back(*p);
        }
    return out;
}

GridWitness assemble_witness(std::vector<Line> f1, std::vector<Line> f2) {
    std::sort(f1.begin(), f1.end());
    std::sort(f2.begin(), f2.end());
    if (f2[0] < f1[0]) std::swap(f1, f2);
    GridWitness w;
    w.l1 = std::move(f1);
    w.l2 = std::move(f2);
    for (const Line& a : w.l1)
        for (const Line& b : w.l2) {
            auto p = intersect(a, b);
            if (!p) throw std::logic_error("assemble_witness: parallel cross pair");
            w.p0.push_back(*p);
        }
    return w;
}

}  // namespace

ExtractResult extract_natural_grid(const RedBlueInput& input, std::size_t t,
                                   const ExtractConfig& cfg) {
    if (t < 2) throw std::invalid_argument("extract_natural_grid: t must be >= 2");
    validate_red_blue(input);
    const std::size_t want = cfg.capacity * t * t;
    if (input.red.size() != want || input.blue.size() != want)
        throw std::invalid_argument("extract_natural_grid: |R| = |B| = capacity * t^2 required");

    ExtractResult res;
    ExtractReport& rep = res.report;
    rep.add("capacity", std::to_string(cfg.capacity));
    rep.add("t", std::to_string(t));
    rep.add("input_red", std::to_string(input.red.size()));
    rep.add("input_blue", std::to_string(input.blue.size()));

    {
        std::vector<Line> host_lines = input.red;
        host_lines.insert(host_lines.end(), input.blue.begin(), input.blue.end());
        res.host = Arrangement(cross_points(input.red, input.blue), std::move(host_lines));
    }

    // Translate so the y-axis lies strictly left of every pairwise
    // intersection (the lemma's standing assumption, recorded here).
    std::vector<Line> all = input.red;
    all.insert(all.end(), input.blue.begin(), input.blue.end());
    std::optional<Rational> minx;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            auto p = intersect(all[i], all[j]);
            if (p && (!minx || p->x < *minx)) minx = p->x;
        }
    Int x0 = minx ? rfloor(*minx) - 1 : Int(-1);
    rep.add("axis_x0", to_string(x0));
    auto translate = [&x0](const Line& l) {
        return Line::from_coeffs(l.a, l.b, l.c - l.a * x0);
    };

    // Translated lines and the map back to the original inputs.
    std::unordered_map<Line, std::pair<bool, std::size_t>> origin;
    std::vector<Line> tr, tb;
    for (std::size_t i = 0; i < input.red.size(); ++i) {
        tr.push_back(translate(input.red[i]));
        origin[tr.back()] = {true, i};
    }
    for (std::size_t i = 0; i < input.blue.size(); ++i) {
        tb.push_back(translate(input.blue[i]));
        origin[tb.back()] = {false, i};
    }

    SweepSplit sw = split_by_sweep(RedBlueInput{tr, tb});
    rep.add("y1", to_string(sw.y1));
    rep.add("red_below", sw.red_below ? "true" : "false");
    std::vector<Line> low = sw.red_below ? sw.red_kept : sw.blue_kept;
    std::vector<Line> high = sw.red_below ? sw.blue_kept : sw.red_kept;
    rep.add("kept_low", std::to_string(low.size()));
    rep.add("kept_high", std::to_string(high.size()));

    // All low-high intersections lie right of the axis, so every low slope
    // exceeds every high slope and a single shear separates the signs.
    Rational min_low = low[0].slope(), max_high = high[0].slope();
    for (const Line& l : low) min_low = std::min(min_low, l.slope());
    for (const Line& l : high) max_high = std::max(max_high, l.slope());
    if (!(min_low > max_high))
        throw std::logic_error("extract_natural_grid: slope separation violated");
    Rational lambda = -(min_low + max_high) / 2;
    rep.add("shear_lambda", to_string(lambda));
    auto shear = [&lambda](const Line& l) {
        const Int& ln = num(lambda);
        const Int& ld = den(lambda);
        return Line::from_coeffs(l.a * ld - l.b * ln, l.b * ld, l.c * ld);
    };
    {
        std::unordered_map<Line, std::pair<bool, std::size_t>> next;
        std::vector<Line> s;
        for (const Line& l : low) {
            s.push_back(shear(l));
            next[s.back()] = origin.at(l);
        }
        low.swap(s);
        s.clear();
        for (const Line& l : high) {
            s.push_back(shear(l));
            next[s.back()] = origin.at(l);
        }
        high.swap(s);
        origin.swap(next);
    }

    // Halve the high family by intercept order; odd count leaves the extra
    // line in B1.
    high = sorted_by_intercept(high);
    const std::size_t half = (high.size() + 1) / 2;
    std::vector<Line> b1(high.begin(), high.begin() + half);
    std::vector<Line> b2(high.begin() + half, high.end());
    if (b2.empty()) {
        rep.add("fail", "not enough high lines to halve");
        return res;
    }
    rep.add("b1", std::to_string(b1.size()));
    rep.add("b2", std::to_string(b2.size()));

    SameTypeResult st = same_type_triple(low, b1, b2);
    rep.add("same_type_polarity", st.polarity == Polarity::ALL_ABOVE ? "ABOVE" : "BELOW");
    rep.add("same_type_fraction", to_string(st.achieved_fraction));
    rep.add("same_type_sizes", std::to_string(st.r.size()) + "," + std::to_string(st.b1.size()) +
                                   "," + std::to_string(st.b2.size()));

    Line l1;
    try {
        l1 = separator_line(cross_points(st.r, st.b1), cross_points(st.r, st.b2),
                            SlopeSign::NEGATIVE);
    } catch (const NotSeparableError&) {
        rep.add("fail", "l1 separator does not exist");
        return res;
    }
    rep.add("l1", to_string(l1.a) + " " + to_string(l1.b) + " " + to_string(l1.c));

    OneSidedResult os1;
    try {
        os1 = one_sided_subset(st.r, l1);
    } catch (const std::invalid_argument& e) {
        rep.add("fail", std::string("dilworth on R': ") + e.what());
        return res;
    }
    std::vector<Line> b_live = (os1.side == RefSide::LEFT_OF_REF) ? st.b1 : st.b2;
    rep.add("r_one_sided", std::to_string(os1.subset.size()));
    rep.add("r_side", os1.side == RefSide::LEFT_OF_REF ? "below_l1" : "above_l1");

    // Order the surviving reds by crossing position along the least live
    // blue line.
    Line b0 = *std::min_element(b_live.begin(), b_live.end());
    std::vector<Line> ordered = os1.subset;
    std::sort(ordered.begin(), ordered.end(), [&b0](const Line& p, const Line& q) {
        auto a = intersect(p, b0);
        auto b = intersect(q, b0);
        if (!a || !b) return q < p;  // parallels cannot occur: opposite slope signs
        if (a->x != b->x) return a->x < b->x;
        return p < q;
    });
    const std::size_t mhalf = ordered.size() / 2;
    if (mhalf == 0) {
        rep.add("fail", "too few reds survive the one-sided step");
        return res;
    }
    std::vector<Line> red_first(ordered.begin(), ordered.begin() + mhalf);
    std::vector<Line> red_second(ordered.begin() + mhalf, ordered.end());

    Line l2;
    try {
        l2 = separator_line(cross_points(b_live, red_first), cross_points(b_live, red_second),
                            SlopeSign::POSITIVE);
    } catch (const NotSeparableError&) {
        rep.add("fail", "l2 separator does not exist");
        return res;
    }
    rep.add("l2", to_string(l2.a) + " " + to_string(l2.b) + " " + to_string(l2.c));

    OneSidedResult os2;
    try {
        os2 = one_sided_subset(b_live, l2);
    } catch (const std::invalid_argument& e) {
        rep.add("fail", std::string("dilworth on live blues: ") + e.what());
        return res;
    }
    std::vector<Line>& red_keep =
        (os2.side == RefSide::LEFT_OF_REF) ? red_first : red_second;
    rep.add("b_one_sided", std::to_string(os2.subset.size()));
    rep.add("b_side", os2.side == RefSide::LEFT_OF_REF ? "below_l2" : "above_l2");
    rep.add("red_keep", std::to_string(red_keep.size()));

    if (os2.subset.size() < t || red_keep.size() < t) {
        rep.add("fail", "final families too small");
        return res;
    }

    std::vector<Line> fam_low, fam_high;
    for (std::size_t i = 0; i < t; ++i) {
        const auto& ro = origin.at(red_keep[i]);
        fam_low.push_back(ro.first ? input.red[ro.second] : input.blue[ro.second]);
        const auto& bo = origin.at(os2.subset[i]);
        fam_high.push_back(bo.first ? input.red[bo.second] : input.blue[bo.second]);
    }
    GridWitness w = assemble_witness(std::move(fam_low), std::move(fam_high));
    auto nat = is_natural(res.host, w);
    if (!nat) {
        rep.add("fail", "hull condition failed on assembled witness");
        return res;
    }
    auto check = verify_witness(res.host, *nat);
    if (!check.ok)
        throw std::logic_error("extract_natural_grid: emitted witness failed verification: " +
                               check.diagnostic);
    res.witness = std::move(nat);
    rep.add("result", "witness");
    return res;
}

namespace {

// Rotational order of lines through a common point: nonnegative slopes
// ascending, vertical, then negative slopes ascending.
std::pair<int, Rational> rotation_key(const Line& l) {
    if (l.is_vertical()) return {1, Rational(0)};
    Rational s = l.slope();
    return {s >= 0 ? 0 : 2, s};
}

}  // namespace

MatchingGraph matching_graph(const std::vector<Point>& pts, const std::vector<Line>& cluster) {
    {
        std::unordered_set<Point> uniq(pts.begin(), pts.end());
        if (uniq.size() != pts.size())
            throw std::invalid_argument("matching_graph: duplicate point");
        std::unordered_set<Line> uniql(cluster.begin(), cluster.end());
        if (uniql.size() != cluster.size())
            throw std::invalid_argument("matching_graph: duplicate cluster line");
    }
    MatchingGraph h;
    h.lines = cluster;
    std::unordered_set<std::uint64_t> seen_pairs;
    for (const Point& q : pts) {
        std::vector<std::uint32_t> inc;
        for (std::size_t i = 0; i < cluster.size(); ++i)
            if (cluster[i].contains(q)) inc.push_back(static_cast<std::uint32_t>(i));
        if (inc.size() < 2) continue;
        std::sort(inc.begin(), inc.end(), [&](std::uint32_t a, std::uint32_t b) {
            return rotation_key(cluster[a]) < rotation_key(cluster[b]);
        });
        std::vector<std::uint32_t> ej;
        for (std::size_t s = 0; s + 1 < inc.size(); s += 2) {
            std::uint32_t u = inc[s], v = inc[s + 1];
            std::uint64_t key = (std::uint64_t(std::min(u, v)) << 32) | std::max(u, v);
            if (!seen_pairs.insert(key).second)
                throw std::logic_error("matching_graph: E_j sets are not disjoint");
            ej.push_back(static_cast<std::uint32_t>(h.edges.size()));
            h.edges.push_back({u, v, q});
        }
        h.per_point.emplace_back(q, std::move(ej));
    }
    return h;
}

KttResult find_ktt(const MatchingGraph& h, std::size_t t, std::uint64_t budget) {
    if (t < 1) throw std::invalid_argument("find_ktt: t must be >= 1");
    const std::size_t n = h.lines.size();
    std::vector<std::vector<std::uint32_t>> adj(n);
    std::unordered_map<std::uint64_t, Point> witness;
    for (const auto& e : h.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
        std::uint64_t key = (std::uint64_t(std::min(e.u, e.v)) << 32) | std::max(e.u, e.v);
        witness.emplace(key, e.witness);
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());

    KttResult res;
    std::vector<std::uint32_t> chosen, l2;
    std::uint64_t left = budget;
    bool exceeded = false, stopped = false;

    auto spend = [&]() {
        if (left == 0) {
            exceeded = true;
            return false;
        }
        --left;
        return true;
    };

    auto accept = [&]() {
        std::unordered_set<Point> pts;
        for (std::uint32_t a : chosen)
            for (std::uint32_t b : l2) {
                std::uint64_t key = (std::uint64_t(std::min(a, b)) << 32) | std::max(a, b);
                if (!pts.insert(witness.at(key)).second) return false;
            }
        for (std::uint32_t a : chosen) res.left.push_back(h.lines[a]);
        for (std::uint32_t b : l2) res.right.push_back(h.lines[b]);
        return true;
    };

    auto pick_l2 = [&](auto&& self, const std::vector<std::uint32_t>& common,
                       std::size_t from) -> void {
        if (stopped || exceeded) return;
        if (l2.size() == t) {
            if (!spend()) return;
            if (accept()) stopped = true;
            return;
        }
        for (std::size_t q = from; q < common.size(); ++q) {
            if (common.size() - q < t - l2.size()) break;
            l2.push_back(common[q]);
            self(self, common, q + 1);
            l2.pop_back();
            if (stopped || exceeded) return;
        }
    };
    auto pick_l1 = [&](auto&& self, std::vector<std::uint32_t> common, std::size_t from) -> void {
        if (stopped || exceeded) return;
        if (chosen.size() == t) {
            pick_l2(pick_l2, common, 0);
            return;
        }
        for (std::size_t v = from; v < n; ++v) {
            if (!spend()) return;
            std::vector<std::uint32_t> next;
            if (chosen.empty())
                next = adj[v];
            else
                std::set_intersection(common.begin(), common.end(), adj[v].begin(), adj[v].end(),
                                      std::back_inserter(next));
            std::vector<std::uint32_t> filtered;
            for (std::uint32_t u : next)
                if (u != v && std::find(chosen.begin(), chosen.end(), u) == chosen.end())
                    filtered.push_back(u);
            if (filtered.size() >= t) {
                chosen.push_back(static_cast<std::uint32_t>(v));
                self(self, std::move(filtered), v + 1);
                chosen.pop_back();
            }
            if (stopped || exceeded) return;
        }
    };
    pick_l1(pick_l1, {}, 0);
    res.status = stopped ? SearchStatus::FOUND
                         : (exceeded ? SearchStatus::BUDGET_EXCEEDED : SearchStatus::ABSENT);
    return res;
}

std::vector<std::vector<Line>> slope_bucket_partition(const std::vector<Line>& l, std::size_t r) {
    if (r <= 1 || r >= l.size())
        throw std::invalid_argument("slope_bucket_partition: need 1 < r < |L|");
    std::vector<Line> sorted = l;
    std::sort(sorted.begin(), sorted.end(), [](const Line& a, const Line& b) {
        auto ka = rotation_key(a);
        auto kb = rotation_key(b);
        if (ka != kb) return ka < kb;
        return a < b;
    });
    std::vector<std::vector<Line>> parts(r);
    const std::size_t base = sorted.size() / r;
    const std::size_t extra = sorted.size() % r;
    std::size_t at = 0;
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t take = base + (i < extra ? 1 : 0);
        parts[i].assign(sorted.begin() + at, sorted.begin() + at + take);
        at += take;
    }
    return parts;
}

namespace {

std::vector<std::pair<std::size_t, std::vector<std::string>>> read_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
    std::string raw;
    for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        std::istringstream is(raw);
        std::vector<std::string> toks;
        std::string t;
        while (is >> t) toks.push_back(t);
        if (!toks.empty()) rows.emplace_back(line_no, std::move(toks));
    }
    return rows;
}

}  // namespace

RedBlueInput read_red_blue(const std::string& path) {
    auto rows = read_rows(path);
    std::size_t at = 0;
    auto next = [&](const char* what) -> const std::pair<std::size_t, std::vector<std::string>>& {
        if (at >= rows.size())
            throw std::runtime_error(path + ": unexpected end of file, wanted " + what);
        return rows[at++];
    };
    auto read_section = [&](const char* name) {
        const auto& head = next("section header");
        if (head.second.size() != 2 || head.second[0] != name)
            throw ParseError(head.first, std::string("expected '") + name + " <count>'");
        std::size_t count = std::stoul(head.second[1]);
        std::vector<Line> lines;
        for (std::size_t i = 0; i < count; ++i) {
            const auto& row = next("a line triple");
            if (row.second.size() != 3) throw ParseError(row.first, "expected 'a b c'");
            try {
                Rational a = parse_rational(row.second[0]);
                Rational b = parse_rational(row.second[1]);
                Rational c = parse_rational(row.second[2]);
                if (!is_integer(a) || !is_integer(b) || !is_integer(c))
                    throw std::invalid_argument("line coefficients must be integers");
                lines.push_back(Line::from_coeffs(num(a), num(b), num(c)));
            } catch (const std::exception& e) {
                throw ParseError(row.first, e.what());
            }
        }
        return lines;
    };
    RedBlueInput input;
    input.red = read_section("red");
    input.blue = read_section("blue");
    if (at != rows.size()) throw ParseError(rows[at].first, "trailing content");
    return input;
}

void write_red_blue(const RedBlueInput& input, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "red " << input.red.size() << "\n";
    for (const Line& l : input.red)
        out << to_string(l.a) << " " << to_string(l.b) << " " << to_string(l.c) << "\n";
    out << "blue " << input.blue.size() << "\n";
    for (const Line& l : input.blue)
        out << to_string(l.a) << " " << to_string(l.b) << " " << to_string(l.c) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace gridarr
