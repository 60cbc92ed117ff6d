#include "gridarr/grid_detect.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace gridarr {

namespace {

// Canonical presentation: families sorted, the family with the smaller
// leading line first, p0 row-major. Keeps witnesses deterministic no matter
// which scan order produced them.
GridWitness make_witness(std::vector<Line> f1, std::vector<Line> f2) {
    std::sort(f1.begin(), f1.end());
    std::sort(f2.begin(), f2.end());
    if (f2[0] < f1[0]) std::swap(f1, f2);
    GridWitness w;
    w.l1 = std::move(f1);
    w.l2 = std::move(f2);
    w.p0.reserve(w.l1.size() * w.l2.size());
    for (const Line& a : w.l1)
        for (const Line& b : w.l2) {
            auto p = intersect(a, b);
            if (!p) throw std::logic_error("make_witness: parallel cross pair");
            w.p0.push_back(*p);
        }
    return w;
}

struct Budget {
    std::uint64_t left;
    bool spend(std::uint64_t n = 1) {
        if (left < n) {
            left = 0;
            return false;
        }
        left -= n;
        return true;
    }
};

// Complete t=2 scan: walks incidence paths i -> w -> m -> w2 -> j; a 2x2
// grid {i,j} x {m,m'} exists iff some (i,j) collects two entries with
// distinct points on both sides.
template <typename Visitor>
SearchStatus scan_t2(const Arrangement& arr, Budget& budget, Visitor&& vis) {
    IncidenceGraph g = build_incidence_graph(arr);
    const std::size_t nl = arr.lines().size();

    struct Entry {
        std::uint32_t m, w, w2;
    };
    std::vector<std::vector<Entry>> slot(nl);
    std::vector<std::uint32_t> touched;

    for (std::uint32_t i = 0; i < nl; ++i) {
        for (std::uint32_t t : touched) slot[t].clear();
        touched.clear();
        for (std::uint32_t w : g.points_of_line[i]) {
            for (std::uint32_t m : g.lines_of_point[w]) {
                if (m == i) continue;
                for (std::uint32_t w2 : g.points_of_line[m]) {
                    if (w2 == w) continue;
                    for (std::uint32_t j : g.lines_of_point[w2]) {
                        if (j == m || j == i) continue;
                        if (!budget.spend()) return SearchStatus::BUDGET_EXCEEDED;
                        auto& group = slot[j];
                        if (group.empty()) touched.push_back(j);
                        for (const Entry& e : group) {
                            if (!budget.spend()) return SearchStatus::BUDGET_EXCEEDED;
                            if (e.w == w || e.w2 == w2) continue;
                            GridWitness cand =
                                make_witness({arr.lines()[i], arr.lines()[j]},
                                             {arr.lines()[e.m], arr.lines()[m]});
                            if (vis(cand)) return SearchStatus::FOUND;
                        }
                        group.push_back(Entry{m, w, w2});
                    }
                }
            }
        }
    }
    return SearchStatus::ABSENT;
}

// K_{t,t} candidates in the line-adjacency graph (two lines adjacent iff
// their intersection is a point of P), pruned by common neighborhoods.
template <typename Visitor>
SearchStatus scan_general(const Arrangement& arr, std::size_t t, Budget& budget, Visitor&& vis) {
    IncidenceGraph g = build_incidence_graph(arr);
    const std::size_t nl = arr.lines().size();
    std::vector<std::vector<std::uint32_t>> adj(nl);
    for (std::size_t p = 0; p < g.lines_of_point.size(); ++p) {
        const auto& s = g.lines_of_point[p];
        for (std::size_t x = 0; x < s.size(); ++x)
            for (std::size_t y = x + 1; y < s.size(); ++y) {
                if (!budget.spend()) return SearchStatus::BUDGET_EXCEEDED;
                adj[s[x]].push_back(s[y]);
                adj[s[y]].push_back(s[x]);
            }
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());

    std::vector<std::uint32_t> chosen;
    std::vector<std::uint32_t> l2;
    bool exceeded = false;
    bool stopped = false;

    auto check_pair = [&](const std::vector<std::uint32_t>& left,
                          const std::vector<std::uint32_t>& right) -> bool {
        std::unordered_set<Point> pts;
        std::vector<Line> f1, f2;
        for (std::uint32_t a : left)
            for (std::uint32_t b : right) {
                auto p = intersect(arr.lines()[a], arr.lines()[b]);
                if (!p) return false;
                if (!pts.insert(*p).second) return false;  // coincident intersections
            }
        for (std::uint32_t a : left) f1.push_back(arr.lines()[a]);
        for (std::uint32_t b : right) f2.push_back(arr.lines()[b]);
        return vis(make_witness(std::move(f1), std::move(f2)));
    };

    // Enumerate the L2 side as ascending subsets of the common neighborhood.
    auto pick_l2 = [&](auto&& self, const std::vector<std::uint32_t>& common,
                       std::size_t from) -> void {
        if (stopped || exceeded) return;
        if (l2.size() == t) {
            if (!budget.spend()) {
                exceeded = true;
                return;
            }
            if (check_pair(chosen, l2)) stopped = true;
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

    auto pick_l1 = [&](auto&& self, std::vector<std::uint32_t> common,
                       std::size_t from) -> void {
        if (stopped || exceeded) return;
        if (chosen.size() == t) {
            pick_l2(pick_l2, common, 0);
            return;
        }
        for (std::size_t v = from; v < nl; ++v) {
            if (!budget.spend()) {
                exceeded = true;
                return;
            }
            std::vector<std::uint32_t> next;
            if (chosen.empty()) {
                next = adj[v];
            } else {
                std::set_intersection(common.begin(), common.end(), adj[v].begin(), adj[v].end(),
                                      std::back_inserter(next));
            }
            // Members of L1 may appear in each other's neighborhoods but
            // cannot serve on the L2 side.
            next.erase(std::remove(next.begin(), next.end(), static_cast<std::uint32_t>(v)),
                       next.end());
            if (next.size() >= t) {
                chosen.push_back(static_cast<std::uint32_t>(v));
                std::vector<std::uint32_t> filtered;
                for (std::uint32_t u : next)
                    if (std::find(chosen.begin(), chosen.end(), u) == chosen.end())
                        filtered.push_back(u);
                if (filtered.size() >= t) self(self, std::move(filtered), v + 1);
                chosen.pop_back();
            }
            if (stopped || exceeded) return;
        }
    };
    pick_l1(pick_l1, {}, 0);
    if (stopped) return SearchStatus::FOUND;
    return exceeded ? SearchStatus::BUDGET_EXCEEDED : SearchStatus::ABSENT;
}

template <typename Visitor>
SearchStatus scan_grids(const Arrangement& arr, std::size_t t, std::uint64_t budget_limit,
                        Visitor&& vis) {
    if (t < 2) throw std::invalid_argument("grid search: t must be >= 2");
    Budget budget{budget_limit};
    if (t == 2) return scan_t2(arr, budget, vis);
    return scan_general(arr, t, budget, vis);
}

}  // namespace

GridSearchResult find_txt_grid(const Arrangement& arr, std::size_t t, std::uint64_t budget) {
    GridSearchResult res;
    res.status = scan_grids(arr, t, budget, [&](const GridWitness& w) {
        res.witness = w;
        return true;
    });
    return res;
}

std::optional<NaturalGridWitness> is_natural(const Arrangement& arr, const GridWitness& w) {
    auto v = verify_witness(arr, w);
    if (!v.ok) throw std::invalid_argument("is_natural: invalid witness: " + v.diagnostic);
    std::vector<Point> hull = convex_hull(w.p0);
    for (const auto* fam : {&w.l1, &w.l2}) {
        for (std::size_t i = 0; i < fam->size(); ++i)
            for (std::size_t j = i + 1; j < fam->size(); ++j) {
                auto p = intersect((*fam)[i], (*fam)[j]);
                if (!p) continue;  // parallel members trivially satisfy the condition
                if (in_convex_hull(*p, hull) != HullLocation::OUTSIDE) return std::nullopt;
            }
    }
    NaturalGridWitness out;
    out.grid = w;
    out.hull = std::move(hull);
    return out;
}

NaturalSearchResult find_natural_grid(const Arrangement& arr, std::size_t t,
                                      std::uint64_t budget) {
    NaturalSearchResult res;
    res.status = scan_grids(arr, t, budget, [&](const GridWitness& w) {
        auto nat = is_natural(arr, w);
        if (!nat) return false;
        res.witness = std::move(nat);
        return true;
    });
    return res;
}

namespace {

VerifyResult fail(const char* diag) { return VerifyResult{false, diag}; }

}  // namespace

VerifyResult verify_witness(const Arrangement& arr, const GridWitness& w) {
    const std::size_t t = w.l1.size();
    if (t < 2) return fail("t < 2");
    if (w.l2.size() != t) return fail("|L1| != |L2|");
    std::unordered_set<Line> fam1(w.l1.begin(), w.l1.end());
    if (fam1.size() != t) return fail("duplicate line in L1");
    std::unordered_set<Line> fam2(w.l2.begin(), w.l2.end());
    if (fam2.size() != t) return fail("duplicate line in L2");
    for (const Line& l : w.l2)
        if (fam1.count(l)) return fail("L1 and L2 not disjoint");
    for (const Line& l : w.l1)
        if (!arr.line_index(l)) return fail("L1 not subset of L");
    for (const Line& l : w.l2)
        if (!arr.line_index(l)) return fail("L2 not subset of L");

    std::unordered_set<Point> computed;
    for (const Line& a : w.l1)
        for (const Line& b : w.l2) {
            auto p = intersect(a, b);
            if (!p) return fail("parallel cross pair");
            computed.insert(*p);
        }
    if (computed.size() != t * t) return fail("|P0| < t^2");
    for (const Point& p : computed)
        if (!arr.point_index(p)) return fail("P0 not subset of P");

    if (w.p0.size() != t * t) return fail("stored P0 has wrong size");
    std::unordered_set<Point> stored(w.p0.begin(), w.p0.end());
    if (stored.size() != t * t) return fail("stored P0 has duplicates");
    for (const Point& p : stored)
        if (!computed.count(p)) return fail("stored P0 mismatch");
    return VerifyResult{true, ""};
}

VerifyResult verify_witness(const Arrangement& arr, const NaturalGridWitness& w) {
    auto base = verify_witness(arr, w.grid);
    if (!base.ok) return base;
    std::vector<Point> hull = convex_hull(w.grid.p0);
    if (hull != w.hull) return fail("hull mismatch");
    for (const auto* fam : {&w.grid.l1, &w.grid.l2})
        for (std::size_t i = 0; i < fam->size(); ++i)
            for (std::size_t j = i + 1; j < fam->size(); ++j) {
                auto p = intersect((*fam)[i], (*fam)[j]);
                if (!p) continue;
                if (in_convex_hull(*p, hull) != HullLocation::OUTSIDE)
                    return fail("within-family intersection inside conv(P0)");
            }
    return VerifyResult{true, ""};
}

GridWitness read_witness(const std::string& path) {
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
    std::size_t at = 0;
    auto next = [&](const char* what) -> const std::pair<std::size_t, std::vector<std::string>>& {
        if (at >= rows.size())
            throw std::runtime_error(path + ": unexpected end of file, wanted " + what);
        return rows[at++];
    };
    const auto& head = next("t");
    if (head.second.size() != 1) throw ParseError(head.first, "expected 't' alone");
    std::size_t t = std::stoul(head.second[0]);
    if (t < 2) throw ParseError(head.first, "t must be >= 2");

    auto read_line = [&]() -> Line {
        const auto& row = next("a line triple");
        if (row.second.size() != 3) throw ParseError(row.first, "expected 'a b c'");
        try {
            Rational a = parse_rational(row.second[0]);
            Rational b = parse_rational(row.second[1]);
            Rational c = parse_rational(row.second[2]);
            if (!is_integer(a) || !is_integer(b) || !is_integer(c))
                throw std::invalid_argument("line coefficients must be integers");
            return Line::from_coeffs(num(a), num(b), num(c));
        } catch (const std::exception& e) {
            throw ParseError(row.first, e.what());
        }
    };
    GridWitness w;
    for (std::size_t i = 0; i < t; ++i) w.l1.push_back(read_line());
    for (std::size_t i = 0; i < t; ++i) w.l2.push_back(read_line());
    for (std::size_t i = 0; i < t * t; ++i) {
        const auto& row = next("a point");
        if (row.second.size() != 2) throw ParseError(row.first, "expected 'x y'");
        try {
            w.p0.push_back(Point{parse_rational(row.second[0]), parse_rational(row.second[1])});
        } catch (const std::exception& e) {
            throw ParseError(row.first, e.what());
        }
    }
    if (at != rows.size()) throw ParseError(rows[at].first, "trailing content");
    return w;
}

void write_witness(const GridWitness& w, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << w.t() << "\n";
    for (const auto* fam : {&w.l1, &w.l2})
        for (const Line& l : *fam)
            out << to_string(l.a) << " " << to_string(l.b) << " " << to_string(l.c) << "\n";
    for (const Point& p : w.p0) out << to_string(p.x) << " " << to_string(p.y) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace gridarr
