#include "gridarr/arrangement.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gridarr {

Arrangement::Arrangement(std::vector<Point> points, std::vector<Line> lines)
    : points_(std::move(points)), lines_(std::move(lines)) {
    point_idx_.reserve(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        auto [it, fresh] = point_idx_.emplace(points_[i], i);
        (void)it;
        if (!fresh)
            throw std::invalid_argument("arrangement: duplicate point (" +
                                        to_string(points_[i].x) + ", " +
                                        to_string(points_[i].y) + ")");
    }
    line_idx_.reserve(lines_.size());
    for (std::size_t i = 0; i < lines_.size(); ++i) {
        auto [it, fresh] = line_idx_.emplace(lines_[i], i);
        (void)it;
        if (!fresh)
            throw std::invalid_argument("arrangement: duplicate line " + to_string(lines_[i].a) +
                                        " " + to_string(lines_[i].b) + " " +
                                        to_string(lines_[i].c));
    }
}

std::optional<std::size_t> Arrangement::point_index(const Point& p) const {
    auto it = point_idx_.find(p);
    if (it == point_idx_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Arrangement::line_index(const Line& l) const {
    auto it = line_idx_.find(l);
    if (it == line_idx_.end()) return std::nullopt;
    return it->second;
}

namespace {

// Direction class of a line: (a, b)/gcd(|a|,|b|). Canonical lines already
// have the sign normalized, so only the magnitude needs dividing out.
struct Direction {
    Int a, b;
    bool operator==(const Direction& o) const { return a == o.a && b == o.b; }
};

struct DirectionHash {
    std::size_t operator()(const Direction& d) const {
        std::hash<Int> h;
        return hash_combine(h(d.a), h(d.b));
    }
};

Direction direction_of(const Line& l, Int& scale) {
    scale = gcd(abs(l.a), abs(l.b));
    return Direction{l.a / scale, l.b / scale};
}

// int64 views for the hot exact paths; falls back to big arithmetic
// whenever a value does not fit comfortably.
constexpr std::int64_t kFastLimit = std::int64_t(1) << 31;

struct FastPoint {
    std::int64_t x = 0, y = 0;
    bool ok = false;
};

struct FastLine {
    std::int64_t a = 0, b = 0, c = 0;
    bool ok = false;
};

bool fits(const Int& v, std::int64_t& out) {
    if (v > -kFastLimit && v < kFastLimit) {
        out = static_cast<std::int64_t>(v);
        return true;
    }
    return false;
}

std::vector<FastPoint> fast_points(const std::vector<Point>& pts) {
    std::vector<FastPoint> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point& p = pts[i];
        if (is_integer(p.x) && is_integer(p.y) && fits(num(p.x), out[i].x) &&
            fits(num(p.y), out[i].y))
            out[i].ok = true;
    }
    return out;
}

std::vector<FastLine> fast_lines(const std::vector<Line>& lines) {
    std::vector<FastLine> out(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i)
        if (fits(lines[i].a, out[i].a) && fits(lines[i].b, out[i].b) && fits(lines[i].c, out[i].c))
            out[i].ok = true;
    return out;
}

}  // namespace

IncidenceGraph build_incidence_graph(const Arrangement& arr) {
    const auto& pts = arr.points();
    const auto& lines = arr.lines();
    IncidenceGraph g;
    g.lines_of_point.resize(pts.size());
    g.points_of_line.resize(lines.size());

    // Group lines by direction; evaluate each direction's functional over
    // the points once.
    std::unordered_map<Direction, std::vector<std::uint32_t>, DirectionHash> classes;
    std::vector<Int> scales(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i)
        classes[direction_of(lines[i], scales[i])].push_back(static_cast<std::uint32_t>(i));

    for (const auto& [dir, members] : classes) {
        std::unordered_map<Rational, std::vector<std::uint32_t>> buckets;
        buckets.reserve(pts.size());
        for (std::size_t j = 0; j < pts.size(); ++j) {
            Rational key = Rational(dir.a) * pts[j].x + Rational(dir.b) * pts[j].y;
            buckets[key].push_back(static_cast<std::uint32_t>(j));
        }
        for (std::uint32_t li : members) {
            Rational key(lines[li].c, scales[li]);
            auto it = buckets.find(key);
            if (it == buckets.end()) continue;
            g.points_of_line[li] = it->second;
            g.edge_count += it->second.size();
        }
    }
    for (std::uint32_t li = 0; li < g.points_of_line.size(); ++li)
        for (std::uint32_t pj : g.points_of_line[li]) g.lines_of_point[pj].push_back(li);
    return g;
}

std::uint64_t count_incidences(const Arrangement& arr, CountStrategy strategy) {
    const auto& pts = arr.points();
    const auto& lines = arr.lines();
    if (strategy == CountStrategy::GROUPED) {
        std::unordered_map<Direction, std::vector<std::uint32_t>, DirectionHash> classes;
        std::vector<Int> scales(lines.size());
        for (std::size_t i = 0; i < lines.size(); ++i)
            classes[direction_of(lines[i], scales[i])].push_back(static_cast<std::uint32_t>(i));
        std::uint64_t total = 0;
        for (const auto& [dir, members] : classes) {
            std::unordered_map<Rational, std::uint64_t> counts;
            counts.reserve(pts.size());
            for (const Point& p : pts) ++counts[Rational(dir.a) * p.x + Rational(dir.b) * p.y];
            for (std::uint32_t li : members) {
                auto it = counts.find(Rational(lines[li].c, scales[li]));
                if (it != counts.end()) total += it->second;
            }
        }
        return total;
    }

    // NAIVE: exact scan over all pairs, with an overflow-checked int64/128
    // fast path for small integer data.
    auto fp = fast_points(pts);
    auto fl = fast_lines(lines);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const Line& l = lines[i];
        const FastLine& f = fl[i];
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (f.ok && fp[j].ok) {
                __int128 v = (__int128)f.a * fp[j].x + (__int128)f.b * fp[j].y;
                if (v == f.c) ++total;
            } else if (l.contains(pts[j])) {
                ++total;
            }
        }
    }
    return total;
}

IntersectionSet intersection_points(const std::vector<Line>& l1, const std::vector<Line>& l2) {
    if (l1.empty() || l2.empty())
        throw std::invalid_argument("intersection_points: empty line set");
    std::unordered_map<Line, bool> seen_lines;
    for (const Line& l : l1) seen_lines.emplace(l, true);
    for (const Line& l : l2)
        if (seen_lines.count(l))
            throw std::invalid_argument("intersection_points: line sets not disjoint");

    IntersectionSet out;
    std::unordered_map<Point, bool> seen;
    bool parallel_pair = false;
    for (const Line& a : l1)
        for (const Line& b : l2) {
            auto p = intersect(a, b);
            if (!p) {
                parallel_pair = true;
                continue;
            }
            if (seen.emplace(*p, true).second) out.points.push_back(*p);
        }
    out.all_distinct = !parallel_pair && out.points.size() == l1.size() * l2.size();
    return out;
}

namespace {

// Strips a trailing '#' comment and splits on whitespace.
std::vector<std::string> tokenize(const std::string& raw) {
    std::string s = raw;
    auto hash = s.find('#');
    if (hash != std::string::npos) s.resize(hash);
    std::istringstream in(s);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

Int parse_int_token(const std::string& tok, std::size_t line_no) {
    Rational r = [&] {
        try {
            return parse_rational(tok);
        } catch (const std::exception& e) {
            throw ParseError(line_no, e.what());
        }
    }();
    if (!is_integer(r)) throw ParseError(line_no, "expected integer, got '" + tok + "'");
    return num(r);
}

}  // namespace

namespace {

struct Row {
    std::size_t line_no;
    std::vector<std::string> toks;
};

std::size_t parse_count(const Row& row, const char* header) {
    if (row.toks.size() != 2 || row.toks[0] != header)
        throw ParseError(row.line_no, std::string("expected '") + header + " <count>'");
    for (char ch : row.toks[1])
        if (ch < '0' || ch > '9') throw ParseError(row.line_no, "bad count '" + row.toks[1] + "'");
    return static_cast<std::size_t>(std::strtoull(row.toks[1].c_str(), nullptr, 10));
}

}  // namespace

Arrangement read_arrangement(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<Row> rows;
    std::string raw;
    for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
        auto toks = tokenize(raw);
        if (!toks.empty()) rows.push_back({line_no, std::move(toks)});
    }
    std::size_t at = 0;
    auto next = [&](const char* what) -> const Row& {
        if (at >= rows.size())
            throw std::runtime_error(path + ": unexpected end of file, wanted " + what);
        return rows[at++];
    };

    std::size_t m = parse_count(next("'points <m>'"), "points");
    std::vector<Point> pts;
    pts.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Row& row = next("a point");
        if (row.toks.size() != 2) throw ParseError(row.line_no, "expected 'x y'");
        Point p;
        try {
            p.x = parse_rational(row.toks[0]);
            p.y = parse_rational(row.toks[1]);
        } catch (const std::exception& e) {
            throw ParseError(row.line_no, e.what());
        }
        pts.push_back(std::move(p));
    }

    std::size_t n = parse_count(next("'lines <n>'"), "lines");
    std::vector<Line> lines;
    lines.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Row& row = next("a line");
        if (row.toks.size() != 3) throw ParseError(row.line_no, "expected 'a b c'");
        Int a = parse_int_token(row.toks[0], row.line_no);
        Int b = parse_int_token(row.toks[1], row.line_no);
        Int c = parse_int_token(row.toks[2], row.line_no);
        try {
            lines.push_back(Line::from_coeffs(a, b, c));
        } catch (const std::exception& e) {
            throw ParseError(row.line_no, e.what());
        }
    }
    if (at != rows.size()) throw ParseError(rows[at].line_no, "trailing content");
    try {
        return Arrangement(std::move(pts), std::move(lines));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_arrangement(const Arrangement& arr, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "points " << arr.points().size() << "\n";
    for (const Point& p : arr.points()) out << to_string(p.x) << " " << to_string(p.y) << "\n";
    out << "lines " << arr.lines().size() << "\n";
    for (const Line& l : arr.lines())
        out << to_string(l.a) << " " << to_string(l.b) << " " << to_string(l.c) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace gridarr
