#include "gridarr/arrangement.hpp"

#include "support.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace gridarr;
using testsupport::Rng;

namespace {

Point pt(std::int64_t x, std::int64_t y) { return Point{Rational(x), Rational(y)}; }

Arrangement unit_square() {
    return Arrangement({pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1)},
                       {Line::from_coeffs(0, 1, 0), Line::from_coeffs(0, 1, 1),
                        Line::from_coeffs(1, 0, 0), Line::from_coeffs(1, 0, 1)});
}

std::string tmp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

// Maps a line under an affine map by transporting two of its points.
Line map_line(const Line& l, const std::array<Rational, 6>& m) {
    auto apply = [&](const Point& p) {
        return Point{m[0] * p.x + m[1] * p.y + m[2], m[3] * p.x + m[4] * p.y + m[5]};
    };
    Point p, q;
    if (l.b != 0) {
        p = Point{Rational(0), l.y_at(Rational(0))};
        q = Point{Rational(1), l.y_at(Rational(1))};
    } else {
        p = Point{Rational(l.c, l.a), Rational(0)};
        q = Point{Rational(l.c, l.a), Rational(1)};
    }
    return Line::through(apply(p), apply(q));
}

}  // namespace

TEST_CASE("duplicates rejected at construction") {
    CHECK_THROWS_AS(Arrangement({pt(0, 0), pt(0, 0)}, {}), std::invalid_argument);
    // 2x+2y=2 and x+y=1 are the same canonical line
    CHECK_THROWS_AS(Arrangement({}, {Line::from_coeffs(1, 1, 1), Line::from_coeffs(2, 2, 2)}),
                    std::invalid_argument);
}

TEST_CASE("incidence graph examples") {
    Arrangement a({pt(0, 0)}, {Line::from_coeffs(0, 1, 0), Line::from_coeffs(1, -1, 0)});
    auto g = build_incidence_graph(a);
    CHECK(g.edge_count == 2);
    CHECK(g.lines_of_point[0].size() == 2);

    Arrangement b({pt(0, 0), pt(1, 1)}, {});
    CHECK(build_incidence_graph(b).edge_count == 0);

    std::vector<Point> pts;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) pts.push_back(pt(x, y));
    Arrangement c(pts, {Line::from_coeffs(0, 1, 0), Line::from_coeffs(0, 1, 1),
                        Line::from_coeffs(0, 1, 2)});
    auto gc = build_incidence_graph(c);
    CHECK(gc.edge_count == 9);
    for (const auto& row : gc.points_of_line) CHECK(row.size() == 3);
}

TEST_CASE("count_incidences strategies agree") {
    Arrangement empty({}, {});
    CHECK(count_incidences(empty, CountStrategy::NAIVE) == 0);
    CHECK(count_incidences(empty, CountStrategy::GROUPED) == 0);

    for (int trial = 0; trial < 25; ++trial) {
        Arrangement arr = testsupport::random_arrangement(1000 + trial, 14);
        auto naive = count_incidences(arr, CountStrategy::NAIVE);
        auto grouped = count_incidences(arr, CountStrategy::GROUPED);
        CHECK(naive == grouped);
        CHECK(naive == build_incidence_graph(arr).edge_count);
        CHECK(naive <= arr.points().size() * arr.lines().size());
    }

    // every point on every line: single point, pencil through it
    Arrangement pencil({pt(0, 0)},
                       {Line::from_coeffs(1, -1, 0), Line::from_coeffs(1, 1, 0),
                        Line::from_coeffs(1, 0, 0)});
    CHECK(count_incidences(pencil, CountStrategy::NAIVE) == 3);
}

TEST_CASE("incidence count is affine invariant") {
    Rng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        Arrangement arr = testsupport::random_arrangement(2000 + trial, 10);
        std::array<Rational, 6> m;
        do {
            for (auto& v : m) v = rng.rat(5, 3);
        } while (m[0] * m[4] - m[1] * m[3] == 0);
        std::vector<Point> pts;
        for (const Point& p : arr.points())
            pts.push_back(Point{m[0] * p.x + m[1] * p.y + m[2], m[3] * p.x + m[4] * p.y + m[5]});
        std::vector<Line> lines;
        for (const Line& l : arr.lines()) lines.push_back(map_line(l, m));
        Arrangement mapped(std::move(pts), std::move(lines));
        CHECK(count_incidences(mapped, CountStrategy::GROUPED) ==
              count_incidences(arr, CountStrategy::GROUPED));
        CHECK(count_incidences(mapped, CountStrategy::NAIVE) ==
              count_incidences(arr, CountStrategy::NAIVE));
    }
}

TEST_CASE("intersection_points") {
    std::vector<Line> h{Line::from_coeffs(0, 1, 0), Line::from_coeffs(0, 1, 1)};
    std::vector<Line> v{Line::from_coeffs(1, 0, 0), Line::from_coeffs(1, 0, 1)};
    auto r = intersection_points(h, v);
    CHECK(r.points.size() == 4);
    CHECK(r.all_distinct);

    auto par = intersection_points(h, {Line::from_coeffs(0, 1, 2)});
    CHECK(par.points.empty());
    CHECK(!par.all_distinct);

    // y=x and y=-x both meet y=0 at the origin: one distinct point of two
    auto coincide = intersection_points({Line::from_coeffs(1, -1, 0), Line::from_coeffs(1, 1, 0)},
                                        {Line::from_coeffs(0, 1, 0)});
    CHECK(coincide.points.size() == 1);
    CHECK(coincide.points[0] == pt(0, 0));
    CHECK(!coincide.all_distinct);

    CHECK_THROWS_AS(intersection_points({}, v), std::invalid_argument);
    CHECK_THROWS_AS(intersection_points(h, h), std::invalid_argument);
}

TEST_CASE("arrangement file round trip") {
    Arrangement arr = unit_square();
    auto path = tmp_path("gridarr_test_arr.txt");
    write_arrangement(arr, path);
    Arrangement back = read_arrangement(path);
    CHECK(back.points() == arr.points());
    CHECK(back.lines() == arr.lines());
    std::remove(path.c_str());
}

TEST_CASE("arrangement parse errors carry line numbers") {
    auto path = tmp_path("gridarr_test_bad.txt");
    {
        std::ofstream out(path);
        out << "points 1\n1/0 2\nlines 0\n";
    }
    try {
        read_arrangement(path);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line_no == 2);
        CHECK(std::string(e.what()).find("denominator") != std::string::npos);
    }
    {
        std::ofstream out(path);
        out << "# duplicate canonical line\npoints 0\nlines 2\n1 1 1\n2 2 2\n";
    }
    CHECK_THROWS_AS(read_arrangement(path), std::runtime_error);
    std::remove(path.c_str());
}
