#pragma once

#include "gridarr/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace gridarr {

// Parse failure with the 1-based line number and offending token.
struct ParseError : std::runtime_error {
    ParseError(std::size_t line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
          line_no(line_no) {}
    std::size_t line_no;
};

// The pair (P, L). Duplicate points or duplicate canonical lines are
// rejected at construction; the paper's counts are sensitive to multiplicity
// and silent dedup would mask generator bugs.
class Arrangement {
  public:
    Arrangement() = default;
    Arrangement(std::vector<Point> points, std::vector<Line> lines);

    const std::vector<Point>& points() const { return points_; }
    const std::vector<Line>& lines() const { return lines_; }

    std::optional<std::size_t> point_index(const Point& p) const;
    std::optional<std::size_t> line_index(const Line& l) const;

  private:
    std::vector<Point> points_;
    std::vector<Line> lines_;
    std::unordered_map<Point, std::size_t> point_idx_;
    std::unordered_map<Line, std::size_t> line_idx_;
};

// Bipartite adjacency between point indices and line indices.
struct IncidenceGraph {
    std::vector<std::vector<std::uint32_t>> lines_of_point;
    std::vector<std::vector<std::uint32_t>> points_of_line;
    std::uint64_t edge_count = 0;
};

IncidenceGraph build_incidence_graph(const Arrangement& arr);

enum class CountStrategy { NAIVE, GROUPED };

// NAIVE scans all |P|*|L| pairs; GROUPED evaluates each direction class's
// functional over the point set once and looks lines up by their constant.
// Both are exact and must agree.
std::uint64_t count_incidences(const Arrangement& arr, CountStrategy strategy);

struct IntersectionSet {
    std::vector<Point> points;  // deduplicated, in first-seen order
    bool all_distinct = false;  // true iff count == |L1|*|L2|
};

// Pairwise cross-intersections of two disjoint nonempty line sets.
IntersectionSet intersection_points(const std::vector<Line>& l1, const std::vector<Line>& l2);

Arrangement read_arrangement(const std::string& path);
void write_arrangement(const Arrangement& arr, const std::string& path);

}  // namespace gridarr
