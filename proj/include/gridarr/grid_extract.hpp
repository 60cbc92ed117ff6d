#pragma once

#include "gridarr/grid_detect.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gridarr {

// Red/blue line sets for the natural-grid extraction. Required invariants:
// no vertical lines, pairwise distinct y-intercepts over R u B, and all
// |R|*|B| cross-intersections exist and are distinct.
struct RedBlueInput {
    std::vector<Line> red;
    std::vector<Line> blue;
};

// Throws naming the first failed precondition.
void validate_red_blue(const RedBlueInput& input);

struct SweepSplit {
    std::vector<Line> red_kept;
    std::vector<Line> blue_kept;
    Rational y1;
    bool red_below = true;  // false when the sweep met blue first
};

// Sweeps along the y-axis until one color has half its lines crossing
// below; keeps that color's low lines and the other color's high lines.
SweepSplit split_by_sweep(const RedBlueInput& input);

enum class Polarity { ALL_ABOVE, ALL_BELOW };

struct SameTypeResult {
    std::vector<Line> r;
    std::vector<Line> b1;
    std::vector<Line> b2;
    Polarity polarity = Polarity::ALL_ABOVE;
    Rational achieved_fraction;  // min of the three kept fractions
};

// Subsets R' x B1' x B2' over which "b_i meet b_j lies strictly above r"
// holds uniformly (parallel b-pairs are exempt). Exhaustive maximization for
// part sizes <= 6, deterministic extreme-slab halving otherwise.
SameTypeResult same_type_triple(const std::vector<Line>& r, const std::vector<Line>& b1,
                                const std::vector<Line>& b2);

enum class RefSide { LEFT_OF_REF, RIGHT_OF_REF };

struct OneSidedResult {
    std::vector<Line> subset;
    RefSide side = RefSide::LEFT_OF_REF;
};

// Longest monotone slope subsequence by intercept order along ref; all
// pairwise intersections of the result lie strictly on the reported side.
// For a vertical ref LEFT_OF_REF is literal; for a non-vertical ref it
// means strictly below. Lines parallel to ref or sharing an intercept on it
// are rejected.
OneSidedResult one_sided_subset(const std::vector<Line>& l, const Line& ref);

enum class SlopeSign { POSITIVE, NEGATIVE };

struct NotSeparableError : std::runtime_error {
    NotSeparableError(const std::string& msg, Point a, Point b)
        : std::runtime_error(msg), witness_above(std::move(a)), witness_below(std::move(b)) {}
    Point witness_above, witness_below;
};

// An exact line of the requested slope sign with above_pts strictly above
// and below_pts strictly below; throws NotSeparableError with a witness
// pair otherwise.
Line separator_line(const std::vector<Point>& above_pts, const std::vector<Point>& below_pts,
                    SlopeSign slope_sign);

struct ExtractConfig {
    std::size_t capacity = 16;  // the lemma's constant c: |R| = |B| = capacity * t^2
};

struct ExtractReport {
    std::vector<std::pair<std::string, std::string>> stages;
    void add(std::string key, std::string value) {
        stages.emplace_back(std::move(key), std::move(value));
    }
};

struct ExtractResult {
    std::optional<NaturalGridWitness> witness;
    Arrangement host;  // (all R x B cross-intersections, R u B)
    ExtractReport report;
};

// The composed pipeline of the natural-grid lemma: sweep split, blue
// halving, slope normalization by exact shear, same-type selection,
// separator l1, Dilworth on R', separator l2, Dilworth on the live blues,
// witness assembly. Absence (a starved stage) is a legal outcome.
ExtractResult extract_natural_grid(const RedBlueInput& input, std::size_t t,
                                   const ExtractConfig& cfg = {});

struct MatchingGraph {
    struct Edge {
        std::uint32_t u, v;  // indices into lines
        Point witness;
    };
    std::vector<Line> lines;
    std::vector<Edge> edges;
    // E_j per witness point, as indices into edges, for points on >= 2 lines.
    std::vector<std::pair<Point, std::vector<std::uint32_t>>> per_point;
};

// For each point incident to >= 2 cluster lines, pairs consecutive lines in
// rotational (slope) order, dropping the last when the count is odd.
MatchingGraph matching_graph(const std::vector<Point>& pts, const std::vector<Line>& cluster);

struct KttResult {
    SearchStatus status = SearchStatus::ABSENT;
    std::vector<Line> left;
    std::vector<Line> right;
};

// K_{t,t} subgraph of the matching graph; the t^2 witness points are
// checked for distinctness even though matching-disjointness forces it.
KttResult find_ktt(const MatchingGraph& h, std::size_t t,
                   std::uint64_t budget = kDefaultBudget);

// Slope-ordered partition into r parts of near-equal size. Stand-in for a
// simplicial partition: it does NOT provide any crossing guarantee.
std::vector<std::vector<Line>> slope_bucket_partition(const std::vector<Line>& l, std::size_t r);

// Red/blue file: 'red <n>' then n line triples, 'blue <m>' then m triples.
RedBlueInput read_red_blue(const std::string& path);
void write_red_blue(const RedBlueInput& input, const std::string& path);

}  // namespace gridarr
