#pragma once

#include "gridarr/arrangement.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace gridarr {

// Two disjoint t-element line families whose t^2 cross-intersections are
// distinct points of the host arrangement. p0 is stored row-major:
// p0[i*t + j] = l1[i] meet l2[j].
struct GridWitness {
    std::vector<Line> l1;
    std::vector<Line> l2;
    std::vector<Point> p0;

    std::size_t t() const { return l1.size(); }
};

struct NaturalGridWitness {
    GridWitness grid;
    std::vector<Point> hull;  // convex hull of p0, CCW
};

enum class SearchStatus { ABSENT, FOUND, BUDGET_EXCEEDED };

struct GridSearchResult {
    SearchStatus status = SearchStatus::ABSENT;
    std::optional<GridWitness> witness;
};

struct NaturalSearchResult {
    SearchStatus status = SearchStatus::ABSENT;
    std::optional<NaturalGridWitness> witness;
};

inline constexpr std::uint64_t kDefaultBudget = 2'000'000'000ULL;

// t = 2 uses the complete C4-style scan over incidence paths; t > 2
// enumerates K_{t,t} candidates in the line-adjacency graph with
// common-neighborhood pruning. Exceeding the node budget is reported as an
// outcome distinct from absence.
GridSearchResult find_txt_grid(const Arrangement& arr, std::size_t t,
                               std::uint64_t budget = kDefaultBudget);

// Upgrades a witness when no within-family intersection lies inside or on
// the convex hull of p0. Throws on invalid witnesses.
std::optional<NaturalGridWitness> is_natural(const Arrangement& arr, const GridWitness& w);

// First grid (in deterministic enumeration order) that upgrades via
// is_natural.
NaturalSearchResult find_natural_grid(const Arrangement& arr, std::size_t t,
                                      std::uint64_t budget = kDefaultBudget);

struct VerifyResult {
    bool ok = false;
    std::string diagnostic;  // names the first violated condition
};

// Recomputes every invariant from scratch; independent of the search code.
VerifyResult verify_witness(const Arrangement& arr, const GridWitness& w);
VerifyResult verify_witness(const Arrangement& arr, const NaturalGridWitness& w);

// Witness file: t, then t line triples for L1, t for L2, then t^2 points.
GridWitness read_witness(const std::string& path);
void write_witness(const GridWitness& w, const std::string& path);

}  // namespace gridarr
