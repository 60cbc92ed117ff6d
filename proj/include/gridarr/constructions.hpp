#pragma once

#include "gridarr/arrangement.hpp"
#include "gridarr/sidon.hpp"

#include <cstdint>

namespace gridarr {

// Parameters of the grid-free construction: points A x {1..h}, lines
// y = m*x + b with m in M and 1 <= b <= floor(h/2).
struct GridFreeParams {
    std::vector<std::int64_t> a;  // k-fold Sidon set, the x-coordinates
    std::vector<std::int64_t> m;  // Sidon set, the slopes
    std::int64_t h = 0;           // height
    std::int64_t k = 0;           // fold parameter, k >= max(M)

    // Throws naming the first failed precondition. Runs the full Sidon and
    // k-fold Sidon verifiers on M and A.
    void validate() const;
};

// The s x 2s^2 integer grid with the s^3 "rich" lines y = c*x + d,
// c in [1..s], d in [1..s^2]; every line meets exactly s points.
Arrangement lattice_rich_lines(std::int64_t s);

Arrangement generate_grid_free(const GridFreeParams& p);

// The paper's parameter schedule: k = floor(n^(1/7)), slopes the greedy
// Sidon set inside [1..k], A the greedy k-fold set truncated to
// floor(n^(11/14))/4, h = floor(n^(13/14)).
GridFreeParams asymptotic_params(std::int64_t n);

// Largest r >= 0 with r^k <= n. n must be >= 0.
Int iroot(const Int& n, unsigned k);

// (base^p)^(1/q) as a rational with `digits` decimal digits of precision.
Rational pow_frac(const Int& base, unsigned p, unsigned q, unsigned digits = 12);

// Bound formulas evaluated with constant 1.
Rational st_bound(std::int64_t m, std::int64_t n, unsigned digits = 12);
Rational thm_bound(std::int64_t t, std::int64_t m, std::int64_t n, unsigned digits = 12);
Rational cor_exponent(std::int64_t t);  // 4/3 - 1/(9t-6), exact

struct BoundReport {
    std::int64_t m = 0, n = 0, t = 2;
    Rational st;
    Rational thm;
    Rational cor_exp;
    std::uint64_t measured_incidences = 0;
    Rational ratio_st;   // measured / st
    Rational ratio_thm;  // measured / thm
};

BoundReport make_bound_report(std::int64_t m, std::int64_t n, std::int64_t t,
                              std::uint64_t measured);

}  // namespace gridarr
