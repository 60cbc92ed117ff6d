#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gridarr {

// Coefficients of u1*x1 + u2*x2 + u3*x3 + u4*x4 = 0 with u1+u2+u3+u4 = 0.
struct EquationCoeffs {
    std::array<int, 4> u;

    explicit EquationCoeffs(std::array<int, 4> coeffs);
    int max_abs() const;
};

// Index partition of {0,1,2,3} by equal x-values, with per-part coefficient
// sums. The solution is trivial exactly when every part sum is zero.
struct SolutionClassification {
    std::vector<std::vector<int>> partition;  // parts in order of first occurrence
    std::vector<std::int64_t> part_sums;
    bool trivial = false;
};

SolutionClassification classify_solution(const EquationCoeffs& u,
                                         const std::array<std::int64_t, 4>& x);

// True iff all pairwise sums a_i + a_j (i <= j) are distinct.
bool is_sidon(const std::vector<std::int64_t>& a);

// Mian-Chowla greedy: start at 1, always append the smallest integer that
// keeps the set Sidon.
std::vector<std::int64_t> greedy_sidon(std::size_t count);

// The greedy k-fold Sidon recursion: a_1 = 1 and a_m is the smallest
// positive integer not excluded by any coefficient choice |u_i| <= k with
// zero total sum, index subset with nonzero coefficient sum, and assignment
// of earlier elements to the free coordinates.
std::vector<std::int64_t> greedy_kfold(int k, std::size_t count);

struct KFoldCounterexample {
    EquationCoeffs u;
    std::array<std::int64_t, 4> x;
};

struct KFoldCheckResult {
    bool ok = false;
    std::optional<KFoldCounterexample> counterexample;
};

// Exhaustive check over all coefficient tuples |u_i| <= k summing to zero
// and all x in A^4; returns the first nontrivial solution found, if any.
KFoldCheckResult is_kfold_sidon(const std::vector<std::int64_t>& a, int k);

struct KFoldCertificate {
    std::vector<std::int64_t> a;
    int k = 1;
    std::int64_t verified_upto = 0;  // all quadruples from elements <= this were checked
};

// Runs the exhaustive verifier and packages the result.
std::optional<KFoldCertificate> certify_kfold(const std::vector<std::int64_t>& a, int k);

// The explicit bound 2^8 * k^4 * m^3 on the m-th greedy element.
std::int64_t kfold_growth_bound(int k, std::size_t m);

// Set files: one integer per line, strictly increasing.
std::vector<std::int64_t> read_set(const std::string& path);
void write_set(const std::vector<std::int64_t>& a, const std::string& path);

}  // namespace gridarr
