#include "gridarr/sidon.hpp"

#include "gridarr/arrangement.hpp"  // ParseError

#include <algorithm>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace gridarr {

EquationCoeffs::EquationCoeffs(std::array<int, 4> coeffs) : u(coeffs) {
    if (u[0] + u[1] + u[2] + u[3] != 0)
        throw std::invalid_argument("equation coefficients must sum to zero");
}

int EquationCoeffs::max_abs() const {
    int m = 0;
    for (int v : u) m = std::max(m, std::abs(v));
    return m;
}

SolutionClassification classify_solution(const EquationCoeffs& u,
                                         const std::array<std::int64_t, 4>& x) {
    SolutionClassification out;
    std::vector<std::int64_t> values;
    for (int i = 0; i < 4; ++i) {
        auto it = std::find(values.begin(), values.end(), x[i]);
        std::size_t part;
        if (it == values.end()) {
            part = values.size();
            values.push_back(x[i]);
            out.partition.emplace_back();
            out.part_sums.push_back(0);
        } else {
            part = static_cast<std::size_t>(it - values.begin());
        }
        out.partition[part].push_back(i);
        out.part_sums[part] += u.u[i];
    }
    out.trivial = std::all_of(out.part_sums.begin(), out.part_sums.end(),
                              [](std::int64_t s) { return s == 0; });
    return out;
}

namespace {

std::vector<std::int64_t> sorted_distinct(const std::vector<std::int64_t>& a,
                                          const char* who) {
    std::vector<std::int64_t> s = a;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument(std::string(who) + ": duplicate element");
    return s;
}

}  // namespace

bool is_sidon(const std::vector<std::int64_t>& a) {
    auto s = sorted_distinct(a, "is_sidon");
    std::unordered_set<std::int64_t> sums;
    sums.reserve(s.size() * (s.size() + 1) / 2);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i; j < s.size(); ++j)
            if (!sums.insert(s[i] + s[j]).second) return false;
    return true;
}

std::vector<std::int64_t> greedy_sidon(std::size_t count) {
    if (count == 0) throw std::invalid_argument("greedy_sidon: count must be >= 1");
    std::vector<std::int64_t> a;
    std::unordered_set<std::int64_t> sums;  // all a_i + a_j, i <= j
    while (a.size() < count) {
        std::int64_t c = a.empty() ? 1 : a.back() + 1;
        for (;; ++c) {
            bool ok = !sums.count(2 * c);
            for (std::size_t i = 0; ok && i < a.size(); ++i)
                if (sums.count(a[i] + c)) ok = false;
            if (ok) break;
        }
        for (std::int64_t v : a) sums.insert(v + c);
        sums.insert(2 * c);
        a.push_back(c);
    }
    return a;
}

std::int64_t kfold_growth_bound(int k, std::size_t m) {
    return std::int64_t(256) * k * k * k * k * static_cast<std::int64_t>(m) *
           static_cast<std::int64_t>(m) * static_cast<std::int64_t>(m);
}

namespace {

// Marks v in the exclusion bitmap when the forced value is a positive
// integer within the current cap.
struct Bitmap {
    std::vector<std::uint64_t> words;
    std::int64_t cap;

    explicit Bitmap(std::int64_t cap) : words((cap >> 6) + 1), cap(cap) {}
    void mark(std::int64_t v) {
        if (v >= 1 && v <= cap) words[v >> 6] |= std::uint64_t(1) << (v & 63);
    }
    std::int64_t least_free() const {
        for (std::int64_t v = 1; v <= cap; ++v)
            if (!(words[v >> 6] >> (v & 63) & 1)) return v;
        return 0;
    }
};

// Exclusions forced by equations at the next step, restricted to values
// <= cap. By symmetry of the coefficient range under index permutation it
// is enough to realize one representative subset S per size.
void mark_exclusions(const std::vector<std::int64_t>& a, int k, Bitmap& bm) {
    // |S| = 3: the forced value is x itself для every earlier element.
    for (std::int64_t v : a) bm.mark(v);

    // |S| = 2, S = {3,4}: v = (u1*x1 + u2*x2) / (u1 + u2), u1 + u2 != 0.
    for (int u1 = -k; u1 <= k; ++u1)
        for (int u2 = -k; u2 <= k; ++u2) {
            int t = u1 + u2;
            if (t == 0) continue;
            for (std::int64_t x1 : a) {
                std::int64_t s1 = std::int64_t(u1) * x1;
                for (std::int64_t x2 : a) {
                    std::int64_t s = s1 + std::int64_t(u2) * x2;
                    if (s % t == 0) bm.mark(s / t);
                }
            }
        }

    // |S| = 1, S = {4}: v = (u1*x1 + u2*x2 + u3*x3) / t with t = u1+u2+u3,
    // 0 < |t| <= k (t = -u4).
    for (int u1 = -k; u1 <= k; ++u1)
        for (int u2 = -k; u2 <= k; ++u2)
            for (int u3 = -k; u3 <= k; ++u3) {
                int t = u1 + u2 + u3;
                if (t == 0 || t > k || t < -k) continue;
                for (std::int64_t x1 : a) {
                    std::int64_t s1 = std::int64_t(u1) * x1;
                    for (std::int64_t x2 : a) {
                        std::int64_t s2 = s1 + std::int64_t(u2) * x2;
                        for (std::int64_t x3 : a) {
                            std::int64_t s = s2 + std::int64_t(u3) * x3;
                            if (s % t == 0) bm.mark(s / t);
                        }
                    }
                }
            }
}

}  // namespace

std::vector<std::int64_t> greedy_kfold(int k, std::size_t count) {
    if (k < 1) throw std::invalid_argument("greedy_kfold: k must be >= 1");
    if (count == 0) throw std::invalid_argument("greedy_kfold: count must be >= 1");
    std::vector<std::int64_t> a{1};
    while (a.size() < count) {
        std::int64_t cap = std::max<std::int64_t>(64, 4 * a.back());
        std::int64_t next = 0;
        for (;;) {
            if (cap > std::numeric_limits<std::int64_t>::max() / (4 * (std::int64_t(k) + 1)))
                throw std::overflow_error("greedy_kfold: parameters exceed the int64 domain");
            Bitmap bm(cap);
            mark_exclusions(a, k, bm);
            next = bm.least_free();
            if (next != 0) break;
            cap *= 2;
        }
        a.push_back(next);
    }
    return a;
}

namespace {

// The 15 set partitions of {0,1,2,3} as restricted growth strings in lex
// order; fixed so counterexample enumeration is deterministic.
std::vector<std::array<int, 4>> partition_table() {
    std::vector<std::array<int, 4>> out;
    std::array<int, 4> rgs{};
    auto rec = [&](auto&& self, int i, int mx) -> void {
        if (i == 4) {
            out.push_back(rgs);
            return;
        }
        for (int v = 0; v <= mx + 1; ++v) {
            rgs[i] = v;
            self(self, i + 1, std::max(mx, v));
        }
    };
    rec(rec, 0, -1);
    return out;
}

}  // namespace

KFoldCheckResult is_kfold_sidon(const std::vector<std::int64_t>& a, int k) {
    if (k < 1) throw std::invalid_argument("is_kfold_sidon: k must be >= 1");
    auto s = sorted_distinct(a, "is_kfold_sidon");
    static const std::vector<std::array<int, 4>> partitions = partition_table();

    std::unordered_set<std::int64_t> members(s.begin(), s.end());

    for (int u1 = -k; u1 <= k; ++u1)
        for (int u2 = -k; u2 <= k; ++u2)
            for (int u3 = -k; u3 <= k; ++u3) {
                int u4 = -(u1 + u2 + u3);
                if (u4 > k || u4 < -k) continue;
                if (u1 == 0 && u2 == 0 && u3 == 0 && u4 == 0) continue;
                const std::array<int, 4> u{u1, u2, u3, u4};
                for (const auto& rgs : partitions) {
                    int d = *std::max_element(rgs.begin(), rgs.end()) + 1;
                    if (static_cast<std::size_t>(d) > s.size()) continue;
                    std::array<std::int64_t, 4> csum{};
                    for (int i = 0; i < 4; ++i) csum[rgs[i]] += u[i];
                    bool nontrivial = false;
                    for (int b = 0; b < d; ++b)
                        if (csum[b] != 0) nontrivial = true;
                    if (!nontrivial) continue;  // every solution with this pattern is trivial

                    // Blocks with nonzero coefficient first; the last of
                    // them is solved for, the zero blocks then take the
                    // smallest unused elements.
                    std::vector<int> nz, zero;
                    for (int b = 0; b < d; ++b) (csum[b] != 0 ? nz : zero).push_back(b);

                    std::array<std::int64_t, 4> y{};
                    std::vector<int> chosen;  // indices into s, for distinctness
                    auto assign_zeros_and_report = [&]() -> std::optional<KFoldCounterexample> {
                        std::vector<bool> used(s.size(), false);
                        for (int idx : chosen) used[idx] = true;
                        for (int b : zero) {
                            std::size_t pick = 0;
                            while (pick < s.size() && used[pick]) ++pick;
                            if (pick == s.size()) return std::nullopt;
                            used[pick] = true;
                            y[b] = s[pick];
                        }
                        std::array<std::int64_t, 4> x{};
                        for (int i = 0; i < 4; ++i) x[i] = y[rgs[i]];
                        return KFoldCounterexample{EquationCoeffs(u), x};
                    };

                    std::optional<KFoldCounterexample> found;
                    auto rec = [&](auto&& self, std::size_t pos) -> void {
                        if (found) return;
                        if (pos + 1 == nz.size()) {
                            // Solve c_last * y_last = -sum.
                            std::int64_t sum = 0;
                            for (std::size_t q = 0; q + 1 < nz.size(); ++q)
                                sum += csum[nz[q]] * y[nz[q]];
                            std::int64_t c_last = csum[nz.back()];
                            if (sum % c_last != 0) return;
                            std::int64_t val = -sum / c_last;
                            auto it = members.find(val);
                            if (it == members.end()) return;
                            int idx = static_cast<int>(
                                std::lower_bound(s.begin(), s.end(), val) - s.begin());
                            if (std::find(chosen.begin(), chosen.end(), idx) != chosen.end())
                                return;
                            y[nz.back()] = val;
                            chosen.push_back(idx);
                            found = assign_zeros_and_report();
                            chosen.pop_back();
                            return;
                        }
                        for (std::size_t i = 0; i < s.size(); ++i) {
                            if (std::find(chosen.begin(), chosen.end(), static_cast<int>(i)) !=
                                chosen.end())
                                continue;
                            y[nz[pos]] = s[i];
                            chosen.push_back(static_cast<int>(i));
                            self(self, pos + 1);
                            chosen.pop_back();
                            if (found) return;
                        }
                    };
                    if (!nz.empty()) rec(rec, 0);
                    if (found) return KFoldCheckResult{false, found};
                }
            }
    return KFoldCheckResult{true, std::nullopt};
}

std::optional<KFoldCertificate> certify_kfold(const std::vector<std::int64_t>& a, int k) {
    auto res = is_kfold_sidon(a, k);
    if (!res.ok) return std::nullopt;
    KFoldCertificate cert;
    cert.a = sorted_distinct(a, "certify_kfold");
    cert.k = k;
    cert.verified_upto = cert.a.empty() ? 0 : cert.a.back();
    return cert;
}

std::vector<std::int64_t> read_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::int64_t> out;
    std::string raw;
    for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        std::size_t b = raw.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = raw.find_last_not_of(" \t\r");
        std::string tok = raw.substr(b, e - b + 1);
        try {
            std::size_t used = 0;
            std::int64_t v = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument("bad integer '" + tok + "'");
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError(line_no, "bad integer '" + tok + "'");
        }
        if (out.size() >= 2 && out[out.size() - 2] >= out.back())
            throw ParseError(line_no, "set not strictly increasing");
    }
    return out;
}

void write_set(const std::vector<std::int64_t>& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (std::int64_t v : a) out << v << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace gridarr
