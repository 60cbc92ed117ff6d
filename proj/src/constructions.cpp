#include "gridarr/constructions.hpp"

#include <algorithm>
#include <stdexcept>

namespace gridarr {

namespace {

std::int64_t max_of(const std::vector<std::int64_t>& v) {
    return *std::max_element(v.begin(), v.end());
}

}  // namespace

void GridFreeParams::validate() const {
    if (a.empty()) throw std::invalid_argument("grid-free params: A is empty");
    if (m.empty()) throw std::invalid_argument("grid-free params: M is empty");
    for (std::int64_t v : a)
        if (v < 1) throw std::invalid_argument("grid-free params: A must be positive");
    for (std::int64_t v : m)
        if (v < 1) throw std::invalid_argument("grid-free params: M must be positive");
    if (h < 2) throw std::invalid_argument("grid-free params: h must be >= 2");
    if (k < 1) throw std::invalid_argument("grid-free params: k must be >= 1");
    if (k < max_of(m))
        throw std::invalid_argument("grid-free params: k < max(M)");
    if (!is_sidon(m)) throw std::invalid_argument("grid-free params: M is not a Sidon set");
    if (!is_kfold_sidon(a, static_cast<int>(k)).ok)
        throw std::invalid_argument("grid-free params: A is not a k-fold Sidon set");
    // Exact discrete analogue of mx+b <= h/4 + h/2 < h: every line then
    // carries exactly |A| points.
    if (max_of(m) * max_of(a) + h / 2 > h)
        throw std::invalid_argument("grid-free params: range condition max(M)*max(A)+floor(h/2) <= h violated");
}

Arrangement lattice_rich_lines(std::int64_t s) {
    if (s < 1) throw std::invalid_argument("lattice_rich_lines: s must be >= 1");
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(2 * s * s * s));
    for (std::int64_t x = 1; x <= s; ++x)
        for (std::int64_t y = 1; y <= 2 * s * s; ++y)
            pts.push_back(Point{Rational(x), Rational(y)});
    std::vector<Line> lines;
    lines.reserve(static_cast<std::size_t>(s * s * s));
    for (std::int64_t c = 1; c <= s; ++c)
        for (std::int64_t d = 1; d <= s * s; ++d)
            lines.push_back(Line::from_coeffs(c, -1, -d));  // y = c*x + d
    return Arrangement(std::move(pts), std::move(lines));
}

Arrangement generate_grid_free(const GridFreeParams& p) {
    p.validate();
    std::vector<Point> pts;
    pts.reserve(p.a.size() * static_cast<std::size_t>(p.h));
    for (std::int64_t x : p.a)
        for (std::int64_t j = 1; j <= p.h; ++j)
            pts.push_back(Point{Rational(x), Rational(j)});
    std::vector<Line> lines;
    lines.reserve(p.m.size() * static_cast<std::size_t>(p.h / 2));
    for (std::int64_t slope : p.m)
        for (std::int64_t b = 1; b <= p.h / 2; ++b)
            lines.push_back(Line::from_coeffs(slope, -1, -b));  // y = slope*x + b
    return Arrangement(std::move(pts), std::move(lines));
}

Int iroot(const Int& n, unsigned k) {
    if (n < 0) throw std::invalid_argument("iroot: negative argument");
    if (k == 0) throw std::invalid_argument("iroot: zero index");
    if (n == 0) return 0;
    Int hi = 1;
    while (pow(hi, k) <= n) hi <<= 1;
    Int lo = hi >> 1;  // lo^k <= n < hi^k
    while (hi - lo > 1) {
        Int mid = (lo + hi) >> 1;
        if (pow(mid, k) <= n)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

namespace {

// Truncated greedy generators used by the asymptotic schedule: all elements
// of the greedy sequence that are <= cap.
template <typename Gen>
std::vector<std::int64_t> truncate_to_cap(Gen gen, std::int64_t cap) {
    std::size_t count = 8;
    std::vector<std::int64_t> seq = gen(count);
    while (seq.back() <= cap) {
        count *= 2;
        seq = gen(count);
    }
    auto cut = std::upper_bound(seq.begin(), seq.end(), cap);
    seq.erase(cut, seq.end());
    return seq;
}

std::vector<std::int64_t> greedy_sidon_upto(std::int64_t cap) {
    return truncate_to_cap([](std::size_t n) { return greedy_sidon(n); }, cap);
}

std::vector<std::int64_t> greedy_kfold_upto(int k, std::int64_t cap) {
    return truncate_to_cap([k](std::size_t n) { return greedy_kfold(k, n); }, cap);
}

}  // namespace

GridFreeParams asymptotic_params(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("asymptotic_params: n must be >= 1");
    Int nn(n);
    std::int64_t k = static_cast<std::int64_t>(iroot(nn, 7));
    std::int64_t h = static_cast<std::int64_t>(iroot(pow(nn, 13), 14));
    std::int64_t cap_a = static_cast<std::int64_t>(iroot(pow(nn, 11), 14)) / 4;

    if (k < 1) throw std::invalid_argument("asymptotic_params: n too small (empty slope set)");
    GridFreeParams p;
    p.m = greedy_sidon_upto(k);
    if (p.m.empty()) throw std::invalid_argument("asymptotic_params: n too small (empty slope set)");
    if (cap_a < 1)
        throw std::invalid_argument("asymptotic_params: n too small (empty x-coordinate set)");
    p.a = greedy_kfold_upto(static_cast<int>(k), cap_a);
    if (p.a.empty())
        throw std::invalid_argument("asymptotic_params: n too small (empty x-coordinate set)");
    p.h = h;
    p.k = k;
    p.validate();
    return p;
}

Rational pow_frac(const Int& base, unsigned p, unsigned q, unsigned digits) {
    if (base < 0) throw std::invalid_argument("pow_frac: negative base");
    if (q == 0) throw std::invalid_argument("pow_frac: zero root index");
    Int scale = pow(Int(10), digits);
    Int r = iroot(pow(base, p) * pow(scale, q), q);
    return Rational(r, scale);
}

Rational st_bound(std::int64_t m, std::int64_t n, unsigned digits) {
    if (m < 1 || n < 1) throw std::invalid_argument("st_bound: m, n must be >= 1");
    // m^(2/3) n^(2/3) = ((m*n)^2)^(1/3)
    return pow_frac(Int(m) * Int(n), 2, 3, digits) + Rational(m) + Rational(n);
}

Rational thm_bound(std::int64_t t, std::int64_t m, std::int64_t n, unsigned digits) {
    if (t < 2) throw std::invalid_argument("thm_bound: t must be >= 2");
    if (m < 1 || n < 1) throw std::invalid_argument("thm_bound: m, n must be >= 1");
    unsigned tu = static_cast<unsigned>(t);
    // m^((2t-2)/(3t-2)) * n^((2t-1)/(3t-2)) = (m^(2t-2) * n^(2t-1))^(1/(3t-2))
    Int prod = pow(Int(m), 2 * tu - 2) * pow(Int(n), 2 * tu - 1);
    Rational first = pow_frac(prod, 1, 3 * tu - 2, digits);
    // m^(1 + 1/(6t-3)) = (m^(6t-2))^(1/(6t-3))
    Rational second = pow_frac(Int(m), 6 * tu - 2, 6 * tu - 3, digits);
    return first + second + Rational(n);
}

Rational cor_exponent(std::int64_t t) {
    if (t < 2) throw std::invalid_argument("cor_exponent: t must be >= 2");
    return Rational(4, 3) - Rational(1, 9 * t - 6);
}

BoundReport make_bound_report(std::int64_t m, std::int64_t n, std::int64_t t,
                              std::uint64_t measured) {
    BoundReport r;
    r.m = m;
    r.n = n;
    r.t = t;
    r.st = st_bound(m, n);
    r.thm = thm_bound(t, m, n);
    r.cor_exp = cor_exponent(t);
    r.measured_incidences = measured;
    r.ratio_st = Rational(measured) / r.st;
    r.ratio_thm = Rational(measured) / r.thm;
    return r;
}

}  // namespace gridarr
