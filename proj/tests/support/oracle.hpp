#pragma once

// Independent polytope oracle: exact vertex enumeration in fraction-free integer arithmetic.
// Shares no code with the library. Inputs are small integers: alpha entries and bounds scaled
// by a common factor so every bound is an integer.

#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

using i128 = __int128;

// num / den with den > 0.
struct Frac {
    i128 num = 0;
    i128 den = 1;
};

inline bool less(const Frac& a, const Frac& b) { return a.num * b.den < b.num * a.den; }

struct Problem {
    size_t d = 0;
    std::vector<std::vector<long>> alpha;
    // Bounds in units of 1/scale; nullopt is an infinite bound.
    std::vector<std::optional<long>> lower, upper;
};

struct Result {
    bool closed_nonempty = false;
    // Some point satisfies every strict inequality.
    bool open_nonempty = false;
    // Extrema of (alpha x)_i over the closed polytope, in the same units as the bounds; nullopt is infinite.
    std::vector<std::optional<Frac>> min, max;
};

namespace detail {

inline i128 det(const std::vector<std::vector<i128>>& m) {
    const size_t n = m.size();
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    i128 total = 0;
    for (size_t c = 0; c < n; ++c) {
        std::vector<std::vector<i128>> minor;
        for (size_t r = 1; r < n; ++r) {
            std::vector<i128> row;
            for (size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(std::move(row));
        }
        i128 sub = det(minor);
        total += (c % 2 == 0 ? sub : -sub) * m[0][c];
    }
    return total;
}

// adj(m) so that m * adj(m) = det(m) * I.
inline std::vector<std::vector<i128>> adjugate(const std::vector<std::vector<i128>>& m) {
    const size_t n = m.size();
    std::vector<std::vector<i128>> adj(n, std::vector<i128>(n, 0));
    if (n == 1) {
        adj[0][0] = 1;
        return adj;
    }
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) {
            std::vector<std::vector<i128>> minor;
            for (size_t i = 0; i < n; ++i) {
                if (i == r) continue;
                std::vector<i128> row;
                for (size_t k = 0; k < n; ++k)
                    if (k != c) row.push_back(m[i][k]);
                minor.push_back(std::move(row));
            }
            i128 cof = det(minor);
            adj[c][r] = ((r + c) % 2 == 0) ? cof : -cof;
        }
    return adj;
}

struct BoxExtrema {
    bool nonempty = false;
    std::vector<std::optional<Frac>> min, max;
};

// Extrema of each (alpha x)_i over the polytope intersected with [-box, box]^d.
inline BoxExtrema box_extrema(const Problem& p, long box) {
    const size_t d = p.d, e = p.alpha.size();
    // Directions: alpha rows, then the axes of the box.
    std::vector<std::vector<i128>> dirs;
    std::vector<std::vector<i128>> values;
    for (size_t i = 0; i < e; ++i) {
        dirs.emplace_back(p.alpha[i].begin(), p.alpha[i].end());
        std::vector<i128> v;
        if (p.lower[i]) v.push_back(*p.lower[i]);
        if (p.upper[i]) v.push_back(*p.upper[i]);
        values.push_back(v);
    }
    for (size_t j = 0; j < d; ++j) {
        std::vector<i128> axis(d, 0);
        axis[j] = 1;
        dirs.push_back(axis);
        values.push_back({-static_cast<i128>(box), static_cast<i128>(box)});
    }

    BoxExtrema out;
    out.min.resize(e);
    out.max.resize(e);
    const size_t n = dirs.size();
    std::vector<size_t> pick(d);
    for (size_t i = 0; i < d; ++i) pick[i] = i;
    while (true) {
        std::vector<std::vector<i128>> a;
        for (size_t k : pick) a.push_back(dirs[k]);
        i128 D = det(a);
        bool any = D != 0;
        for (size_t k : pick)
            if (values[k].empty()) any = false;
        if (any) {
            auto adj = adjugate(a);
            if (D < 0) {
                D = -D;
                for (auto& row : adj)
                    for (auto& x : row) x = -x;
            }
            // Odometer over the finite sides of each picked direction.
            std::vector<size_t> side(d, 0);
            while (true) {
                std::vector<i128> N(d, 0);
                for (size_t r = 0; r < d; ++r)
                    for (size_t c = 0; c < d; ++c) N[r] += adj[r][c] * values[pick[c]][side[c]];
                bool feasible = true;
                for (size_t j = 0; j < d && feasible; ++j)
                    if (N[j] > static_cast<i128>(box) * D || N[j] < -static_cast<i128>(box) * D) feasible = false;
                std::vector<i128> val(e, 0);
                for (size_t i = 0; i < e && feasible; ++i) {
                    for (size_t j = 0; j < d; ++j) val[i] += static_cast<i128>(p.alpha[i][j]) * N[j];
                    if (p.lower[i] && val[i] < static_cast<i128>(*p.lower[i]) * D) feasible = false;
                    if (p.upper[i] && val[i] > static_cast<i128>(*p.upper[i]) * D) feasible = false;
                }
                if (feasible) {
                    out.nonempty = true;
                    for (size_t i = 0; i < e; ++i) {
                        Frac f{val[i], D};
                        if (!out.min[i] || less(f, *out.min[i])) out.min[i] = f;
                        if (!out.max[i] || less(*out.max[i], f)) out.max[i] = f;
                    }
                }
                size_t r = 0;
                while (r < d && ++side[r] == values[pick[r]].size()) side[r++] = 0;
                if (r == d) break;
            }
        }
        // Next d-subset in lexicographic order.
        size_t i = d;
        while (i > 0 && pick[i - 1] == n - d + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (size_t j = i; j < d; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

inline bool same(const Frac& a, const Frac& b) { return !less(a, b) && !less(b, a); }

}  // namespace detail

// `box` must exceed the Hadamard bound of every basic solution of the data (in bound units).
// A bounded extremum is then attained inside the box, so it does not move when the box doubles;
// an unbounded one does.
inline Result solve(const Problem& p, long box) {
    const size_t e = p.alpha.size();
    detail::BoxExtrema small = detail::box_extrema(p, box), large = detail::box_extrema(p, 2 * box);
    Result res;
    res.min.resize(e);
    res.max.resize(e);
    res.closed_nonempty = small.nonempty;
    if (!res.closed_nonempty) return res;
    res.open_nonempty = true;
    for (size_t i = 0; i < e; ++i) {
        if (detail::same(*small.min[i], *large.min[i])) res.min[i] = small.min[i];
        if (detail::same(*small.max[i], *large.max[i])) res.max[i] = small.max[i];
        if (res.min[i] && res.max[i] && !less(*res.min[i], *res.max[i])) res.open_nonempty = false;
    }
    return res;
}

}  // namespace oracle
