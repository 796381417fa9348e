#pragma once

#include "oracle.hpp"

#include "iup/geometry.hpp"
#include "iup/linalg.hpp"

#include <random>
#include <string>

namespace testing_support {

// Bounds are k / kScale with integer k.
constexpr long kScale = 4;
// Integer alpha in [-3, 3], d <= 4, |k| <= 48: Hadamard gives |vertex coordinate| <= 6^3 * 96 < 2^20.
constexpr long kBox = 1L << 20;

struct RandomCase {
    oracle::Problem problem;
    iup::ConstraintMatrix matrix;
};

inline RandomCase random_case(std::mt19937_64& rng, size_t max_d = 4, size_t max_e = 10) {
    std::uniform_int_distribution<size_t> dim(1, max_d);
    const size_t d = dim(rng);
    // In one dimension all rows are projectively equal, so a single row is all there is.
    std::uniform_int_distribution<size_t> rows(d, d == 1 ? 1 : max_e);
    const size_t e = rows(rng);
    std::uniform_int_distribution<long> entry(-3, 3), coin(0, 99);

    iup::Matrix alpha;
    std::vector<std::vector<long>> ints;
    while (true) {
        alpha.clear();
        ints.clear();
        while (ints.size() < e) {
            std::vector<long> r(d);
            iup::Vector q(d);
            bool nonzero = false;
            for (size_t j = 0; j < d; ++j) {
                r[j] = entry(rng);
                q[j] = r[j];
                nonzero |= r[j] != 0;
            }
            if (!nonzero) continue;
            bool duplicate = false;
            for (const auto& other : alpha)
                if (iup::projective_ratio(q, other)) duplicate = true;
            if (duplicate) continue;
            alpha.push_back(q);
            ints.push_back(r);
        }
        if (iup::rank(alpha) == d) break;
    }

    oracle::Problem p;
    p.d = d;
    p.alpha = ints;
    p.lower.resize(e);
    p.upper.resize(e);
    const bool centered = coin(rng) < 70;
    std::uniform_int_distribution<long> center(-8, 8), width(0, 12), anywhere(-24, 24), span(-6, 24);
    std::vector<long> c(d);
    for (auto& v : c) v = center(rng);
    for (size_t i = 0; i < e; ++i) {
        long lo, hi;
        if (centered) {
            long v = 0;
            for (size_t j = 0; j < d; ++j) v += ints[i][j] * c[j];
            lo = v - width(rng);
            hi = v + width(rng);
            if (coin(rng) < 10) hi += 40;
            if (coin(rng) < 5) lo = hi + 1;
        } else {
            lo = anywhere(rng);
            hi = lo + span(rng);
        }
        lo = std::clamp(lo, -48L, 48L);
        hi = std::clamp(hi, -48L, 48L);
        if (coin(rng) >= 15) p.lower[i] = lo;
        if (coin(rng) >= 15) p.upper[i] = hi;
    }

    std::vector<iup::Bounds> bounds(e);
    for (size_t i = 0; i < e; ++i) {
        if (p.lower[i]) bounds[i].lower = iup::ExtRational(iup::rat(*p.lower[i], kScale));
        if (p.upper[i]) bounds[i].upper = iup::ExtRational(iup::rat(*p.upper[i], kScale));
    }
    return {p, iup::ConstraintMatrix(iup::make_alpha(alpha), bounds)};
}

inline iup::ExtRational to_ext(const std::optional<oracle::Frac>& f, bool lower) {
    if (!f) return lower ? iup::ExtRational::neg_inf() : iup::ExtRational::pos_inf();
    return iup::ExtRational(iup::rat(static_cast<long>(f->num), static_cast<long>(f->den) * kScale));
}

// Empty string when optimize/is_empty agree with the oracle; otherwise a description.
inline std::string compare_with_oracle(const RandomCase& c) {
    oracle::Result r = oracle::solve(c.problem, kBox);
    const bool empty = iup::is_empty(c.matrix);
    if (empty == r.open_nonempty) return std::string("is_empty=") + (empty ? "true" : "false") + " disagrees with oracle";
    iup::ConstraintMatrix o = iup::optimize(c.matrix);
    if (r.closed_nonempty) {
        for (size_t i = 0; i < o.size(); ++i) {
            if (o.lower(i) != to_ext(r.min[i], true))
                return "row " + std::to_string(i) + " lower " + iup::to_string(o.lower(i)) + " vs oracle " +
                       iup::to_string(to_ext(r.min[i], true));
            if (o.upper(i) != to_ext(r.max[i], false))
                return "row " + std::to_string(i) + " upper " + iup::to_string(o.upper(i)) + " vs oracle " +
                       iup::to_string(to_ext(r.max[i], false));
        }
    }
    if (r.closed_nonempty) {
        if (iup::optimize(o) != o) return "optimize is not idempotent";
    } else if (!iup::is_empty(o)) {
        return "emptiness not stable under optimize";
    }
    return {};
}

}  // namespace testing_support
