#include "iup/partition.hpp"

#include "iup/error.hpp"

#include <map>
#include <mutex>

namespace iup {

std::vector<std::pair<size_t, size_t>> contiguous_ranges(size_t d) {
    std::vector<std::pair<size_t, size_t>> out;
    for (size_t len = 1; len <= d; ++len)
        for (size_t i = 0; i + len <= d; ++i) out.emplace_back(i, i + len - 1);
    return out;
}

AlphaPtr canonical_alpha(size_t d) {
    static std::mutex mutex;
    static std::map<size_t, AlphaPtr> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[d];
    if (!slot) {
        Matrix rows;
        for (auto [i, j] : contiguous_ranges(d)) {
            Vector r(d);
            for (size_t k = i; k <= j; ++k) r[k] = 1;
            rows.push_back(std::move(r));
        }
        slot = make_alpha(std::move(rows));
    }
    return slot;
}

std::vector<int> label_digits(const AtomLabel& label) {
    std::vector<int> out;
    for (char c : label) {
        if (c < '0' || c > '9') throw Error(ErrorKind::ParseError, "bad atom label '" + label + "'");
        out.push_back(c - '0');
    }
    return out;
}

AtomLabel make_label(const std::vector<int>& digits) {
    AtomLabel out;
    for (int v : digits) out.push_back(static_cast<char>('0' + v));
    return out;
}

std::vector<Atom> enumerate_atoms(size_t d) {
    if (d == 0 || d > 9) throw Error(ErrorKind::ParameterOutOfRange, "dimension must be in 1..9");
    AlphaPtr alpha = canonical_alpha(d);
    auto ranges = contiguous_ranges(d);
    const Rational half(1, 2);

    std::vector<Atom> atoms;
    std::vector<int> h(ranges.size(), 0);
    while (true) {
        std::vector<Bounds> b(ranges.size());
        for (size_t r = 0; r < ranges.size(); ++r) {
            Rational len(static_cast<long>(ranges[r].second - ranges[r].first + 1));
            Rational lo = h[r] - half, hi = h[r] + half;
            b[r] = {ExtRational(lo < 0 ? Rational(0) : lo), ExtRational(hi > len ? len : hi)};
        }
        ConstraintMatrix m(alpha, std::move(b));
        if (!is_empty(m)) atoms.push_back({make_label(h), optimize(m)});

        size_t r = ranges.size();
        while (r > 0) {
            --r;
            int top = static_cast<int>(ranges[r].second - ranges[r].first + 1);
            if (h[r] < top) {
                ++h[r];
                break;
            }
            h[r] = 0;
            if (r == 0) return atoms;
        }
    }
}

AtomLabel locate(const std::vector<Atom>& atoms, const Vector& x) {
    for (const auto& a : atoms)
        if (contains_point(a.bounds, x)) return a.label;
    throw Error(ErrorKind::OnBoundary, "point lies in no atom");
}

}  // namespace iup
