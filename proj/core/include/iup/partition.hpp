#pragma once

#include "iup/geometry.hpp"

#include <string>

namespace iup {

// Digits h(x_i + ... + x_j) over contiguous ranges, in row order of canonical_alpha.
using AtomLabel = std::string;

struct Atom {
    AtomLabel label;
    ConstraintMatrix bounds;
};

// Contiguous index ranges [i, j] (0-based, inclusive), ordered by length then start:
// for d = 3: 1, 2, 3, 1+2, 2+3, 1+2+3.
std::vector<std::pair<size_t, size_t>> contiguous_ranges(size_t d);
// The d(d+1)/2 contiguous-sum rows. Shared, built once per d.
AlphaPtr canonical_alpha(size_t d);

std::vector<int> label_digits(const AtomLabel& label);
AtomLabel make_label(const std::vector<int>& digits);

// All nonempty atoms of the symbolic partition, optimized, on canonical_alpha(d).
std::vector<Atom> enumerate_atoms(size_t d);

AtomLabel locate(const std::vector<Atom>& atoms, const Vector& x);

}  // namespace iup
