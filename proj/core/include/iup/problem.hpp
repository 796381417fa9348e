#pragma once

#include "iup/partition.hpp"

#include <optional>
#include <string>
#include <vector>

namespace iup {

// Polytope indices are 0-based in memory and 1-based in JSON.
struct Transition {
    size_t k = 0;
    AtomLabel atom;
    size_t to = 0;
    std::string sym = "id";
    bool equality = false;
    // When set, the target is sym(P_to) intersected with this atom.
    std::optional<AtomLabel> target_atom;

    friend bool operator==(const Transition&, const Transition&) = default;
};

struct SelfSymmetry {
    size_t k = 0;
    std::string sym;

    friend bool operator==(const SelfSymmetry&, const SelfSymmetry&) = default;
};

struct ConditioningProblem {
    size_t q = 0;
    std::vector<std::vector<AtomLabel>> localisation;
    std::vector<Transition> transitions;
    std::vector<SelfSymmetry> self_symmetry;

    // Checks indices and that transitions are defined exactly on the localisation pairs.
    void validate() const;
    const Transition* find(size_t k, const AtomLabel& atom) const;

    friend bool operator==(const ConditioningProblem&, const ConditioningProblem&) = default;
};

}  // namespace iup
