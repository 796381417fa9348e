#pragma once

#include "iup/maps.hpp"
#include "iup/problem.hpp"
#include "iup/symmetry.hpp"

#include <functional>
#include <optional>

namespace iup {

struct ConditionVerdict {
    // optimality, nonempty, ambient, localisation, dynamics, self_symmetry
    std::string kind;
    size_t k = 0;
    AtomLabel atom;
    std::string detail;
    bool pass = false;
    ExtRational margin;
};

struct VerificationReport {
    bool pass = false;
    std::vector<ConditionVerdict> conditions;
};

// Everything verify needs for one parameter point.
struct VerificationBundle {
    ConditioningProblem problem;
    std::vector<ConstraintMatrix> candidates;
    PiecewiseAffineMap map;
    // Affine branches referenced by name in the problem; "id" is implied.
    std::vector<SymmetryTransform> symmetries;
};

VerificationReport verify(const ConditioningProblem& problem, const std::vector<ConstraintMatrix>& candidates,
                          const PiecewiseAffineMap& map, const std::vector<SymmetryTransform>& symmetries,
                          size_t jobs = 1);
VerificationReport verify(const VerificationBundle& bundle, size_t jobs = 1);

struct AsiupResult {
    bool pass = false;
    // Names of an intersecting pair (u, Sigma(u')).
    std::optional<std::pair<std::string, std::string>> witness;
    std::vector<ConstraintMatrix> members;
    std::vector<std::string> member_names;
};

// Orbit set: every element of the group generated by the linear parts of `generators`
// (acting mod 1), applied to every candidate through its torus branch.
AsiupResult check_asiup(const std::vector<ConstraintMatrix>& candidates, const std::vector<SymmetryTransform>& generators,
                        const SymmetryTransform& sigma);

using ProblemFamily = std::function<VerificationBundle(const Rational& eps)>;

struct BisectResult {
    Rational lo, hi;
    size_t iterations = 0;
    std::vector<std::pair<Rational, bool>> evaluations;
};

// Requires fail at lo and pass at hi; halves on rational midpoints until hi - lo <= tol.
BisectResult bisect_threshold(const ProblemFamily& family, const Rational& lo, const Rational& hi, const Rational& tol,
                              size_t jobs = 1);

// Coefficients in increasing degree.
using Polynomial = std::vector<Rational>;
Rational evaluate(const Polynomial& p, const Rational& x);

struct ClosedFormThreshold {
    std::string name;
    std::string expression;
    Polynomial polynomial;
    double approx;
};

// eps_{1/3,a} (needs a), eps_3, and (5 - sqrt 17)/2.
ClosedFormThreshold threshold_ma(const Rational& a);
ClosedFormThreshold threshold_eps3();
ClosedFormThreshold threshold_p4();
std::vector<ClosedFormThreshold> closed_form_thresholds(const Rational& a = 2);
// True iff the polynomial takes strictly opposite signs at lo and hi.
bool certifies_root(const Polynomial& p, const Rational& lo, const Rational& hi);

}  // namespace iup
