#pragma once

#include "iup/conditioning.hpp"

#include <array>
#include <random>

namespace iup {

struct CatalogEntry {
    std::string which;
    std::vector<std::pair<std::string, Rational>> params;
    VerificationBundle bundle;
    // Torus generators of the symmetry group used for the AsIUP orbit set.
    std::vector<SymmetryTransform> group_generators;
};

// Rows (1,0), (0,1), (a,1), (1,a).
AlphaPtr alpha_a(const Rational& a);
// alpha_a with the sum row (1,1) appended, so atoms are representable; canonical rows when a = 1.
AlphaPtr alpha_a_extended(const Rational& a);

// The closed-form quadrilateral m_a on alpha_a. For a = 1 the two sum rows coincide and the
// result lives on the canonical 2D matrix with the tighter of the two bounds.
ConstraintMatrix ma_matrix(const Rational& varrho, const Rational& a, const Rational& eps);
ConditioningProblem problem_3_1();
CatalogEntry make_ma(const Rational& varrho, const Rational& a, const Rational& eps);

Rational p_star(const Rational& eps);

using Delta = std::array<Rational, 5>;
enum class DeltaCheck { Enforce, Skip };
// Name of the first violated inequality of the Delta_eps system, or empty.
std::string delta_violation(const Delta& delta, const Rational& eps);
// Uniform sample from the sufficient box, rejected until delta_violation is empty
// (the box alone admits points that fail verification). Zero if no sample is accepted.
Delta sample_delta_box(const Rational& eps, std::mt19937_64& rng);
std::pair<ConstraintMatrix, ConstraintMatrix> m1_m2_matrices(const Delta& delta, const Rational& eps);
ConditioningProblem problem_3_3();
CatalogEntry make_m1_m2(const Delta& delta, const Rational& eps, DeltaCheck check = DeltaCheck::Enforce);

AlphaPtr alpha_p4(const Rational& eps);
ConstraintMatrix p4_default_matrix(const Rational& eps);
ConditioningProblem problem_3_4();
CatalogEntry make_p4(const Rational& eps);

struct Continuation {
    CatalogEntry entry;
    // Set when one of the four defining edges of a quadrilateral is not an active face.
    bool verification_required = false;
};
ConditioningProblem problem_3_2();
Continuation continue_problem2(const Rational& varrho, const Rational& a, const Rational& eps, const Rational& delta);

// Bracket [lo, hi] of the continuation radius: verify passes for delta = lo and fails for delta = hi.
// sign selects the side (+1 or -1). Throws NotBracketing when delta = 0 fails or hi passes.
struct RadiusBracket {
    Rational lo, hi;
};
RadiusBracket continuation_radius(const Rational& varrho, const Rational& a, const Rational& eps, const Rational& hi,
                                  const Rational& tol, int sign = 1);

// x3 bound chain for the p4 orbit set.
struct X3Chain {
    Rational sup_p;           // sup of x3 over P
    Rational sup_orbit;       // sup of x3 over the orbit set
    Rational inf_sigma_image; // inf of x3 over Sigma(P)
};
X3Chain p4_x3_chain(const CatalogEntry& p4);

}  // namespace iup
