#pragma once

#include "iup/geometry.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace iup {

// x -> linear * x + offset.
struct SymmetryTransform {
    std::string name;
    Matrix linear;
    Vector offset;

    size_t dim() const { return linear.size(); }
    Vector apply(const Vector& x) const;
    // (*this) o other
    SymmetryTransform compose(const SymmetryTransform& other) const;
    SymmetryTransform inverse() const;
};

SymmetryTransform identity_transform(size_t d);
// Sigma(x) = 1 - x.
SymmetryTransform involution_sigma(size_t d);

// Affine branches of the permutation-induced symmetries used in the catalog:
// sigma_321, sigma_4321, sigma_4231, sigma_1324, sigma_2134, sigma_3124, plus "id" and "Sigma"
// (the last two need `d`).
SymmetryTransform named_symmetry(std::string_view name, size_t d = 0);

// alpha sigma x = A pi(alpha x) + B.
struct CompatibilityData {
    AlphaPtr alpha;
    Vector diag;
    std::vector<size_t> perm;
    Vector offset;
};

std::optional<CompatibilityData> check_compatibility(const SymmetryTransform& sigma, const AlphaPtr& alpha);
ConstraintMatrix apply_to_matrix(const CompatibilityData& data, const ConstraintMatrix& m);
bool commutes_with_optimize(const CompatibilityData& data);

// Closure of the linear parts under composition, identity first.
std::vector<Matrix> group_closure(const std::vector<Matrix>& generators, size_t d, size_t cap = 10000);
AlphaPtr build_group_alpha(const std::vector<SymmetryTransform>& generators, const AlphaPtr& alpha0,
                           size_t cap = 10000);

// sigma(P) for any invertible affine sigma, expressed over the coefficient matrix alpha L^{-1}.
ConstraintMatrix transform_polytope(const SymmetryTransform& sigma, const ConstraintMatrix& m);

// The affine branch x -> L x + n (n integer) of the torus map x -> L x mod 1 that sends
// the polytope into the unit cube. Throws NotCompatible if no single branch does.
SymmetryTransform torus_branch(const Matrix& linear, const ConstraintMatrix& m, std::string name);

// Minimal slack of the polytope inside the open unit cube (negative when it sticks out).
ExtRational unit_cube_margin(const ConstraintMatrix& m);

}  // namespace iup
