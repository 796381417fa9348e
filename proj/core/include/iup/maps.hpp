#pragma once

#include "iup/partition.hpp"

#include <optional>

namespace iup {

// h(u) = floor(u + 1/2), and 0 on 1/2 + Z.
long floor_h(const Rational& u);

// Cluster weights rho_1..rho_{d+1}; validated nonnegative and summing to one.
Vector validate_rho(const Vector& rho);
Vector uniform_rho(size_t d);

Vector b_rho(const Vector& rho, const Vector& x);
// B_rho as a function of the h-digits over contiguous ranges (the atom label).
Vector b_rho_from_label(const Vector& rho, const AtomLabel& label);
// {2(1-eps)x + 2 eps B_rho(x)} evaluated directly, componentwise fractional part.
Vector g_raw(const Vector& rho, const Rational& eps, const Vector& x);

struct MapAtom {
    AtomLabel label;
    ConstraintMatrix bounds;
    Vector offset;
};

// x -> a x + offset_omega on each atom omega.
class PiecewiseAffineMap {
public:
    PiecewiseAffineMap(Rational a, std::vector<MapAtom> atoms, ConstraintMatrix ambient);

    size_t dim() const { return ambient_.dim(); }
    const Rational& expansion() const { return a_; }
    const std::vector<MapAtom>& atoms() const { return atoms_; }
    const ConstraintMatrix& ambient() const { return ambient_; }
    const AlphaPtr& alpha() const { return ambient_.alpha(); }
    const MapAtom& atom(const AtomLabel& label) const;

    std::pair<Vector, AtomLabel> evaluate(const Vector& x) const;
    ConstraintMatrix image_of_polytope(const ConstraintMatrix& m, const AtomLabel& omega) const;

    // Set when built by build_g_map.
    std::optional<Vector> rho;
    std::optional<Rational> eps;

private:
    Rational a_;
    std::vector<MapAtom> atoms_;
    ConstraintMatrix ambient_;
};

// The open unit cube over alpha (alpha must contain the coordinate axes).
ConstraintMatrix unit_cube(const AlphaPtr& alpha);

PiecewiseAffineMap build_g_map(const Vector& rho, const Rational& eps, const AlphaPtr& alpha);

}  // namespace iup
