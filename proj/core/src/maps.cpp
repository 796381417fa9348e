#include "iup/maps.hpp"

#include "iup/error.hpp"
#include "iup/linalg.hpp"

namespace iup {

namespace {

bool on_half_integer(const Rational& u) {
    Rational t = u - Rational(1, 2);
    return t.get_den() == 1;
}

Rational contiguous_sum(const Vector& x, size_t i, size_t j) {
    Rational s = 0;
    for (size_t k = i; k <= j; ++k) s += x[k];
    return s;
}

}  // namespace

long floor_h(const Rational& u) {
    if (on_half_integer(u)) return 0;
    return floor_of(u + Rational(1, 2)).get_num().get_si();
}

Vector validate_rho(const Vector& rho) {
    if (rho.size() < 2) throw Error(ErrorKind::ParameterOutOfRange, "rho needs at least two weights");
    Rational total = 0;
    for (const auto& r : rho) {
        if (sgn(r) < 0) throw Error(ErrorKind::ParameterOutOfRange, "negative cluster weight");
        total += r;
    }
    if (total != 1) throw Error(ErrorKind::ParameterOutOfRange, "cluster weights must sum to 1");
    return rho;
}

Vector uniform_rho(size_t d) { return Vector(d + 1, Rational(1, static_cast<long>(d + 1))); }

Vector b_rho_from_label(const Vector& rho, const AtomLabel& label) {
    const size_t d = rho.size() - 1;
    auto ranges = contiguous_ranges(d);
    auto digits = label_digits(label);
    if (digits.size() != ranges.size()) throw Error(ErrorKind::DimensionMismatch, "label length does not match rho");
    // H(i, j) = h(x_i + ... + x_j), 0 for empty ranges.
    auto H = [&](size_t i, size_t j) -> long {
        if (j < i) return 0;
        for (size_t r = 0; r < ranges.size(); ++r)
            if (ranges[r] == std::make_pair(i, j)) return digits[r];
        return 0;
    };
    Vector b(d);
    for (size_t i = 0; i < d; ++i) {
        b[i] = (rho[i] + rho[i + 1]) * H(i, i);
        for (size_t j = 0; j < i; ++j) b[i] += rho[j] * (H(j, i) - (i == 0 ? 0 : H(j, i - 1)));
        for (size_t j = i + 1; j + 1 < rho.size(); ++j) b[i] += rho[j + 1] * (H(i, j) - H(i + 1, j));
    }
    return b;
}

Vector b_rho(const Vector& rho, const Vector& x) {
    const size_t d = rho.size() - 1;
    if (x.size() != d) throw Error(ErrorKind::DimensionMismatch, "point dimension does not match rho");
    std::vector<int> digits;
    for (auto [i, j] : contiguous_ranges(d)) {
        Rational s = contiguous_sum(x, i, j);
        if (on_half_integer(s)) throw Error(ErrorKind::OnDiscontinuity, "contiguous sum on 1/2 + Z");
        digits.push_back(static_cast<int>(floor_h(s)));
    }
    return b_rho_from_label(rho, make_label(digits));
}

Vector g_raw(const Vector& rho, const Rational& eps, const Vector& x) {
    Vector b = b_rho(rho, x);
    Vector y(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        Rational v = 2 * (1 - eps) * x[i] + 2 * eps * b[i];
        y[i] = v - floor_of(v);
    }
    return y;
}

PiecewiseAffineMap::PiecewiseAffineMap(Rational a, std::vector<MapAtom> atoms, ConstraintMatrix ambient)
    : a_(std::move(a)), atoms_(std::move(atoms)), ambient_(std::move(ambient)) {
    if (sgn(a_) <= 0) throw Error(ErrorKind::NonPositiveScale, "expansion must be positive");
    for (const auto& at : atoms_) {
        if (!same_alpha(at.bounds.alpha(), ambient_.alpha()))
            throw Error(ErrorKind::CoefficientMismatch, "atom " + at.label + " uses another coefficient matrix");
        if (at.offset.size() != dim()) throw Error(ErrorKind::DimensionMismatch, "offset of atom " + at.label);
    }
}

const MapAtom& PiecewiseAffineMap::atom(const AtomLabel& label) const {
    for (const auto& a : atoms_)
        if (a.label == label) return a;
    throw Error(ErrorKind::ParameterOutOfRange, "no atom labelled '" + label + "'");
}

std::pair<Vector, AtomLabel> PiecewiseAffineMap::evaluate(const Vector& x) const {
    for (const auto& at : atoms_) {
        if (!contains_point(at.bounds, x)) continue;
        Vector y(x.size());
        for (size_t i = 0; i < x.size(); ++i) y[i] = a_ * x[i] + at.offset[i];
        return {y, at.label};
    }
    throw Error(ErrorKind::OnBoundary, "point lies in no atom");
}

ConstraintMatrix PiecewiseAffineMap::image_of_polytope(const ConstraintMatrix& m, const AtomLabel& omega) const {
    const MapAtom& at = atom(omega);
    return affine_image(intersect(m, at.bounds), a_, at.offset);
}

ConstraintMatrix unit_cube(const AlphaPtr& alpha) {
    const size_t d = alpha->dim();
    Matrix axes = identity_matrix(d);
    for (const auto& axis : axes)
        if (!alpha->find_row(axis)) throw Error(ErrorKind::CoefficientMismatch, "coefficient matrix lacks a coordinate axis");
    ConstraintMatrix box(make_alpha(axes), std::vector<Bounds>(d, Bounds{ExtRational(0L), ExtRational(1L)}));
    return optimize(embed(box, alpha));
}

PiecewiseAffineMap build_g_map(const Vector& rho, const Rational& eps, const AlphaPtr& alpha) {
    validate_rho(rho);
    const size_t d = rho.size() - 1;
    if (alpha->dim() != d) throw Error(ErrorKind::DimensionMismatch, "coefficient matrix dimension differs from rho");
    AlphaPtr canon = canonical_alpha(d);
    for (const auto& r : canon->matrix())
        if (!alpha->find_row(r)) throw Error(ErrorKind::CoefficientMismatch, "coefficient matrix lacks a contiguous-sum row");

    std::vector<MapAtom> atoms;
    for (const auto& at : enumerate_atoms(d)) {
        // Offsets come from an exact interior witness of the atom.
        Vector w = interior_point(at.bounds);
        Vector b = b_rho(rho, w);
        Vector offset(d);
        for (size_t i = 0; i < d; ++i) offset[i] = 2 * eps * b[i] - floor_h(w[i]);
        atoms.push_back({at.label, optimize(embed(at.bounds, alpha)), std::move(offset)});
    }
    PiecewiseAffineMap map(2 * (1 - eps), std::move(atoms), unit_cube(alpha));
    map.rho = rho;
    map.eps = eps;
    return map;
}

}  // namespace iup
