#include "iup/symmetry.hpp"

#include "iup/error.hpp"
#include "iup/linalg.hpp"

#include <algorithm>
#include <map>

namespace iup {

Vector SymmetryTransform::apply(const Vector& x) const {
    Vector y = multiply(linear, x);
    for (size_t i = 0; i < y.size(); ++i) y[i] += offset[i];
    return y;
}

SymmetryTransform SymmetryTransform::compose(const SymmetryTransform& other) const {
    SymmetryTransform out;
    out.name = name + "*" + other.name;
    out.linear = multiply(linear, other.linear);
    out.offset = apply(other.offset);
    return out;
}

SymmetryTransform SymmetryTransform::inverse() const {
    auto inv = iup::inverse(linear);
    if (!inv) throw Error(ErrorKind::NotCompatible, "symmetry " + name + " is not invertible");
    SymmetryTransform out;
    out.name = name + "^-1";
    out.linear = *inv;
    out.offset = multiply(*inv, offset);
    for (auto& v : out.offset) v = -v;
    return out;
}

SymmetryTransform identity_transform(size_t d) { return {"id", identity_matrix(d), Vector(d)}; }

SymmetryTransform involution_sigma(size_t d) {
    SymmetryTransform s{"Sigma", identity_matrix(d), Vector(d, Rational(1))};
    for (size_t i = 0; i < d; ++i) s.linear[i][i] = -1;
    return s;
}

SymmetryTransform named_symmetry(std::string_view name, size_t d) {
    auto make = [&](Matrix l, Vector b) { return SymmetryTransform{std::string(name), std::move(l), std::move(b)}; };
    if (name == "id" || name == "identity") {
        if (d == 0) throw Error(ErrorKind::ParameterOutOfRange, "identity needs a dimension");
        return identity_transform(d);
    }
    if (name == "Sigma") {
        if (d == 0) throw Error(ErrorKind::ParameterOutOfRange, "Sigma needs a dimension");
        return involution_sigma(d);
    }
    if (name == "sigma_321") return make({{0, -1}, {-1, 0}}, {1, 1});
    if (name == "sigma_4321") return make({{0, 0, -1}, {0, -1, 0}, {-1, 0, 0}}, {1, 1, 1});
    if (name == "sigma_4231") return make({{0, -1, -1}, {0, 1, 0}, {-1, -1, 0}}, {1, 0, 1});
    if (name == "sigma_1324") return make({{1, 1, 0}, {0, -1, 0}, {0, 1, 1}}, {0, 1, 0});
    if (name == "sigma_2134") return make({{-1, 0, 0}, {1, 1, 0}, {0, 0, 1}}, {1, 0, 0});
    if (name == "sigma_3124") return make({{-1, -1, 0}, {1, 0, 0}, {0, 1, 1}}, {1, 0, 0});
    throw Error(ErrorKind::ParameterOutOfRange, "unknown symmetry '" + std::string(name) + "'");
}

std::optional<CompatibilityData> check_compatibility(const SymmetryTransform& sigma, const AlphaPtr& alpha) {
    if (sigma.dim() != alpha->dim()) throw Error(ErrorKind::DimensionMismatch, "symmetry and coefficient matrix dimensions differ");
    const size_t e = alpha->rows();
    CompatibilityData data{alpha, Vector(e), std::vector<size_t>(e), Vector(e)};
    std::vector<bool> used(e, false);
    for (size_t i = 0; i < e; ++i) {
        auto hit = alpha->find_row(row_times(alpha->row(i), sigma.linear));
        if (!hit || used[hit->first]) return std::nullopt;
        used[hit->first] = true;
        data.perm[i] = hit->first;
        data.diag[i] = hit->second;
        data.offset[i] = dot(alpha->row(i), sigma.offset);
    }
    return data;
}

ConstraintMatrix apply_to_matrix(const CompatibilityData& data, const ConstraintMatrix& m) {
    if (!same_alpha(data.alpha, m.alpha()))
        throw Error(ErrorKind::CoefficientMismatch, "compatibility data bound to another coefficient matrix");
    std::vector<Bounds> b(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        const Bounds& src = m[data.perm[i]];
        const Rational& a = data.diag[i];
        if (sgn(a) > 0) b[i] = {src.lower.scaled(a).shifted(data.offset[i]), src.upper.scaled(a).shifted(data.offset[i])};
        else b[i] = {src.upper.scaled(a).shifted(data.offset[i]), src.lower.scaled(a).shifted(data.offset[i])};
    }
    return ConstraintMatrix(m.alpha(), std::move(b));
}

bool commutes_with_optimize(const CompatibilityData& data) {
    return std::all_of(data.diag.begin(), data.diag.end(), [&](const Rational& a) { return a == data.diag.front(); });
}

std::vector<Matrix> group_closure(const std::vector<Matrix>& generators, size_t d, size_t cap) {
    std::vector<Matrix> elements{identity_matrix(d)};
    for (size_t n = 0; n < elements.size(); ++n) {
        for (const auto& g : generators) {
            Matrix p = multiply(g, elements[n]);
            if (std::find(elements.begin(), elements.end(), p) != elements.end()) continue;
            elements.push_back(std::move(p));
            if (elements.size() > cap) throw Error(ErrorKind::GroupNotFinite, "group closure exceeds cap");
        }
    }
    return elements;
}

AlphaPtr build_group_alpha(const std::vector<SymmetryTransform>& generators, const AlphaPtr& alpha0, size_t cap) {
    std::vector<Matrix> linear;
    for (const auto& g : generators) linear.push_back(g.linear);
    Matrix rows;
    for (const auto& g : group_closure(linear, alpha0->dim(), cap)) {
        for (const auto& r : alpha0->matrix()) {
            Vector v = row_times(r, g);
            bool seen = std::any_of(rows.begin(), rows.end(), [&](const Vector& w) { return projective_ratio(v, w).has_value(); });
            if (!seen) rows.push_back(std::move(v));
        }
    }
    if (rows == alpha0->matrix()) return alpha0;
    return make_alpha(std::move(rows));
}

ConstraintMatrix transform_polytope(const SymmetryTransform& sigma, const ConstraintMatrix& m) {
    auto inv = iup::inverse(sigma.linear);
    if (!inv) throw Error(ErrorKind::NotCompatible, "symmetry " + sigma.name + " is not invertible");
    Matrix rows;
    std::vector<Bounds> b;
    for (size_t i = 0; i < m.size(); ++i) {
        Vector r = row_times(m.alpha()->row(i), *inv);
        Rational shift = dot(r, sigma.offset);
        rows.push_back(std::move(r));
        b.push_back({m.lower(i).shifted(shift), m.upper(i).shifted(shift)});
    }
    return ConstraintMatrix(make_alpha(std::move(rows)), std::move(b));
}

ExtRational unit_cube_margin(const ConstraintMatrix& m) {
    ExtRational margin = ExtRational::pos_inf();
    for (size_t j = 0; j < m.dim(); ++j) {
        Vector axis(m.dim());
        axis[j] = 1;
        auto [lo, hi] = direction_range(m, axis);
        margin = std::min(margin, lo);
        margin = std::min(margin, add(ExtRational(1L), -hi));
    }
    return margin;
}

SymmetryTransform torus_branch(const Matrix& linear, const ConstraintMatrix& m, std::string name) {
    Vector w = multiply(linear, interior_point(m));
    Vector n(w.size());
    for (size_t i = 0; i < w.size(); ++i) n[i] = -floor_of(w[i]);
    SymmetryTransform branch{std::move(name), linear, std::move(n)};
    if (unit_cube_margin(transform_polytope(branch, m)) < ExtRational(0L))
        throw Error(ErrorKind::NotCompatible, "polytope straddles a branch boundary of " + branch.name);
    return branch;
}

}  // namespace iup
