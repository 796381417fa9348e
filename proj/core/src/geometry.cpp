#include "iup/geometry.hpp"

#include "iup/error.hpp"
#include "iup/linalg.hpp"

#include <algorithm>

namespace iup {

namespace {

// Calls f(subset) for every size-s subset of {0..e-1} in lexicographic order.
template <class F>
void for_each_subset(size_t e, size_t s, F&& f) {
    std::vector<size_t> idx(s);
    for (size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
        f(idx);
        size_t i = s;
        while (i > 0 && idx[i - 1] == e - s + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
}

ExtRational lower_sum(const LambdaVector& lambda, const std::vector<Bounds>& b) {
    Rational s = 0;
    for (const auto& t : lambda) {
        const ExtRational& v = sgn(t.coef) > 0 ? b[t.k].lower : b[t.k].upper;
        if (!v.is_finite()) return ExtRational::neg_inf();
        s += t.coef * v.value();
    }
    return ExtRational(s);
}

ExtRational upper_sum(const LambdaVector& lambda, const std::vector<Bounds>& b) {
    Rational s = 0;
    for (const auto& t : lambda) {
        const ExtRational& v = sgn(t.coef) > 0 ? b[t.k].upper : b[t.k].lower;
        if (!v.is_finite()) return ExtRational::pos_inf();
        s += t.coef * v.value();
    }
    return ExtRational(s);
}

void require_same_alpha(const ConstraintMatrix& a, const ConstraintMatrix& b) {
    if (!same_alpha(a.alpha(), b.alpha()))
        throw Error(ErrorKind::CoefficientMismatch, "constraint matrices use different coefficient matrices");
}

ExtRational difference(const ExtRational& a, const ExtRational& b) { return add(a, -b); }

}  // namespace

CoefficientMatrix::CoefficientMatrix(Matrix rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw Error(ErrorKind::DimensionMismatch, "coefficient matrix without rows");
    dim_ = rows_.front().size();
    const size_t e = rows_.size();
    if (dim_ == 0) throw Error(ErrorKind::DimensionMismatch, "zero-dimensional rows");
    for (const auto& r : rows_) {
        if (r.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "rows of unequal length");
        if (std::all_of(r.begin(), r.end(), [](const Rational& v) { return sgn(v) == 0; }))
            throw Error(ErrorKind::DegenerateMatrix, "zero row");
    }
    if (e < dim_) throw Error(ErrorKind::DimensionMismatch, "fewer rows than dimensions");
    for (size_t i = 0; i < e; ++i)
        for (size_t j = i + 1; j < e; ++j)
            if (projective_ratio(rows_[i], rows_[j]))
                throw Error(ErrorKind::DegenerateMatrix,
                            "rows " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are projectively equal");

    // Solve lambda_S^T alpha_S = alpha_i for every subset S with |S| <= d, all i at once.
    lambda_.assign(e, {});
    for (size_t s = 1; s <= dim_; ++s) {
        for_each_subset(e, s, [&](const std::vector<size_t>& subset) {
            Matrix aug(dim_, Vector(s + e));
            for (size_t r = 0; r < dim_; ++r) {
                for (size_t j = 0; j < s; ++j) aug[r][j] = rows_[subset[j]][r];
                for (size_t i = 0; i < e; ++i) aug[r][s + i] = rows_[i][r];
            }
            if (rref(aug, s).size() < s) return;
            for (size_t i = 0; i < e; ++i) {
                bool consistent = true;
                for (size_t r = s; r < dim_ && consistent; ++r) consistent = sgn(aug[r][s + i]) == 0;
                if (!consistent) continue;
                LambdaVector lam;
                lam.reserve(s);
                for (size_t j = 0; j < s; ++j) {
                    if (sgn(aug[j][s + i]) == 0) break;
                    lam.push_back({subset[j], aug[j][s + i]});
                }
                // A zero coefficient means a smaller subset already produced this vector.
                if (lam.size() == s) lambda_[i].push_back(std::move(lam));
            }
        });
    }
}

std::optional<std::pair<size_t, Rational>> CoefficientMatrix::find_row(const Vector& v) const {
    for (size_t j = 0; j < rows_.size(); ++j)
        if (auto c = projective_ratio(v, rows_[j])) return std::make_pair(j, *c);
    return std::nullopt;
}

AlphaPtr make_alpha(Matrix rows) { return std::make_shared<const CoefficientMatrix>(std::move(rows)); }

AlphaPtr merge_alphas(const AlphaPtr& a, const AlphaPtr& b) {
    if (a->dim() != b->dim()) throw Error(ErrorKind::DimensionMismatch, "merging coefficient matrices of different dimension");
    Matrix rows = a->matrix();
    for (const auto& r : b->matrix())
        if (!a->find_row(r)) rows.push_back(r);
    if (rows.size() == a->rows()) return a;
    return make_alpha(std::move(rows));
}

bool same_alpha(const AlphaPtr& a, const AlphaPtr& b) { return a == b || *a == *b; }

ConstraintMatrix::ConstraintMatrix(AlphaPtr alpha, std::vector<Bounds> bounds)
    : alpha_(std::move(alpha)), bounds_(std::move(bounds)) {
    if (bounds_.size() != alpha_->rows())
        throw Error(ErrorKind::DimensionMismatch, "constraint matrix length differs from coefficient rows");
    for (const auto& b : bounds_)
        if (b.lower.is_pos_inf() || b.upper.is_neg_inf())
            throw Error(ErrorKind::DimensionMismatch, "lower bound +inf or upper bound -inf");
}

ConstraintMatrix ConstraintMatrix::unbounded(AlphaPtr alpha) {
    std::vector<Bounds> b(alpha->rows());
    return ConstraintMatrix(std::move(alpha), std::move(b));
}

bool ConstraintMatrix::all_finite() const {
    return std::all_of(bounds_.begin(), bounds_.end(),
                       [](const Bounds& b) { return b.lower.is_finite() && b.upper.is_finite(); });
}

bool operator==(const ConstraintMatrix& a, const ConstraintMatrix& b) {
    return same_alpha(a.alpha_, b.alpha_) && a.bounds_ == b.bounds_;
}

ConstraintMatrix optimize(const ConstraintMatrix& m) {
    const auto& alpha = *m.alpha();
    std::vector<Bounds> out(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        ExtRational lo = ExtRational::neg_inf(), hi = ExtRational::pos_inf();
        for (const auto& lam : alpha.lambda(i)) {
            lo = std::max(lo, lower_sum(lam, m.bounds()));
            hi = std::min(hi, upper_sum(lam, m.bounds()));
        }
        out[i] = {lo, hi};
    }
    return ConstraintMatrix(m.alpha(), std::move(out));
}

bool is_empty(const ConstraintMatrix& m) {
    for (const auto& b : m.bounds())
        if (b.lower >= b.upper) return true;
    ConstraintMatrix o = optimize(m);
    for (const auto& b : o.bounds())
        if (b.lower >= b.upper) return true;
    return false;
}

std::vector<FaceActivity> active_faces(const ConstraintMatrix& m) {
    if (is_empty(m)) throw Error(ErrorKind::EmptyPolytope, "active_faces of an empty polytope");
    ConstraintMatrix o = optimize(m);
    std::vector<FaceActivity> out(o.size());
    for (size_t i = 0; i < o.size(); ++i) {
        const auto& lambdas = o.alpha()->lambda(i);
        ExtRational lo = ExtRational::neg_inf(), hi = ExtRational::pos_inf();
        for (size_t n = 1; n < lambdas.size(); ++n) {
            lo = std::max(lo, lower_sum(lambdas[n], o.bounds()));
            hi = std::min(hi, upper_sum(lambdas[n], o.bounds()));
        }
        out[i] = {lo < o.lower(i), hi > o.upper(i)};
    }
    return out;
}

ConstraintMatrix intersect(const ConstraintMatrix& m, const ConstraintMatrix& m2) {
    require_same_alpha(m, m2);
    std::vector<Bounds> b(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        b[i] = {std::max(m.lower(i), m2.lower(i)), std::min(m.upper(i), m2.upper(i))};
    return optimize(ConstraintMatrix(m.alpha(), std::move(b)));
}

bool includes(const ConstraintMatrix& m, const ConstraintMatrix& m2) {
    require_same_alpha(m, m2);
    ConstraintMatrix o = optimize(m);
    for (size_t i = 0; i < o.size(); ++i)
        if (o.lower(i) < m2.lower(i) || o.upper(i) > m2.upper(i)) return false;
    return true;
}

bool equal_polytopes(const ConstraintMatrix& m, const ConstraintMatrix& m2) {
    require_same_alpha(m, m2);
    return optimize(m).bounds() == optimize(m2).bounds();
}

ConstraintMatrix affine_image(const ConstraintMatrix& m, const Rational& a, const Vector& shift) {
    if (sgn(a) <= 0) throw Error(ErrorKind::NonPositiveScale, "affine_image needs a > 0");
    if (shift.size() != m.dim()) throw Error(ErrorKind::DimensionMismatch, "shift length differs from dimension");
    ConstraintMatrix o = optimize(m);
    std::vector<Bounds> b(o.size());
    for (size_t i = 0; i < o.size(); ++i) {
        Rational t = dot(o.alpha()->row(i), shift);
        b[i] = {o.lower(i).scaled(a).shifted(t), o.upper(i).scaled(a).shifted(t)};
    }
    return ConstraintMatrix(o.alpha(), std::move(b));
}

bool contains_point(const ConstraintMatrix& m, const Vector& x) {
    if (x.size() != m.dim()) throw Error(ErrorKind::DimensionMismatch, "point dimension differs");
    for (size_t i = 0; i < m.size(); ++i) {
        ExtRational v(dot(m.alpha()->row(i), x));
        if (!(m.lower(i) < v && v < m.upper(i))) return false;
    }
    return true;
}

ConstraintMatrix embed(const ConstraintMatrix& m, const AlphaPtr& target) {
    if (same_alpha(m.alpha(), target)) return ConstraintMatrix(target, m.bounds());
    if (target->dim() != m.dim()) throw Error(ErrorKind::DimensionMismatch, "embedding across dimensions");
    std::vector<Bounds> b(target->rows());
    for (size_t t = 0; t < target->rows(); ++t) {
        auto hit = m.alpha()->find_row(target->row(t));
        if (!hit) continue;
        const auto& [j, c] = *hit;
        if (sgn(c) > 0) b[t] = {m.lower(j).scaled(c), m.upper(j).scaled(c)};
        else b[t] = {m.upper(j).scaled(c), m.lower(j).scaled(c)};
    }
    return ConstraintMatrix(target, std::move(b));
}

std::pair<ExtRational, ExtRational> direction_range(const ConstraintMatrix& m, const Vector& v) {
    if (is_empty(m)) throw Error(ErrorKind::EmptyPolytope, "direction_range of an empty polytope");
    if (auto hit = m.alpha()->find_row(v)) {
        ConstraintMatrix o = optimize(m);
        const auto& [j, c] = *hit;
        if (sgn(c) > 0) return {o.lower(j).scaled(c), o.upper(j).scaled(c)};
        return {o.upper(j).scaled(c), o.lower(j).scaled(c)};
    }
    Matrix rows = m.alpha()->matrix();
    rows.push_back(v);
    ConstraintMatrix o = optimize(embed(m, make_alpha(std::move(rows))));
    return {o.lower(o.size() - 1), o.upper(o.size() - 1)};
}

Vector interior_point(const ConstraintMatrix& m) {
    if (is_empty(m)) throw Error(ErrorKind::EmptyPolytope, "interior_point of an empty polytope");
    ConstraintMatrix o = optimize(m);
    if (!o.all_finite()) throw Error(ErrorKind::UnboundedResult, "interior_point needs a bounded polytope");
    const size_t d = o.dim();
    const Matrix& rows = o.alpha()->matrix();

    // Fix alpha_0 . x at the midpoint of its exact range and eliminate one variable.
    Rational c = (o.lower(0).value() + o.upper(0).value()) / 2;
    if (d == 1) return {c / rows[0][0]};
    size_t pivot = 0;
    while (sgn(rows[0][pivot]) == 0) ++pivot;
    const Rational& p = rows[0][pivot];

    Matrix reduced;
    std::vector<Bounds> bounds;
    for (size_t i = 1; i < rows.size(); ++i) {
        Vector r;
        for (size_t l = 0; l < d; ++l)
            if (l != pivot) r.push_back(rows[i][l] - rows[i][pivot] * rows[0][l] / p);
        Rational shift = rows[i][pivot] * c / p;
        Bounds b{o.lower(i).shifted(-shift), o.upper(i).shifted(-shift)};
        if (std::all_of(r.begin(), r.end(), [](const Rational& v) { return sgn(v) == 0; })) continue;
        bool merged = false;
        for (size_t k = 0; k < reduced.size() && !merged; ++k) {
            auto t = projective_ratio(r, reduced[k]);
            if (!t) continue;
            // r = t * reduced[k], so lower < t y < upper.
            Rational inv = 1 / *t;
            Bounds scaled = sgn(inv) > 0 ? Bounds{b.lower.scaled(inv), b.upper.scaled(inv)}
                                         : Bounds{b.upper.scaled(inv), b.lower.scaled(inv)};
            bounds[k].lower = std::max(bounds[k].lower, scaled.lower);
            bounds[k].upper = std::min(bounds[k].upper, scaled.upper);
            merged = true;
        }
        if (!merged) {
            reduced.push_back(std::move(r));
            bounds.push_back(b);
        }
    }
    if (reduced.size() < d - 1) throw Error(ErrorKind::UnboundedResult, "slice is unbounded");
    Vector y = interior_point(ConstraintMatrix(make_alpha(std::move(reduced)), std::move(bounds)));

    Vector x(d);
    Rational rest = c;
    for (size_t l = 0, k = 0; l < d; ++l) {
        if (l == pivot) continue;
        x[l] = y[k++];
        rest -= rows[0][l] * x[l];
    }
    x[pivot] = rest / p;
    return x;
}

ExtRational inclusion_margin(const ConstraintMatrix& inner, const ConstraintMatrix& outer) {
    require_same_alpha(inner, outer);
    ConstraintMatrix o = optimize(inner);
    ExtRational margin = ExtRational::pos_inf();
    for (size_t i = 0; i < o.size(); ++i) {
        if (!outer.lower(i).is_neg_inf())
            margin = std::min(margin, o.lower(i).is_finite() ? difference(o.lower(i), outer.lower(i)) : ExtRational::neg_inf());
        if (!outer.upper(i).is_pos_inf())
            margin = std::min(margin, o.upper(i).is_finite() ? difference(outer.upper(i), o.upper(i)) : ExtRational::neg_inf());
    }
    return margin;
}

ExtRational nonempty_margin(const ConstraintMatrix& m) {
    ConstraintMatrix o = optimize(m);
    ExtRational margin = ExtRational::pos_inf();
    for (size_t i = 0; i < o.size(); ++i)
        if (o.lower(i).is_finite() && o.upper(i).is_finite())
            margin = std::min(margin, difference(o.upper(i), o.lower(i)));
    return margin;
}

ExtRational max_difference(const ConstraintMatrix& m, const ConstraintMatrix& m2) {
    require_same_alpha(m, m2);
    ConstraintMatrix a = optimize(m), b = optimize(m2);
    ExtRational worst(0L);
    auto consider = [&](const ExtRational& x, const ExtRational& y) {
        if (x == y) return;
        if (!x.is_finite() || !y.is_finite()) {
            worst = ExtRational::pos_inf();
            return;
        }
        worst = std::max(worst, ExtRational(Rational(abs(x.value() - y.value()))));
    };
    for (size_t i = 0; i < a.size(); ++i) {
        consider(a.lower(i), b.lower(i));
        consider(a.upper(i), b.upper(i));
    }
    return worst;
}

}  // namespace iup
