#pragma once

#include "iup/rational.hpp"

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace iup {

struct LambdaTerm {
    size_t k;
    Rational coef;
};
// Sparse e-vector: only nonzero entries, sorted by k.
using LambdaVector = std::vector<LambdaTerm>;

// The e x d matrix alpha of half-space directions, with its Lambda_i catalogs.
class CoefficientMatrix {
public:
    explicit CoefficientMatrix(Matrix rows);

    size_t rows() const { return rows_.size(); }
    size_t dim() const { return dim_; }
    const Vector& row(size_t i) const { return rows_[i]; }
    const Matrix& matrix() const { return rows_; }

    // Lambda_i; the first entry is always the canonical vector.
    const std::vector<LambdaVector>& lambda(size_t i) const { return lambda_[i]; }

    // Finds j and c != 0 with v = c * row(j).
    std::optional<std::pair<size_t, Rational>> find_row(const Vector& v) const;

    friend bool operator==(const CoefficientMatrix& a, const CoefficientMatrix& b) { return a.rows_ == b.rows_; }

private:
    Matrix rows_;
    size_t dim_ = 0;
    std::vector<std::vector<LambdaVector>> lambda_;
};

using AlphaPtr = std::shared_ptr<const CoefficientMatrix>;

AlphaPtr make_alpha(Matrix rows);
// Rows of `a` followed by the rows of `b` not projectively present in `a`.
AlphaPtr merge_alphas(const AlphaPtr& a, const AlphaPtr& b);

struct Bounds {
    ExtRational lower = ExtRational::neg_inf();
    ExtRational upper = ExtRational::pos_inf();

    friend bool operator==(const Bounds&, const Bounds&) = default;
};

// The open polytope {x : lower_i < (alpha x)_i < upper_i}.
class ConstraintMatrix {
public:
    ConstraintMatrix(AlphaPtr alpha, std::vector<Bounds> bounds);
    static ConstraintMatrix unbounded(AlphaPtr alpha);

    const AlphaPtr& alpha() const { return alpha_; }
    size_t size() const { return bounds_.size(); }
    size_t dim() const { return alpha_->dim(); }
    const Bounds& operator[](size_t i) const { return bounds_[i]; }
    const ExtRational& lower(size_t i) const { return bounds_[i].lower; }
    const ExtRational& upper(size_t i) const { return bounds_[i].upper; }
    const std::vector<Bounds>& bounds() const { return bounds_; }
    bool all_finite() const;

    // Same coefficient matrix and identical bounds.
    friend bool operator==(const ConstraintMatrix& a, const ConstraintMatrix& b);

private:
    AlphaPtr alpha_;
    std::vector<Bounds> bounds_;
};

bool same_alpha(const AlphaPtr& a, const AlphaPtr& b);

ConstraintMatrix optimize(const ConstraintMatrix& m);
bool is_empty(const ConstraintMatrix& m);

struct FaceActivity {
    bool lower = false;
    bool upper = false;
};
std::vector<FaceActivity> active_faces(const ConstraintMatrix& m);

ConstraintMatrix intersect(const ConstraintMatrix& m, const ConstraintMatrix& m2);
bool includes(const ConstraintMatrix& m, const ConstraintMatrix& m2);
bool equal_polytopes(const ConstraintMatrix& m, const ConstraintMatrix& m2);
// a * O(m) + alpha * shift.
ConstraintMatrix affine_image(const ConstraintMatrix& m, const Rational& a, const Vector& shift);
bool contains_point(const ConstraintMatrix& m, const Vector& x);

// Re-expresses m over `target`: rows projectively present in m's alpha carry over
// (rescaled), other rows are unbounded. Not optimized.
ConstraintMatrix embed(const ConstraintMatrix& m, const AlphaPtr& target);

// Exact inf and sup of v.x over the closure of a nonempty polytope.
std::pair<ExtRational, ExtRational> direction_range(const ConstraintMatrix& m, const Vector& v);

// An exact point strictly inside a nonempty bounded polytope.
Vector interior_point(const ConstraintMatrix& m);

// Minimal slack of O(inner) inside outer; negative when inclusion fails.
ExtRational inclusion_margin(const ConstraintMatrix& inner, const ConstraintMatrix& outer);
// Minimal width upper - lower of O(m); positive iff nonempty.
ExtRational nonempty_margin(const ConstraintMatrix& m);
// Largest absolute entrywise difference of the optimized matrices.
ExtRational max_difference(const ConstraintMatrix& m, const ConstraintMatrix& m2);

}  // namespace iup
