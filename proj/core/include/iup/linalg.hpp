#pragma once

#include "iup/rational.hpp"

#include <optional>

namespace iup {

// Reduced row echelon form in place. Returns the pivot column of each pivot row.
// Only the first `pivot_cols` columns are eligible as pivots.
std::vector<size_t> rref(Matrix& a, size_t pivot_cols);

size_t rank(Matrix a);

// Solves the square system a x = b; nullopt if singular.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

std::optional<Matrix> inverse(const Matrix& a);

Matrix multiply(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, const Vector& x);
// Row vector times matrix.
Vector row_times(const Vector& row, const Matrix& a);
Rational dot(const Vector& a, const Vector& b);
Matrix identity_matrix(size_t d);

// If v = c * w for some nonzero c, returns c.
std::optional<Rational> projective_ratio(const Vector& v, const Vector& w);

}  // namespace iup
