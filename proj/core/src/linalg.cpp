#include "iup/linalg.hpp"

#include "iup/error.hpp"

namespace iup {

std::vector<size_t> rref(Matrix& a, size_t pivot_cols) {
    std::vector<size_t> pivots;
    const size_t rows = a.size();
    size_t r = 0;
    for (size_t c = 0; c < pivot_cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && sgn(a[p][c]) == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Rational inv = 1 / a[r][c];
        for (auto& v : a[r]) v *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(a[i][c]) == 0) continue;
            Rational f = a[i][c];
            for (size_t j = c; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

size_t rank(Matrix a) {
    if (a.empty()) return 0;
    return rref(a, a.front().size()).size();
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
    const size_t n = a.size();
    Matrix aug(n);
    for (size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw Error(ErrorKind::DimensionMismatch, "solve needs a square matrix");
        aug[i] = a[i];
        aug[i].push_back(b[i]);
    }
    if (rref(aug, n).size() < n) return std::nullopt;
    Vector x(n);
    for (size_t i = 0; i < n; ++i) x[i] = aug[i][n];
    return x;
}

std::optional<Matrix> inverse(const Matrix& a) {
    const size_t n = a.size();
    Matrix aug(n);
    for (size_t i = 0; i < n; ++i) {
        aug[i] = a[i];
        for (size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? 1 : 0);
    }
    if (rref(aug, n).size() < n) return std::nullopt;
    Matrix inv(n);
    for (size_t i = 0; i < n; ++i) inv[i].assign(aug[i].begin() + static_cast<long>(n), aug[i].end());
    return inv;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    Matrix out(a.size(), Vector(b.empty() ? 0 : b.front().size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k) {
            if (sgn(a[i][k]) == 0) continue;
            for (size_t j = 0; j < out[i].size(); ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

Vector multiply(const Matrix& a, const Vector& x) {
    Vector out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], x);
    return out;
}

Vector row_times(const Vector& row, const Matrix& a) {
    Vector out(a.empty() ? 0 : a.front().size());
    for (size_t k = 0; k < a.size(); ++k) {
        if (sgn(row[k]) == 0) continue;
        for (size_t j = 0; j < out.size(); ++j) out[j] += row[k] * a[k][j];
    }
    return out;
}

Rational dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot of unequal lengths");
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Matrix identity_matrix(size_t d) {
    Matrix m(d, Vector(d));
    for (size_t i = 0; i < d; ++i) m[i][i] = 1;
    return m;
}

std::optional<Rational> projective_ratio(const Vector& v, const Vector& w) {
    if (v.size() != w.size()) return std::nullopt;
    std::optional<Rational> c;
    for (size_t i = 0; i < v.size(); ++i) {
        bool vz = sgn(v[i]) == 0, wz = sgn(w[i]) == 0;
        if (vz != wz) return std::nullopt;
        if (vz) continue;
        Rational r = v[i] / w[i];
        if (!c) c = r;
        else if (*c != r) return std::nullopt;
    }
    return c;
}

}  // namespace iup
