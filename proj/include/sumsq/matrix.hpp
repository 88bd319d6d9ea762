#pragma once

#include "sumsq/field.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sumsq {

/// Dense row-major matrix over F_q. Only used as scratch for elimination,
/// congruence certificates and rendering; the field is passed explicitly.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Elem> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Elem{0}) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Elem{1};
        return m;
    }

    Elem& operator()(std::size_t i, std::size_t j) noexcept { return data[i * cols + j]; }
    Elem operator()(std::size_t i, std::size_t j) const noexcept { return data[i * cols + j]; }

    bool is_square() const noexcept { return rows == cols; }

    bool is_zero() const noexcept {
        for (Elem e : data)
            if (!e.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;
    friend auto operator<=>(const Matrix&, const Matrix&) = default;
};

inline Matrix transpose(const Matrix& m) {
    Matrix t(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
    return t;
}

inline Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw Error(ErrorCode::LengthMismatch, "matrix product dimension mismatch");
    Matrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            Elem aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols; ++j) out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
        }
    return out;
}

/// P * M * P^T
inline Matrix congruence(const Field& f, const Matrix& p, const Matrix& m) {
    return multiply(f, multiply(f, p, m), transpose(p));
}

/// M[l1,-l2; m1,-m2]: the first l1 and last l2 rows, first m1 and last m2 columns.
inline Matrix submatrix(const Matrix& m, std::size_t l1, std::size_t l2, std::size_t m1, std::size_t m2) {
    if (l1 + l2 > m.rows || m1 + m2 > m.cols) throw Error(ErrorCode::OutOfRange, "submatrix exceeds matrix bounds");
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < l1; ++i) rows.push_back(i);
    for (std::size_t i = m.rows - l2; i < m.rows; ++i) rows.push_back(i);
    for (std::size_t j = 0; j < m1; ++j) cols.push_back(j);
    for (std::size_t j = m.cols - m2; j < m.cols; ++j) cols.push_back(j);
    Matrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
    return out;
}

inline std::size_t rank(const Field& f, Matrix m) {
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols && r < m.rows; ++col) {
        std::size_t pivot = r;
        while (pivot < m.rows && m(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(pivot, j), m(r, j));
        const Elem inv = f.inv(m(r, col));
        for (std::size_t i = r + 1; i < m.rows; ++i) {
            if (m(i, col).is_zero()) continue;
            const Elem factor = f.mul(m(i, col), inv);
            for (std::size_t j = col; j < m.cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        ++r;
    }
    return r;
}

inline bool invertible(const Field& f, const Matrix& m) { return m.is_square() && rank(f, m) == m.rows; }

/// Unique solution of A x = b for invertible square A; nullopt when A is singular.
inline std::optional<std::vector<Elem>> solve(const Field& f, Matrix a, std::vector<Elem> b) {
    const std::size_t n = a.rows;
    if (!a.is_square() || b.size() != n) throw Error(ErrorCode::LengthMismatch, "solve needs square A and |b| = n");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col).is_zero()) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
            std::swap(b[pivot], b[col]);
        }
        const Elem inv = f.inv(a(col, col));
        for (std::size_t j = 0; j < n; ++j) a(col, j) = f.mul(a(col, j), inv);
        b[col] = f.mul(b[col], inv);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col).is_zero()) continue;
            const Elem factor = a(i, col);
            for (std::size_t j = 0; j < n; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(col, j)));
            b[i] = f.sub(b[i], f.mul(factor, b[col]));
        }
    }
    return b;
}

/// v^T M v
inline Elem quadratic_form(const Field& f, const Matrix& m, std::span<const Elem> v) {
    Elem acc = f.zero();
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (v[i].is_zero()) continue;
        Elem row = f.zero();
        for (std::size_t j = 0; j < m.cols; ++j) row = f.add(row, f.mul(m(i, j), v[j]));
        acc = f.add(acc, f.mul(v[i], row));
    }
    return acc;
}

inline std::string to_string(const Field& f, const Matrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows; ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j) s += ',';
            s += f.to_string(m(i, j));
        }
        s += ']';
    }
    return s + "]";
}

}  // namespace sumsq
