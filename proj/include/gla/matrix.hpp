#pragma once

#include <cstddef>
#include <optional>

#include "gla/fp.hpp"

namespace gla {

// Dense row-major matrix over F_p. Rows usually play the role of vectors
// (spanning sets, images of basis vectors), so kernels are right kernels of
// the row-vector action v |-> v * m unless stated otherwise.
class Matrix {
public:
    Matrix(PrimeField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static Matrix identity(PrimeField field, std::size_t n);
    static Matrix from_rows(PrimeField field, std::size_t cols,
                            const std::vector<Vec>& rows);

    PrimeField field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Scalar at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vec row(std::size_t r) const;
    void set_row(std::size_t r, const Vec& v);
    void append_row(const Vec& v);

    Matrix transpose() const;

    // v * this (v has rows() entries, result has cols() entries).
    Vec apply(const Vec& v) const;
    Matrix multiply(const Matrix& o) const;

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    PrimeField field_;
    std::size_t rows_, cols_;
    Vec data_;
};

// Unique reduced row echelon form; zero rows dropped iff drop_zero_rows.
Matrix rref(const Matrix& m, std::size_t* rank_out = nullptr,
            bool drop_zero_rows = true);

std::vector<std::size_t> pivot_columns(const Matrix& reduced);

// Canonical basis (RREF rows) of {v : v * m = 0}, v of length m.rows().
Matrix left_kernel_basis(const Matrix& m);

// Canonical basis of {w : m * w^T = 0}, w of length m.cols().
Matrix kernel_basis(const Matrix& m);

// Solve v * m = target for v (length m.rows()); nullopt if inconsistent.
std::optional<Vec> solve_left(const Matrix& m, const Vec& target);

Vec vec_add(const PrimeField& f, const Vec& a, const Vec& b);
Vec vec_sub(const PrimeField& f, const Vec& a, const Vec& b);
Vec vec_scale(const PrimeField& f, Scalar k, const Vec& a);
bool vec_is_zero(const Vec& a);

}  // namespace gla
