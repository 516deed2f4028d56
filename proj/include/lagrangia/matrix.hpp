#pragma once

#include <optional>
#include <vector>

#include "lagrangia/field.hpp"

namespace lagrangia {

struct RankKernel;

/// Dense matrix over one field, entries stored row-major as encodings.
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(Field f, size_t rows, size_t cols)
        : f_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    static Matrix identity(Field f, size_t n);

    const Field& field() const { return f_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    uint64_t operator()(size_t r, size_t c) const { return a_[r * cols_ + c]; }
    uint64_t& operator()(size_t r, size_t c) { return a_[r * cols_ + c]; }
    FE get(size_t r, size_t c) const { return FE(f_, (*this)(r, c)); }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix hstack(const Matrix& o) const; // [this | o]
    Matrix submatrix_cols(const std::vector<size_t>& cols) const;
    bool is_zero() const;

    // Auto-dispatches to the bit-packed GF(2) path when q == 2.
    RankKernel rank_kernel() const;
    // Generic elimination regardless of field; the oracle for the fast path.
    RankKernel rank_kernel_generic() const;
    size_t rank() const;

    // One solution of M x = b with free variables set to zero (fixed column
    // order); nullopt when inconsistent.
    std::optional<Matrix> solve(const Matrix& b) const;

    // Row-reduced echelon form; pivot columns appended to *pivots if given.
    Matrix rref(std::vector<size_t>* pivots = nullptr) const;

    // Reduced column echelon basis of the column space (rref of the
    // transpose, transposed back, zero columns dropped).
    Matrix column_space_echelon() const;

  private:
    RankKernel rank_kernel_gf2() const;

    Field f_;
    size_t rows_, cols_;
    std::vector<uint64_t> a_;
};

struct RankKernel {
    size_t rank;
    Matrix kernel; // cols x nullity, reduced column echelon, deterministic
};

} // namespace lagrangia
