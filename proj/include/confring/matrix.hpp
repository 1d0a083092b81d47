#pragma once

#include <cstddef>
#include <vector>

#include "confring/scalar.hpp"

namespace confring {

// Dense matrix over one coefficient mode (Q or F_p), row-major.  All the
// rank/kernel computations here are exact; no floating point anywhere.
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0), p_(0) {}
    Matrix(std::size_t rows, std::size_t cols, std::uint32_t prime = 0)
        : rows_(rows), cols_(cols), p_(prime),
          e_(rows * cols, Scalar::zero(prime)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t prime() const { return p_; }

    Scalar& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const {
        return e_[r * cols_ + c];
    }
    void set(std::size_t r, std::size_t c, const Scalar& v);

    static Matrix identity(std::size_t n, std::uint32_t prime = 0);

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    bool operator==(const Matrix& o) const;
    bool is_zero() const;

    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

    // Vertically stack onto this matrix (same column count).
    void append_rows(const Matrix& o);

  private:
    std::size_t rows_, cols_;
    std::uint32_t p_;
    std::vector<Scalar> e_;
};

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank;
};

// Gauss-Jordan over the exact scalars; pivots normalized to 1, pivot
// columns cleared above and below.
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

// Basis of the right null space {v : m v = 0}.  One vector per free
// column, with a 1 in that column (standard rref back-substitution), so
// the result is deterministic for a given input.
std::vector<std::vector<Scalar>> kernel_basis(const Matrix& m);

}  // namespace confring
