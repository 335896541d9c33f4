#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "wmlab/rational.hpp"

namespace wmlab {

// Dense matrix over the exact rationals. Everything downstream (subspaces,
// graded modules, the E1 machinery) reduces to operations on these.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    // Row-major integer literals, for tests and generators.
    static Matrix from_rows(std::initializer_list<std::initializer_list<long>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    bool operator==(const Matrix& other) const;
    bool is_zero() const;

    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator-() const;
    Matrix scaled(const Rational& c) const;

    Matrix pow(std::size_t e) const;  // square matrices only

    std::vector<Rational> apply(const std::vector<Rational>& v) const;

    Matrix column(std::size_t c) const;
    Matrix columns(const std::vector<std::size_t>& idx) const;
    // [this | rhs] side by side; row counts must agree.
    Matrix hcat(const Matrix& rhs) const;
    // this on top of rhs; column counts must agree.
    Matrix vcat(const Matrix& rhs) const;

    Rational trace() const;

    std::string str() const;  // for diagnostics

private:
    std::size_t rows_, cols_;
    std::vector<Rational> data_;
};

struct RrefResult {
    Matrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

// Gauss-Jordan over Q; exact, no pivthresholds.
RrefResult rref(const Matrix& m);

// Basis of { v : m v = 0 } as columns; dim kernel = cols - rank.
Matrix kernel_matrix(const Matrix& m);

std::size_t rank(const Matrix& m);

// Solves a X = b columnwise. Throws std::domain_error if inconsistent.
Matrix solve(const Matrix& a, const Matrix& b);

// Inverse of a square invertible matrix; throws std::domain_error if singular.
Matrix inverse(const Matrix& m);

}  // namespace wmlab
