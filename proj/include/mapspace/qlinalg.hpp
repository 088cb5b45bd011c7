#pragma once

// Exact rational linear algebra: dense matrices over Q with fraction-free
// elimination. Everything downstream (differentials, derivation complexes,
// quotient tables) reduces to ranks and kernels computed here.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace mapspace {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class RationalMatrix {
public:
  RationalMatrix() : rows_(0), cols_(0) {}
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> init);

  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
  // Columns are supplied as vectors of length `rows`.
  static RationalMatrix from_columns(std::size_t rows,
                                     const std::vector<std::vector<Rational>>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  RationalMatrix transpose() const;

  // Appends the columns of `other` on the right; row counts must agree.
  RationalMatrix hconcat(const RationalMatrix& other) const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

private:
  std::size_t rows_, cols_;
  std::vector<Rational> data_;
};

// Reduced row echelon form together with the pivot column positions.
// Pivoting sweeps columns left to right and takes the topmost usable row,
// so the result is deterministic for a given input.
struct EchelonForm {
  RationalMatrix rref;
  std::vector<std::size_t> pivot_cols;
};

EchelonForm reduced_echelon(const RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);

// Basis of { v : m v = 0 }. One vector per free column, in increasing column
// order; the vector for free column j has entry 1 at j.
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m);

// Dimension of a quotient space given dim of the ambient space and the rank
// of the subspace being divided out. Throws when image_rank > space_dim,
// which signals inconsistent chain data upstream.
std::size_t quotient_dim(std::size_t space_dim, std::size_t image_rank);

}  // namespace mapspace
