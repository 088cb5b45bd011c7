#include "mapspace/qlinalg.hpp"

#include <utility>

namespace mapspace {

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& row : init) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (const auto& x : row) data_.push_back(x);
  }
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  RationalMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged row list");
    for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

RationalMatrix RationalMatrix::from_columns(std::size_t rows,
                                            const std::vector<std::vector<Rational>>& cols) {
  RationalMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("column of wrong length");
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RationalMatrix RationalMatrix::hconcat(const RationalMatrix& other) const {
  if (rows_ != other.rows_) throw std::invalid_argument("hconcat: row count mismatch");
  RationalMatrix m(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j) m.at(i, cols_ + j) = other.at(i, j);
  }
  return m;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  RationalMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

namespace {

struct IntegerEchelon {
  std::vector<std::vector<BigInt>> rows;
  std::vector<std::size_t> pivot_cols;  // pivot of row i sits in column pivot_cols[i]
};

// Fraction-free (Bareiss) forward elimination. Denominators are cleared per
// row first; the one-step division by the previous pivot is exact, which we
// assert rather than assume.
IntegerEchelon integer_echelon(const RationalMatrix& m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  std::vector<std::vector<BigInt>> a(nr, std::vector<BigInt>(nc));
  for (std::size_t i = 0; i < nr; ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < nc; ++j) l = lcm(l, denominator(m.at(i, j)));
    for (std::size_t j = 0; j < nc; ++j)
      a[i][j] = numerator(m.at(i, j)) * (l / denominator(m.at(i, j)));
  }

  IntegerEchelon out;
  BigInt prev = 1;
  std::size_t pr = 0;
  for (std::size_t pc = 0; pc < nc && pr < nr; ++pc) {
    std::size_t sel = pr;
    while (sel < nr && a[sel][pc] == 0) ++sel;
    if (sel == nr) continue;
    std::swap(a[sel], a[pr]);
    for (std::size_t r = pr + 1; r < nr; ++r) {
      for (std::size_t c = pc + 1; c < nc; ++c) {
        BigInt t = a[pr][pc] * a[r][c] - a[r][pc] * a[pr][c];
        BigInt q, rem;
        divide_qr(t, prev, q, rem);
        if (rem != 0) throw std::logic_error("fraction-free elimination: inexact division");
        a[r][c] = std::move(q);
      }
      a[r][pc] = 0;
    }
    prev = a[pr][pc];
    out.pivot_cols.push_back(pc);
    ++pr;
  }
  out.rows = std::move(a);
  return out;
}

}  // namespace

EchelonForm reduced_echelon(const RationalMatrix& m) {
  IntegerEchelon e = integer_echelon(m);
  const std::size_t nr = m.rows(), nc = m.cols();
  RationalMatrix r(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) r.at(i, j) = Rational(e.rows[i][j]);
  for (std::size_t ii = e.pivot_cols.size(); ii-- > 0;) {
    const std::size_t p = e.pivot_cols[ii];
    const Rational pivot = r.at(ii, p);
    for (std::size_t j = p; j < nc; ++j) r.at(ii, j) /= pivot;
    for (std::size_t k = 0; k < ii; ++k) {
      const Rational factor = r.at(k, p);
      if (factor == 0) continue;
      for (std::size_t j = p; j < nc; ++j) r.at(k, j) -= factor * r.at(ii, j);
    }
  }
  return {std::move(r), std::move(e.pivot_cols)};
}

std::size_t rank(const RationalMatrix& m) { return integer_echelon(m).pivot_cols.size(); }

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m) {
  IntegerEchelon e = integer_echelon(m);
  const std::size_t nc = m.cols();
  std::vector<bool> is_pivot(nc, false);
  for (std::size_t p : e.pivot_cols) is_pivot[p] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < nc; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(nc);
    v[f] = 1;
    for (std::size_t ii = e.pivot_cols.size(); ii-- > 0;) {
      const std::size_t p = e.pivot_cols[ii];
      Rational sum = 0;
      for (std::size_t c = p + 1; c < nc; ++c) {
        if (v[c] == 0) continue;
        sum += Rational(e.rows[ii][c]) * v[c];
      }
      v[p] = -sum / Rational(e.rows[ii][p]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t quotient_dim(std::size_t space_dim, std::size_t image_rank) {
  if (image_rank > space_dim)
    throw std::invalid_argument("quotient_dim: image rank exceeds space dimension");
  return space_dim - image_rank;
}

}  // namespace mapspace
