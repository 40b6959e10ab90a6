#include "tropiso/matrix.hpp"

#include <algorithm>
#include <string>

#include "tropiso/errors.hpp"

namespace tropiso {

TropMatrix::TropMatrix(Semiring semiring, std::size_t rows, std::size_t cols)
    : semiring_(semiring), rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
}

TropMatrix::TropMatrix(Semiring semiring, std::vector<std::vector<TropScalar>> grid)
    : semiring_(semiring), rows_(grid.size()), cols_(grid.empty() ? 0 : grid.front().size()) {
  if (rows_ == 0 || cols_ == 0) throw DimensionError("matrix dimensions must be positive");
  data_.reserve(rows_ * cols_);
  for (auto& r : grid) {
    if (r.size() != cols_) throw DimensionError("ragged matrix rows");
    for (auto& x : r) data_.push_back(std::move(x));
  }
}

TropMatrix TropMatrix::from_rationals(Semiring semiring,
                                      const std::vector<std::vector<Rational>>& grid) {
  std::vector<std::vector<TropScalar>> g;
  g.reserve(grid.size());
  for (const auto& r : grid) g.emplace_back(r.begin(), r.end());
  return TropMatrix(semiring, std::move(g));
}

TropMatrix TropMatrix::identity(Semiring semiring, std::size_t d) {
  TropMatrix m(semiring, d, d);
  for (std::size_t i = 0; i < d; ++i) m.at(i, i) = TropScalar(0);
  return m;
}

std::vector<TropScalar> TropMatrix::col(std::size_t j) const {
  std::vector<TropScalar> c;
  c.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
  return c;
}

bool TropMatrix::is_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const TropScalar& x) { return x.is_finite(); });
}

void TropMatrix::require_finite(const char* op) const {
  if (!is_finite()) throw BottomEntryError(std::string(op) + " requires a matrix with finite entries");
}

void TropMatrix::require_square(const char* op) const {
  if (!is_square())
    throw DimensionError(std::string(op) + " requires a square matrix, got " + std::to_string(rows_) +
                         "x" + std::to_string(cols_));
}

TropMatrix TropMatrix::transposed() const {
  TropMatrix t(semiring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = (*this)(i, j);
  return t;
}

TropMatrix TropMatrix::with_semiring(Semiring s) const {
  TropMatrix t = *this;
  t.semiring_ = s;
  return t;
}

TropMatrix TropMatrix::negated() const {
  TropMatrix t(opposite(semiring_), rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (data_[k].is_finite()) t.data_[k] = TropScalar(Rational(-data_[k].value()));
  return t;
}

TropMatrix TropMatrix::select_columns(std::span<const std::size_t> cols) const {
  TropMatrix t(semiring_, rows_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= cols_) throw DimensionError("column index out of range");
    for (std::size_t i = 0; i < rows_; ++i) t.at(i, j) = (*this)(i, cols[j]);
  }
  return t;
}

TropMatrix TropMatrix::select_rows(std::span<const std::size_t> rows) const {
  TropMatrix t(semiring_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= rows_) throw DimensionError("row index out of range");
    for (std::size_t j = 0; j < cols_; ++j) t.at(i, j) = (*this)(rows[i], j);
  }
  return t;
}

TropMatrix TropMatrix::permute_rows(std::span<const std::size_t> perm) const {
  if (perm.size() != rows_) throw DimensionError("row permutation has wrong length");
  return select_rows(perm);
}

TropMatrix TropMatrix::permute_columns(std::span<const std::size_t> perm) const {
  if (perm.size() != cols_) throw DimensionError("column permutation has wrong length");
  return select_columns(perm);
}

Rational tdist(std::span<const TropScalar> v, std::span<const TropScalar> w) {
  if (v.size() != w.size())
    throw DimensionError("tdist: vectors of length " + std::to_string(v.size()) + " and " +
                         std::to_string(w.size()));
  if (v.empty()) throw DimensionError("tdist: empty vectors");
  Rational hi = v[0].value() - w[0].value();
  Rational lo = hi;
  for (std::size_t i = 1; i < v.size(); ++i) {
    Rational diff = v[i].value() - w[i].value();
    if (diff > hi) hi = diff;
    if (diff < lo) lo = diff;
  }
  return hi - lo;
}

Rational tdiam(const TropMatrix& a) {
  a.require_square("tdiam");
  a.require_finite("tdiam");
  Rational best = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.rows(); ++j) {
      Rational d = tdist(a.row(i), a.row(j));
      if (d > best) best = d;
    }
  return best;
}

TropMatrix trop_mat_mul(const TropMatrix& a, const TropMatrix& b) {
  if (a.semiring() != b.semiring()) throw SemiringMismatchError("trop_mat_mul: operands use different semirings");
  if (a.cols() != b.rows())
    throw DimensionError("trop_mat_mul: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
  const Semiring s = a.semiring();
  TropMatrix c(s, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      TropScalar acc;
      for (std::size_t k = 0; k < a.cols(); ++k) acc = trop_add(s, acc, trop_mul(a(i, k), b(k, j)));
      c.at(i, j) = std::move(acc);
    }
  return c;
}

TropMatrix trop_mat_add(const TropMatrix& a, const TropMatrix& b) {
  if (a.semiring() != b.semiring()) throw SemiringMismatchError("trop_mat_add: operands use different semirings");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("trop_mat_add: shape mismatch");
  TropMatrix c(a.semiring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = trop_add(a.semiring(), a(i, j), b(i, j));
  return c;
}

TropMatrix translate(const TropMatrix& a, std::span<const Rational> row_offsets,
                     std::span<const Rational> col_offsets) {
  if (row_offsets.size() != a.rows() || col_offsets.size() != a.cols())
    throw DimensionError("translate: offset vectors do not match the matrix shape");
  TropMatrix t = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j).is_finite()) t.at(i, j) = TropScalar(Rational(a.value(i, j) + row_offsets[i] + col_offsets[j]));
  return t;
}

}  // namespace tropiso
