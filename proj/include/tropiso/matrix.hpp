#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "tropiso/scalar.hpp"

namespace tropiso {

/// Dense d×m matrix of tropical scalars tagged with its semiring.
/// Row-major; immutable through the public interface except for `at()`.
class TropMatrix {
 public:
  TropMatrix(Semiring semiring, std::size_t rows, std::size_t cols);
  TropMatrix(Semiring semiring, std::vector<std::vector<TropScalar>> grid);

  /// Convenience for finite rational literals, e.g. `{{0, 1}, {1, 0}}`.
  static TropMatrix from_rationals(Semiring semiring,
                                   const std::vector<std::vector<Rational>>& grid);

  /// Tropical identity: 0 on the diagonal, Bottom elsewhere.
  static TropMatrix identity(Semiring semiring, std::size_t d);

  Semiring semiring() const { return semiring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const TropScalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  TropScalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const TropScalar> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::vector<TropScalar> col(std::size_t j) const;

  /// Finite value of an entry; throws BottomEntryError otherwise.
  const Rational& value(std::size_t i, std::size_t j) const { return (*this)(i, j).value(); }

  bool is_finite() const;
  /// Throws BottomEntryError naming `op` when some entry is Bottom.
  void require_finite(const char* op) const;
  void require_square(const char* op) const;

  TropMatrix transposed() const;
  /// Same entries, read in the other semiring (no arithmetic).
  TropMatrix with_semiring(Semiring s) const;
  /// Entrywise negation with the semiring flipped; Bottom stays Bottom.
  TropMatrix negated() const;

  /// Columns picked in the given order.
  TropMatrix select_columns(std::span<const std::size_t> cols) const;
  TropMatrix select_rows(std::span<const std::size_t> rows) const;
  /// Row `i` of the result is row `perm[i]` of this matrix.
  TropMatrix permute_rows(std::span<const std::size_t> perm) const;
  /// Column `j` of the result is column `perm[j]` of this matrix.
  TropMatrix permute_columns(std::span<const std::size_t> perm) const;

  friend bool operator==(const TropMatrix&, const TropMatrix&) = default;

 private:
  Semiring semiring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<TropScalar> data_;
};

/// Tropical distance max_i(v_i - w_i) - min_i(v_i - w_i).
Rational tdist(std::span<const TropScalar> v, std::span<const TropScalar> w);

/// Maximum tropical distance between two rows of a finite square matrix.
Rational tdiam(const TropMatrix& a);

/// C_ij = ⊕_k (A_ik ⊙ B_kj).
TropMatrix trop_mat_mul(const TropMatrix& a, const TropMatrix& b);

/// Entrywise ⊕ of two equally shaped matrices.
TropMatrix trop_mat_add(const TropMatrix& a, const TropMatrix& b);

/// a_ij + row_offsets_i + col_offsets_j.
TropMatrix translate(const TropMatrix& a, std::span<const Rational> row_offsets,
                     std::span<const Rational> col_offsets);

}  // namespace tropiso
