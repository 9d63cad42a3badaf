#pragma once

// Exact rational linear algebra. No tolerances anywhere: every comparison is
// an equality of rationals.

#include <carrier/errors.hpp>
#include <carrier/rational.hpp>

#include <optional>
#include <span>
#include <vector>

namespace carrier {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  Vector apply(const Vector& v) const;
  Matrix transpose() const;
  std::size_t rank() const;
  bool is_injective() const { return rank() == cols_; }
  bool is_surjective() const { return rank() == rows_; }

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// A subspace of Q^n kept in reduced row-echelon form. The basis is canonical:
/// two Subspace objects describe the same space iff their bases are equal.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

  static Subspace span(std::size_t ambient, std::span<const Vector> vectors);
  static Subspace whole(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Adds v to the spanning set; returns false if v was already contained.
  bool insert(Vector v);
  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;

  /// Canonical coset representative of v modulo this subspace: the unique
  /// vector v - s (s in the subspace) that vanishes on every pivot column.
  Vector reduce(Vector v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) = default;

 private:
  void check(const Vector& v) const;

  std::size_t ambient_;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
std::size_t quotient_dim(std::size_t ambient, const Subspace& s);

/// Block matrices [a b] and [a; b].
Matrix hstack(const std::vector<Matrix>& blocks, std::size_t rows);
Matrix vstack(const std::vector<Matrix>& blocks, std::size_t cols);

/// Column-space image of a matrix.
Subspace image(const Matrix& a);
/// Basis of {x : a x = 0}, one vector per free column, in column order.
std::vector<Vector> null_space(const Matrix& a);

struct Solution {
  Vector particular;                 // free variables set to zero
  std::vector<Vector> null_basis;
};

/// Solves a x = b exactly. Returns nullopt when the system is inconsistent.
std::optional<Solution> solve(const Matrix& a, const Vector& b);

Vector add(const Vector& a, const Vector& b);
Vector subtract(const Vector& a, const Vector& b);
Vector scale(const Rational& s, const Vector& v);
void axpy(const Rational& s, const Vector& x, Vector& y);

}  // namespace carrier
