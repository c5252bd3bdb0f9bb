#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncdef/scalar.hpp"

namespace ncdef {

using Vector = std::vector<Scalar>;

Vector zero_vector(std::size_t n, const Field& f);
bool is_zero(std::span<const Scalar> v);
/// y += c * x
void axpy(Vector& y, const Scalar& c, std::span<const Scalar> x);

/// Dense row-major matrix over a single field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Field& field);
  static Matrix identity(std::size_t n, const Field& field);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols, const Field& field);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vector row_vector(std::size_t r) const;
  const Vector& data() const { return data_; }

  bool is_zero() const;
  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  void append_row(std::span<const Scalar> r);
  std::string str() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Scalar& c);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& c) { return a *= c; }
  friend Matrix operator*(const Scalar& c, Matrix a) { return a *= c; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_;
  Vector data_;
};

/// Row vector times matrix.
Vector operator*(std::span<const Scalar> v, const Matrix& m);

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form with the leftmost-pivot rule.
RrefResult rref(Matrix m);
std::size_t rank(const Matrix& m);

class NotASubspace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A subspace of k^n stored by its RREF basis (rows).
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim, const Field& field);
  /// Span of the given rows.
  static Subspace span(const Matrix& rows);
  static Subspace span(const std::vector<Vector>& rows, std::size_t ambient_dim, const Field& field);
  static Subspace full(std::size_t ambient_dim, const Field& field);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const Field& field() const { return basis_.field(); }

  /// Subtracts the basis components at pivot positions.
  Vector residual(std::span<const Scalar> v) const;
  bool contains(std::span<const Scalar> v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates in the RREF basis, or nullopt when v is outside.
  std::optional<Vector> coordinates(std::span<const Scalar> v) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Solutions x of m * x = 0 (column vectors), returned as a subspace of k^cols.
Subspace kernel(const Matrix& m);

/// Some x with a * x = b; free variables of the RREF parametrization are 0.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

struct QuotientBasis {
  Subspace sub;
  Matrix complement;  // rows; RREF, pivots disjoint from sub's pivots
  /// Splits v (which must lie in the ambient space) into the sub-part and the
  /// coordinates of its complement part.
  std::pair<Vector, Vector> project(std::span<const Scalar> v) const;
};

/// Complement of sub inside ambient chosen by the leftmost-pivot rule.
/// Throws NotASubspace when sub is not contained in ambient.
QuotientBasis quotient_basis(const Subspace& sub, const Subspace& ambient);

/// Incrementally built span of tagged generator vectors. Answers "is v in the
/// span, and with which coefficients on the generators" without refactoring.
/// Generators that are dependent on earlier ones never receive a coefficient,
/// so the order of insertion encodes the preference among solutions.
class SpanSolver {
 public:
  SpanSolver() = default;
  SpanSolver(std::size_t length, const Field& field) : length_(length), field_(field) {}

  std::size_t length() const { return length_; }
  std::size_t generator_count() const { return generators_; }
  std::size_t rank() const { return basis_.size(); }

  /// Adds a generator and returns whether it enlarged the span.
  bool add(std::span<const Scalar> v);
  /// Coefficients c (one per generator) with sum c_g * gen_g = v.
  std::optional<Vector> express(std::span<const Scalar> v) const;
  /// Residual of v after reduction by the span (zero iff v is in the span).
  Vector residual(std::span<const Scalar> v) const;

 private:
  struct Entry {
    std::size_t lead;
    Vector vec;    // vec[lead] == 1, zero before lead
    Vector combo;  // in terms of generators
  };
  std::size_t length_ = 0;
  Field field_;
  std::size_t generators_ = 0;
  std::vector<Entry> basis_;
  std::vector<std::ptrdiff_t> by_lead_;  // position -> basis index or -1
};

}  // namespace ncdef
