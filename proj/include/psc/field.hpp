#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace psc {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an input object fails structural validation. Carries every
/// violation found, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// The prime field F_p, 2 <= p < 2^31.
class PrimeField {
 public:
  explicit PrimeField(std::int64_t p = 2);

  std::int64_t modulus() const { return p_; }

  std::int64_t reduce(std::int64_t x) const {
    x %= p_;
    return x < 0 ? x + p_ : x;
  }
  std::int64_t add(std::int64_t a, std::int64_t b) const { return (a + b) % p_; }
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return (a - b + p_) % p_; }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return (a * b) % p_; }
  std::int64_t neg(std::int64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::int64_t inv(std::int64_t a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::int64_t p_;
};

bool is_prime(std::int64_t n);

/// Dense matrices over F_p. Entries are kept in [0, p); every function below
/// that takes a field returns normalized entries.
using Matrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

Matrix normalized(const PrimeField& field, const Matrix& m);
Matrix multiply(const PrimeField& field, const Matrix& a, const Matrix& b);
Matrix add(const PrimeField& field, const Matrix& a, const Matrix& b);
Matrix scaled(const PrimeField& field, const Matrix& m, std::int64_t s);
Matrix identity(Eigen::Index n);
Matrix zeros(Eigen::Index rows, Eigen::Index cols);
bool is_zero(const Matrix& m);
bool same_matrix(const Matrix& a, const Matrix& b);

/// Left-to-right column reduction R = M * V with lowest-nonzero-row pivots.
///
/// V is unit upper triangular. Columns of R are either zero or have pairwise
/// distinct pivot rows, so the nonzero columns of R span the image of M and
/// the columns of V at zero positions of R span its kernel. The reduction is
/// deterministic: a column is only ever reduced by columns to its left.
class ColumnReduction {
 public:
  ColumnReduction(const PrimeField& field, const Matrix& m);

  const PrimeField& field() const { return field_; }
  const Matrix& reduced() const { return reduced_; }
  const Matrix& transform() const { return transform_; }
  std::size_t rank() const { return rank_; }

  /// Pivot row of column j, or -1 when the reduced column is zero.
  Eigen::Index pivot_row(Eigen::Index col) const { return low_[col]; }
  /// Column whose pivot sits in the given row, or -1.
  Eigen::Index column_with_pivot(Eigen::Index row) const { return pivot_col_[row]; }

  /// Columns of V whose reduced column vanished, in column order.
  Matrix kernel() const;
  std::vector<Eigen::Index> zero_columns() const;

  /// Some x with M x = b, or nullopt when b is outside the column space.
  std::optional<Vector> solve(const Vector& b) const;

 private:
  PrimeField field_;
  Matrix reduced_;
  Matrix transform_;
  std::vector<Eigen::Index> low_;
  std::vector<Eigen::Index> pivot_col_;
  std::size_t rank_ = 0;
};

std::size_t rank(const PrimeField& field, const Matrix& m);

/// Basis of ker(m) as columns; cols(result) = cols(m) - rank(m).
Matrix kernel_basis(const PrimeField& field, const Matrix& m);

struct Expression {
  Vector span_coords;
  Vector modulo_coords;
};

/// Finds c, d with b = span*c + modulo*d. Returns nullopt when b is not in
/// the column span of [span | modulo].
std::optional<Expression> express(const PrimeField& field, const Vector& b,
                                  const Matrix& span, const Matrix& modulo);

/// Horizontal concatenation [a | b]; both must have the same row count.
Matrix hstack(const Matrix& a, const Matrix& b);

}  // namespace psc
