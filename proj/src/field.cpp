#include "psc/field.hpp"

#include <sstream>

namespace psc {

namespace {

std::string join_violations(const std::vector<std::string>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << "; ";
    os << v[i];
  }
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::int64_t p) : p_(p) {
  if (p < 2 || p >= (std::int64_t{1} << 31) || !is_prime(p))
    throw Error("field modulus must be a prime below 2^31, got " + std::to_string(p));
}

std::int64_t PrimeField::inv(std::int64_t a) const {
  a = reduce(a);
  if (a == 0) throw Error("inverse of zero");
  // extended Euclid
  std::int64_t t = 0, nt = 1, r = p_, nr = a;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return reduce(t);
}

Matrix normalized(const PrimeField& field, const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = field.reduce(m(i, j));
  return out;
}

Matrix multiply(const PrimeField& field, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw Error("multiply: shape mismatch " + std::to_string(a.rows()) + "x" +
                std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                std::to_string(b.cols()));
  const std::int64_t p = field.modulus();
  Matrix out = Matrix::Zero(a.rows(), b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    for (Eigen::Index l = 0; l < a.cols(); ++l) {
      const std::int64_t s = b(l, j);
      if (s == 0) continue;
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        out(i, j) = (out(i, j) + a(i, l) * s) % p;
    }
  }
  return out;
}

Matrix add(const PrimeField& field, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("add: shape mismatch");
  Matrix out(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) out(i, j) = field.add(a(i, j), b(i, j));
  return out;
}

Matrix scaled(const PrimeField& field, const Matrix& m, std::int64_t s) {
  s = field.reduce(s);
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = field.mul(m(i, j), s);
  return out;
}

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

Matrix zeros(Eigen::Index rows, Eigen::Index cols) { return Matrix::Zero(rows, cols); }

bool is_zero(const Matrix& m) { return m.size() == 0 || (m.array() == 0).all(); }

bool same_matrix(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error("hstack: row count mismatch");
  Matrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

ColumnReduction::ColumnReduction(const PrimeField& field, const Matrix& m)
    : field_(field),
      reduced_(normalized(field, m)),
      transform_(identity(m.cols())),
      low_(static_cast<std::size_t>(m.cols()), -1),
      pivot_col_(static_cast<std::size_t>(m.rows()), -1) {
  const Eigen::Index rows = reduced_.rows();
  for (Eigen::Index j = 0; j < reduced_.cols(); ++j) {
    for (;;) {
      Eigen::Index low = -1;
      for (Eigen::Index i = rows - 1; i >= 0; --i)
        if (reduced_(i, j) != 0) {
          low = i;
          break;
        }
      if (low < 0) break;
      const Eigen::Index other = pivot_col_[low];
      if (other < 0) {
        low_[j] = low;
        pivot_col_[low] = j;
        ++rank_;
        break;
      }
      // col_j -= (R[low,j] / R[low,other]) * col_other
      const std::int64_t factor =
          field_.neg(field_.mul(reduced_(low, j), field_.inv(reduced_(low, other))));
      for (Eigen::Index i = 0; i <= low; ++i)
        reduced_(i, j) = (reduced_(i, j) + factor * reduced_(i, other)) % field_.modulus();
      for (Eigen::Index i = 0; i < transform_.rows(); ++i)
        transform_(i, j) = (transform_(i, j) + factor * transform_(i, other)) % field_.modulus();
    }
  }
}

std::vector<Eigen::Index> ColumnReduction::zero_columns() const {
  std::vector<Eigen::Index> out;
  for (Eigen::Index j = 0; j < reduced_.cols(); ++j)
    if (low_[j] < 0) out.push_back(j);
  return out;
}

Matrix ColumnReduction::kernel() const {
  const auto cols = zero_columns();
  Matrix out(transform_.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(c) = transform_.col(cols[c]);
  return out;
}

std::optional<Vector> ColumnReduction::solve(const Vector& b) const {
  if (b.rows() != reduced_.rows()) throw Error("solve: row count mismatch");
  const std::int64_t p = field_.modulus();
  Vector residual(b.rows());
  for (Eigen::Index i = 0; i < b.rows(); ++i) residual(i) = field_.reduce(b(i));
  // Coordinates with respect to the reduced columns.
  Vector y = Vector::Zero(reduced_.cols());
  for (Eigen::Index i = residual.rows() - 1; i >= 0; --i) {
    if (residual(i) == 0) continue;
    const Eigen::Index c = pivot_col_[i];
    if (c < 0) return std::nullopt;
    const std::int64_t f = field_.mul(residual(i), field_.inv(reduced_(i, c)));
    y(c) = f;
    const std::int64_t nf = field_.neg(f);
    for (Eigen::Index r = 0; r <= i; ++r) residual(r) = (residual(r) + nf * reduced_(r, c)) % p;
  }
  // R = M V, so M (V y) = R y = b.
  Vector x = Vector::Zero(transform_.rows());
  for (Eigen::Index c = 0; c < y.rows(); ++c) {
    if (y(c) == 0) continue;
    for (Eigen::Index r = 0; r < x.rows(); ++r) x(r) = (x(r) + y(c) * transform_(r, c)) % p;
  }
  return x;
}

std::size_t rank(const PrimeField& field, const Matrix& m) {
  if (m.size() == 0) return 0;
  return ColumnReduction(field, m).rank();
}

Matrix kernel_basis(const PrimeField& field, const Matrix& m) {
  return ColumnReduction(field, m).kernel();
}

std::optional<Expression> express(const PrimeField& field, const Vector& b, const Matrix& span,
                                  const Matrix& modulo) {
  if (span.rows() != b.rows() || modulo.rows() != b.rows())
    throw Error("express: row count mismatch");
  ColumnReduction red(field, hstack(span, modulo));
  auto x = red.solve(b);
  if (!x) return std::nullopt;
  Expression e;
  e.span_coords = x->head(span.cols());
  e.modulo_coords = x->tail(modulo.cols());
  return e;
}

}  // namespace psc
