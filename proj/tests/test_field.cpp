#include <doctest.h>

#include "psc/field.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"
#include "support/worked.hpp"

using namespace psc;
using worked::col;
using worked::mat;

TEST_CASE("prime field arithmetic") {
  PrimeField f(7);
  CHECK(f.reduce(-1) == 6);
  CHECK(f.reduce(15) == 1);
  CHECK(f.mul(3, f.inv(3)) == 1);
  CHECK(f.neg(0) == 0);
  CHECK(f.neg(2) == 5);
  CHECK(f.sub(1, 3) == 5);
  for (std::int64_t a = 1; a < 7; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK_THROWS_AS(PrimeField(4), Error);
  CHECK_THROWS_AS(PrimeField(1), Error);
  CHECK_THROWS(f.inv(0));
  CHECK(is_prime(2));
  CHECK(is_prime(65521));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("rank of small matrices") {
  PrimeField f2(2);
  CHECK(rank(f2, identity(2)) == 2);
  CHECK(rank(f2, mat({{1, 1}, {1, 1}})) == 1);
  CHECK(rank(f2, Matrix(0, 3)) == 0);
  CHECK(rank(f2, Matrix(4, 0)) == 0);
  CHECK(rank(PrimeField(3), mat({{1, 1}, {1, 2}})) == 2);
  CHECK(rank(PrimeField(2), mat({{1, 1}, {1, 3}})) == 1);
}

TEST_CASE("rank of the coboundary of the edge sheaf with stalks 1, 2, 3") {
  // Columns: vertex 0 (stalk F, sign -1), vertex 1 (stalk F^2, sign +1).
  const Matrix r0 = col({0, 0, 1});
  const Matrix r1 = mat({{1, 0}, {1, 0}, {0, 1}});
  for (std::int64_t p : {2, 3, 5}) {
    PrimeField f(p);
    Matrix d(3, 3);
    d << scaled(f, r0, p - 1), r1;
    CHECK(rank(f, d) == 2);
    CHECK(oracle::rank(d, p) == 2);
  }
}

TEST_CASE("kernel basis examples") {
  PrimeField f2(2);
  const Matrix k0 = kernel_basis(f2, zeros(2, 3));
  CHECK(k0.cols() == 3);
  CHECK(rank(f2, k0) == 3);

  const Matrix k1 = kernel_basis(f2, mat({{1, 1}}));
  REQUIRE(k1.cols() == 1);
  CHECK(same_matrix(k1, col({1, 1})));

  // Coboundary of the constant sheaf on the hollow triangle: rows are edges
  // 01, 02, 12; columns are vertices 0, 1, 2.
  const Matrix d0 = mat({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
  const Matrix k2 = kernel_basis(f2, d0);
  CHECK((std::size_t{1} << k2.cols()) == oracle::brute_force_kernel_size_f2(d0));
  REQUIRE(k2.cols() == 1);
  CHECK(same_matrix(k2, col({1, 1, 1})));
}

TEST_CASE("column reduction invariants") {
  gen::Rng rng(101);
  for (int run = 0; run < 200; ++run) {
    const std::int64_t p = std::vector<std::int64_t>{2, 3, 5, 7}[run % 4];
    PrimeField f(p);
    const Matrix m = gen::random_matrix(rng, rng.uniform(0, 7), rng.uniform(0, 7), p);
    ColumnReduction red(f, m);
    CHECK(same_matrix(red.reduced(), multiply(f, m, red.transform())));
    CHECK(red.rank() == oracle::rank(m, p));
    std::set<Eigen::Index> pivots;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const auto low = red.pivot_row(j);
      if (low < 0) {
        CHECK(is_zero(red.reduced().col(j)));
        continue;
      }
      CHECK(pivots.insert(low).second);
      CHECK(red.column_with_pivot(low) == j);
      for (Eigen::Index i = low + 1; i < m.rows(); ++i) CHECK(red.reduced()(i, j) == 0);
    }
    // V is unit upper triangular.
    for (Eigen::Index i = 0; i < m.cols(); ++i) {
      CHECK(red.transform()(i, i) == 1);
      for (Eigen::Index j = 0; j < i; ++j) CHECK(red.transform()(i, j) == 0);
    }
    const Matrix k = kernel_basis(f, m);
    CHECK(static_cast<Eigen::Index>(rank(f, m)) + k.cols() == m.cols());
    CHECK(is_zero(multiply(f, m, k)));
    CHECK(rank(f, k) == static_cast<std::size_t>(k.cols()));
  }
}

TEST_CASE("express") {
  PrimeField f5(5);
  const Matrix span = mat({{1, 0}, {0, 1}, {0, 0}});
  const Matrix none(3, 0);
  auto zero = express(f5, Vector::Zero(3), span, none);
  REQUIRE(zero);
  CHECK(is_zero(zero->span_coords));

  auto unit = express(f5, span.col(1), span, none);
  REQUIRE(unit);
  CHECK(same_matrix(unit->span_coords, col({0, 1})));
  CHECK(unit->modulo_coords.size() == 0);

  CHECK_FALSE(express(f5, col({0, 0, 1}), span, none));

  gen::Rng rng(55);
  for (int run = 0; run < 100; ++run) {
    const Matrix s = gen::random_matrix(rng, 6, 4, 5);
    const Matrix mod = gen::random_matrix(rng, 6, rng.uniform(0, 2), 5);
    const Matrix c = gen::random_matrix(rng, 4, 1, 5);
    const Matrix d = gen::random_matrix(rng, mod.cols(), 1, 5);
    const Vector b = add(f5, multiply(f5, s, c), multiply(f5, mod, d));
    auto e = express(f5, b, s, mod);
    REQUIRE(e);
    const Matrix back = add(f5, multiply(f5, s, e->span_coords), multiply(f5, mod, e->modulo_coords));
    CHECK(same_matrix(back, b));
  }
}

TEST_CASE("matrix helpers normalize entries") {
  PrimeField f3(3);
  CHECK(same_matrix(normalized(f3, mat({{-1, 4}})), mat({{2, 1}})));
  CHECK(same_matrix(add(f3, mat({{2}}), mat({{2}})), mat({{1}})));
  CHECK(same_matrix(hstack(mat({{1}, {2}}), mat({{3}, {4}})), mat({{1, 3}, {2, 4}})));
  CHECK(same_matrix(multiply(f3, mat({{2, 2}}), col({2, 2})), mat({{2}})));
}
