#include <doctest.h>

#include "psc/graded.hpp"
#include "psc/persistence.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"
#include "support/worked.hpp"

using namespace psc;
using worked::col;
using worked::mat;

namespace {

Bar fin(int a, int b) { return {a, b}; }
Bar inf(int a) { return {a, std::nullopt}; }

// Direct sum of interval modules, one basis vector per bar alive at i.
PersistenceModule interval_module(const std::vector<Bar>& bars, int m, std::int64_t p) {
  PersistenceModule out{PrimeField(p), {}, {}};
  auto alive = [&](const Bar& b, int i) { return b.birth <= i && (b.infinite() || i <= *b.death); };
  std::vector<std::vector<std::size_t>> at(m);
  for (int i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < bars.size(); ++j)
      if (alive(bars[j], i)) at[i].push_back(j);
    out.dims.push_back(static_cast<Eigen::Index>(at[i].size()));
  }
  for (int i = 0; i + 1 < m; ++i) {
    Matrix f = Matrix::Zero(out.dims[i + 1], out.dims[i]);
    for (std::size_t a = 0; a < at[i].size(); ++a)
      for (std::size_t b = 0; b < at[i + 1].size(); ++b)
        if (at[i][a] == at[i + 1][b]) f(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = 1;
    out.maps.push_back(f);
  }
  return out;
}

}  // namespace

TEST_CASE("bars of the edge diagram in degree 0") {
  auto m = type_a_module(worked::edge_diagram(), 0);
  CHECK(m.dims == std::vector<Eigen::Index>{0, 1, 2, 2, 3});
  CHECK(barcodes_equal(decompose_by_ranks(m), make_barcode(0, {inf(1), inf(2), inf(4)})));
}

TEST_CASE("module with dims 0,0,0,1,1,2,0") {
  PersistenceModule m{PrimeField(2), {0, 0, 0, 1, 1, 2, 0}, {}};
  m.maps = {zeros(0, 0), zeros(0, 0), zeros(1, 0), identity(1), col({1, 0}), zeros(0, 2)};
  CHECK(validate_module(m).empty());
  CHECK(barcodes_equal(decompose_by_ranks(m, 1), make_barcode(1, {fin(3, 5), fin(5, 5)})));
}

TEST_CASE("identity chain is one infinite bar") {
  PersistenceModule m{PrimeField(3), {1, 1, 1}, {identity(1), identity(1)}};
  CHECK(barcodes_equal(decompose_by_ranks(m), make_barcode(0, {inf(0)})));
}

TEST_CASE("validate_module") {
  PersistenceModule bad{PrimeField(2), {1, 2}, {identity(1)}};
  CHECK_FALSE(validate_module(bad).empty());
  PersistenceModule short_maps{PrimeField(2), {1, 1, 1}, {identity(1)}};
  CHECK_FALSE(validate_module(short_maps).empty());
}

TEST_CASE("copersistence modules") {
  CopersistenceModule m{PrimeField(2), {4, 2, 0}, {}};
  m.maps = {mat({{1, 0}, {1, 0}, {0, 1}, {0, 1}}), zeros(2, 0)};
  CHECK(barcodes_equal(decompose_copersistence(m), make_barcode(0, {fin(0, 0), fin(0, 0), fin(0, 1), fin(0, 1)})));

  CopersistenceModule zero{PrimeField(2), {2, 1, 1}, {zeros(2, 1), zeros(1, 1)}};
  CHECK(barcodes_equal(decompose_copersistence(zero), make_barcode(0, {fin(0, 0), fin(0, 0), fin(1, 1), inf(2)})));

  CopersistenceModule ident{PrimeField(2), {1, 1, 1}, {identity(1), identity(1)}};
  CHECK(barcodes_equal(decompose_copersistence(ident), make_barcode(0, {inf(0)})));
}

TEST_CASE("reflect") {
  CHECK(barcodes_equal(reflect(make_barcode(0, {fin(0, 2)}), 3), make_barcode(0, {fin(0, 2)})));
  CHECK(barcodes_equal(reflect(make_barcode(0, {fin(1, 2)}), 4), make_barcode(0, {fin(1, 2)})));
  CHECK(barcodes_equal(reflect(make_barcode(0, {fin(0, 0), fin(0, 1)}), 3),
                       make_barcode(0, {fin(2, 2), fin(1, 2)})));
  CHECK(barcodes_equal(reflect(make_barcode(0, {inf(2)}), 4), make_barcode(0, {fin(0, 1)})));
  CHECK_THROWS(reflect(make_barcode(0, {fin(0, 3)}), 3));
}

TEST_CASE("reflect twice is the identity on finite barcodes") {
  gen::Rng rng(81);
  for (int run = 0; run < 100; ++run) {
    const int m = rng.uniform(1, 7);
    std::vector<Bar> bars;
    for (int i = rng.uniform(0, 5); i > 0; --i) {
      const int a = rng.uniform(0, m - 1);
      const int b = rng.uniform(a, m - 1);
      bars.push_back(fin(a, b));
    }
    auto bc = make_barcode(0, bars);
    CHECK(barcodes_equal(reflect(reflect(bc, m), m), bc));
  }
}

TEST_CASE("closed ends") {
  CHECK(barcodes_equal(closed_ends(make_barcode(0, {inf(1), fin(0, 0)}), 3), make_barcode(0, {fin(1, 2), fin(0, 0)})));
}

TEST_CASE("barcode equality is multiset equality") {
  CHECK(barcodes_equal(make_barcode(0, {}), make_barcode(0, {})));
  CHECK(barcodes_equal(make_barcode(0, {inf(1)}), make_barcode(0, {inf(1)})));
  CHECK_FALSE(barcodes_equal(make_barcode(0, {fin(1, 2), fin(1, 2)}), make_barcode(0, {fin(1, 2)})));
  CHECK(barcodes_equal(make_barcode(0, {fin(1, 2), inf(0)}), make_barcode(0, {inf(0), fin(1, 2)})));
  CHECK_FALSE(barcodes_equal(make_barcode(0, {inf(1)}), make_barcode(0, {fin(1, 1)})));
}

TEST_CASE("text form") {
  CHECK(to_string(inf(3)) == "[3, inf)");
  CHECK(to_string(fin(1, 2)) == "[1, 2]");
}

TEST_CASE("synthetic interval modules round-trip, also after a change of basis") {
  gen::Rng rng(83);
  for (int run = 0; run < 150; ++run) {
    const std::int64_t p = run % 3 == 0 ? 2 : run % 3 == 1 ? 3 : 5;
    const int m = rng.uniform(1, 6);
    std::vector<Bar> bars;
    for (int i = rng.uniform(0, 6); i > 0; --i) {
      const int a = rng.uniform(0, m - 1);
      const int b = rng.uniform(a, m - 1);
      bars.push_back(b == m - 1 ? inf(a) : fin(a, b));
    }
    const auto expected = make_barcode(0, bars);
    auto mod = interval_module(bars, m, p);
    CHECK(validate_module(mod).empty());
    CHECK(barcodes_equal(decompose_by_ranks(mod), expected));
    // Bars containing i add up to dims[i].
    const auto got = decompose_by_ranks(mod);
    for (int i = 0; i < m; ++i) {
      Eigen::Index n = 0;
      for (const auto& b : got.bars) n += b.birth <= i && (b.infinite() || i <= *b.death);
      CHECK(n == mod.dims[i]);
    }
    std::vector<Matrix> change;
    for (int i = 0; i < m; ++i) change.push_back(gen::random_invertible(rng, mod.dims[i], p));
    for (int i = 0; i + 1 < m; ++i)
      mod.maps[i] = oracle::mul(oracle::mul(change[i + 1], mod.maps[i], p), oracle::inverse(change[i], p), p);
    CHECK(barcodes_equal(decompose_by_ranks(mod), expected));
    CHECK(barcodes_equal(decompose_by_ranks(mod),
                         oracle::bars_from_ranks(m, [&](int a, int b) { return composite_rank(mod, a, b); }, 0)));
  }
}
