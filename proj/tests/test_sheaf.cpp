#include <doctest.h>

#include <algorithm>

#include "psc/sheaf.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"
#include "support/worked.hpp"

using namespace psc;
using worked::at;
using worked::mat;

namespace {

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

void check_same(const CellularSheaf& a, const CellularSheaf& b) {
  REQUIRE(a.complex().size() == b.complex().size());
  CHECK(a.stalks() == b.stalks());
  for (std::size_t t = 0; t < a.complex().size(); ++t)
    for (const auto& f : a.complex().faces(t)) CHECK(same_matrix(a.restriction(f.index, t), b.restriction(f.index, t)));
}

}  // namespace

TEST_CASE("validate_sheaf on the twisted triangle") {
  CHECK(validate_sheaf(*worked::twisted_triangle_sheaf()).empty());
  CHECK(validate_sheaf(*worked::twisted_triangle_sheaf(3)).empty());

  auto broken = worked::twisted_triangle_sheaf(2, true);
  const auto v = validate_sheaf(*broken);
  // Edge 01 sits in the diamonds under both of its vertices.
  REQUIRE(v.size() == 2);
  CHECK(mentions(v, "diamond 's0'"));
  CHECK(mentions(v, "diamond 's1'"));
  CHECK(mentions(v, "s0_1_2"));
  CHECK_THROWS_AS(require_valid(*broken), ValidationError);
}

TEST_CASE("perturbing any restriction of a random sheaf breaks a diamond or nothing") {
  // The oracle: a perturbation is harmless exactly when every diamond through
  // the perturbed incidence still commutes, which we recompute by hand.
  gen::Rng rng(41);
  int detected = 0;
  for (int run = 0; run < 80; ++run) {
    auto c = worked::full_triangle(run % 2 ? 3 : 2);
    const auto p = c->field().modulus();
    auto sw = gen::random_sheaf(rng, c);
    auto r = sw.sheaf->restrictions();
    auto it = r.begin();
    std::advance(it, rng.uniform(0, static_cast<int>(r.size()) - 1));
    if (it->second.size() == 0) continue;
    it->second(rng.uniform(0, static_cast<int>(it->second.rows()) - 1),
               rng.uniform(0, static_cast<int>(it->second.cols()) - 1)) += 1;
    it->second = oracle::mul(it->second, Matrix::Identity(it->second.cols(), it->second.cols()), p);
    CellularSheaf bad(c, sw.sheaf->stalks(), r);
    bool commutes = true;
    for (std::size_t v = 0; v < 3; ++v) {
      const auto top = at(c, {0, 1, 2});
      std::vector<std::size_t> mids;
      for (const auto& co : c->cofaces(v)) mids.push_back(co.index);
      const Matrix a = oracle::mul(r.at({mids[0], top}), r.at({v, mids[0]}), p);
      const Matrix b = oracle::mul(r.at({mids[1], top}), r.at({v, mids[1]}), p);
      commutes = commutes && a == b;
    }
    CHECK(validate_sheaf(bad).empty() == commutes);
    detected += !commutes;
  }
  CHECK(detected > 10);
}

TEST_CASE("sheaves on one-dimensional complexes have no diamonds") {
  auto e = worked::edge_morphism();
  CHECK(validate_sheaf(*e.source).empty());
  CHECK(validate_sheaf(*e.target).empty());
  CHECK(validate_morphism(e.phi).empty());
}

TEST_CASE("shape problems are reported") {
  auto c = worked::edge();
  std::map<IncidenceKey, Matrix> r;
  r[{at(c, {0}), at(c, {0, 1})}] = mat({{1, 0}});
  CellularSheaf f(c, {1, 1, 1}, r);
  const auto v = validate_sheaf(f);
  CHECK(mentions(v, "shape"));
  CHECK(mentions(v, "missing map"));
  // A gap next to a zero stalk is filled with the empty map.
  CellularSheaf g(c, {0, 1, 0}, {});
  CHECK(validate_sheaf(g).empty());
}

TEST_CASE("constant sheaves") {
  auto tri = worked::triangle();
  auto f = constant(tri, 1);
  CHECK(validate_sheaf(f).empty());
  for (int d : f.stalks()) CHECK(d == 1);
  for (const auto& [key, m] : f.restrictions()) CHECK(same_matrix(m, identity(1)));
  auto zero = constant(tri, 0);
  for (int d : zero.stalks()) CHECK(d == 0);
  auto e3 = constant(worked::edge(), 3);
  for (int d : e3.stalks()) CHECK(d == 3);
  for (const auto& [key, m] : e3.restrictions()) CHECK(same_matrix(m, identity(3)));
  CHECK(validate_sheaf(constant(worked::full_triangle(), 2)).empty());
}

TEST_CASE("pullback") {
  auto tw = worked::twisted_triangle_sheaf();
  auto c = tw->complex_ptr();
  SimplicialMap id(c, c, {{0, 0}, {1, 1}, {2, 2}});
  check_same(pullback(id, *tw), *tw);

  // Pullback of a constant sheaf along a collapsing map stays constant.
  auto e = worked::edge();
  SimplicialMap collapse(c, e, {{0, 0}, {1, 1}, {2, 1}});
  auto pc = pullback(collapse, constant(e, 2));
  check_same(pc, constant(c, 2));
  CHECK(validate_sheaf(pc).empty());

  // Along the inclusion of an edge the stalks and restriction are read off.
  auto sub = worked::complex_of({{{0}}, {{2}}, {{0, 2}}});
  auto inc = inclusion(sub, c);
  auto pi = pullback(inc, *tw);
  CHECK(pi.stalk(at(sub, {0, 2})) == 2);
  CHECK(same_matrix(pi.restriction(at(sub, {0}), at(sub, {0, 2})), mat({{0, 1}, {1, 0}})));
}

TEST_CASE("pullback is functorial") {
  gen::Rng rng(43);
  auto tri = worked::full_triangle(3);
  for (int run = 0; run < 40; ++run) {
    auto h = gen::random_sheaf(rng, tri).sheaf;
    // f: edge -> triangle, g: triangle -> triangle (a random vertex map).
    std::map<int, int> gm;
    for (int v = 0; v < 3; ++v) gm[v] = rng.uniform(0, 2);
    SimplicialMap g(tri, tri, gm);
    auto e = worked::edge(3);
    SimplicialMap f(e, tri, {{0, rng.uniform(0, 1)}, {1, 2}});
    auto direct = pullback(compose(g, f), *h);
    auto g_star = std::make_shared<const CellularSheaf>(pullback(g, *h));
    CHECK(validate_sheaf(*g_star).empty());
    check_same(direct, pullback(f, *g_star));
  }
}

TEST_CASE("extension by zero") {
  auto tw = worked::twisted_triangle_sheaf();
  auto c = tw->complex_ptr();
  check_same(extend_by_zero(inclusion(c, c), *tw), *tw);

  auto sub = worked::complex_of({{{0}}, {{1}}, {{0, 1}}});
  auto inc = inclusion(sub, c);
  auto f = pullback(inc, *tw);
  auto pushed = extend_by_zero(inc, f);
  CHECK(validate_sheaf(pushed).empty());
  CHECK(pushed.stalk(at(c, {2})) == 0);
  CHECK(pushed.stalk(at(c, {0, 1, 2})) == 0);
  CHECK(pushed.stalk(at(c, {0, 1})) == 2);
  check_same(pullback(inc, pushed), f);

  auto zero = extend_by_zero(inc, constant(sub, 0));
  for (int d : zero.stalks()) CHECK(d == 0);

  auto e = worked::edge();
  SimplicialMap collapse(c, e, {{0, 0}, {1, 1}, {2, 1}});
  CHECK_THROWS(extend_by_zero(collapse, *tw));
}

TEST_CASE("dualize") {
  auto tw = worked::twisted_triangle_sheaf();
  auto d = dualize(*tw);
  CHECK(validate_cosheaf(d).empty());
  CHECK(d.stalks() == tw->stalks());
  for (const auto& [key, m] : tw->restrictions()) CHECK(same_matrix(d.extension(key.first, key.second), m.transpose()));

  auto k = dualize(constant(worked::triangle(), 1));
  for (const auto& [key, m] : k.extensions()) CHECK(same_matrix(m, identity(1)));

  // Transposing twice gives the original restrictions back.
  for (const auto& [key, m] : tw->restrictions())
    CHECK(same_matrix(Matrix(d.extension(key.first, key.second).transpose()), m));
}

TEST_CASE("unit map") {
  gen::Rng rng(47);
  for (int run = 0; run < 30; ++run) {
    auto c = gen::random_complex(rng, 15, 3, 2);
    auto f = gen::random_sheaf(rng, c).sheaf;
    auto sub = step_complex(*c, rng.uniform(0, 2));
    auto iota = inclusion(sub, c);
    auto eta = unit_map(iota, f);
    CHECK(validate_morphism(eta).empty());
    for (std::size_t i = 0; i < c->size(); ++i) {
      const bool inside = sub->find((*c)[i].vertices).has_value();
      CHECK(eta.target->stalk(i) == (inside ? f->stalk(i) : 0));
      if (inside) CHECK(same_matrix(eta.components[i], identity(f->stalk(i))));
    }
    check_same(*eta.target, extend_by_zero(iota, pullback(iota, *f)));
  }

  auto tw = worked::twisted_triangle_sheaf();
  auto c = tw->complex_ptr();
  auto self = unit_map(inclusion(c, c), tw);
  for (std::size_t i = 0; i < c->size(); ++i) CHECK(same_matrix(self.components[i], identity(tw->stalk(i))));
}

TEST_CASE("morphism composition and naturality") {
  auto e = worked::edge_morphism();
  auto idf = identity_morphism(e.source);
  auto both = compose(e.phi, idf);
  for (std::size_t i = 0; i < 3; ++i) CHECK(same_matrix(both.components[i], e.phi.components[i]));

  auto bad = e.phi;
  bad.components[at(e.complex, {0})] = worked::col({0, 1});
  const auto v = validate_morphism(bad);
  CHECK(mentions(v, "not natural"));
}

TEST_CASE("restriction between non-adjacent simplices") {
  auto tw = worked::twisted_triangle_sheaf();
  auto c = tw->complex_ptr();
  const Matrix r = tw->restriction_between(at(c, {0}), at(c, {0, 1, 2}));
  const Matrix via01 = multiply(tw->field(), tw->restriction(at(c, {0, 1}), at(c, {0, 1, 2})),
                                tw->restriction(at(c, {0}), at(c, {0, 1})));
  CHECK(same_matrix(r, via01));
  CHECK(same_matrix(tw->restriction_between(at(c, {1}), at(c, {1})), identity(2)));
  CHECK_THROWS(tw->restriction_between(at(c, {0}), at(c, {1})));
}
