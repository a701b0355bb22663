#include "psc/bipersistence.hpp"

#include "psc/cohomology.hpp"
#include "psc/type_t.hpp"

namespace psc {

BiGrid grid(const ComplexPtr& filtration, const SheafDiagram& diagram, int k) {
  require_valid(diagram);
  const int m = filtration->steps();
  const int n = diagram.length();
  const auto full = diagram.sheaves.front()->complex_ptr();
  const auto steps = step_complexes(*filtration);

  // pulled[i][j] = (F_j)^i on X_i, with a cohomology basis fixed once per cell
  std::vector<std::vector<SheafPtr>> pulled(m);
  std::vector<std::vector<CohomologyBasis>> bases(m);
  std::vector<SimplicialMap> into_full;
  for (int i = 0; i < m; ++i) {
    into_full.push_back(inclusion(steps[i], full));
    for (int j = 0; j < n; ++j) {
      pulled[i].push_back(
          std::make_shared<const CellularSheaf>(pullback(into_full[i], *diagram.sheaves[j])));
      bases[i].push_back(cohomology_basis(*pulled[i][j], k));
    }
  }

  BiGrid g{full->field(), k, {}, {}, {}};
  g.dims.assign(m, std::vector<Eigen::Index>(n));
  g.horizontal.assign(m, {});
  g.vertical.assign(m > 0 ? m - 1 : 0, {});
  for (int r = 0; r < m; ++r) {
    const int i = m - 1 - r;
    for (int j = 0; j < n; ++j) g.dims[r][j] = bases[i][j].dim();
    for (int j = 0; j + 1 < n; ++j) {
      const SheafMorphism phi = pullback(into_full[i], diagram.maps[j], pulled[i][j], pulled[i][j + 1]);
      g.horizontal[r].push_back(induced_by_sheaf_morphism(phi, bases[i][j], bases[i][j + 1]));
    }
    if (r + 1 < m) {
      const auto iota = inclusion(steps[i - 1], steps[i]);
      for (int j = 0; j < n; ++j)
        g.vertical[r].push_back(induced_by_simplicial_map(iota, *pulled[i][j], *pulled[i - 1][j],
                                                          bases[i][j], bases[i - 1][j]));
    }
  }
  return g;
}

std::optional<Square> check_commutative(const BiGrid& g) {
  for (int r = 0; r + 1 < g.rows(); ++r)
    for (int c = 0; c + 1 < g.cols(); ++c) {
      const Matrix a = multiply(g.field, g.vertical[r][c + 1], g.horizontal[r][c]);
      const Matrix b = multiply(g.field, g.horizontal[r + 1][c], g.vertical[r][c]);
      if (!same_matrix(a, b)) return Square{r, c};
    }
  return std::nullopt;
}

std::size_t path_rank(const BiGrid& g, int r0, int c0, int r1, int c1, bool horizontal_first) {
  if (r1 < r0 || c1 < c0) throw Error("path_rank: indices are not comparable");
  Matrix acc = identity(g.dims[r0][c0]);
  int r = r0, c = c0;
  auto go_right = [&] {
    for (; c < c1; ++c) acc = multiply(g.field, g.horizontal[r][c], acc);
  };
  auto go_down = [&] {
    for (; r < r1; ++r) acc = multiply(g.field, g.vertical[r][c], acc);
  };
  if (horizontal_first) {
    go_right();
    go_down();
  } else {
    go_down();
    go_right();
  }
  return rank(g.field, acc);
}

std::map<std::pair<GridIndex, GridIndex>, std::size_t> rank_invariant(const BiGrid& g) {
  std::map<std::pair<GridIndex, GridIndex>, std::size_t> out;
  for (int r0 = 0; r0 < g.rows(); ++r0)
    for (int c0 = 0; c0 < g.cols(); ++c0)
      for (int r1 = r0; r1 < g.rows(); ++r1)
        for (int c1 = c0; c1 < g.cols(); ++c1)
          out[{{r0, c0}, {r1, c1}}] = path_rank(g, r0, c0, r1, c1);
  return out;
}

}  // namespace psc
