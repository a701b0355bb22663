#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psc/complex.hpp"
#include "psc/field.hpp"
#include "psc/sheaf.hpp"

namespace psc {

/// Two-parameter grid. Row r holds the step subcomplex X_{m-1-r}, so both
/// axes increase: horizontal[r][j] : (r, j) -> (r, j+1) comes from the sheaf
/// morphisms, vertical[r][j] : (r, j) -> (r+1, j) from the inclusions.
struct BiGrid {
  PrimeField field;
  int degree = 0;
  std::vector<std::vector<Eigen::Index>> dims;
  std::vector<std::vector<Matrix>> horizontal;
  std::vector<std::vector<Matrix>> vertical;

  int rows() const { return static_cast<int>(dims.size()); }
  int cols() const { return dims.empty() ? 0 : static_cast<int>(dims.front().size()); }
};

BiGrid grid(const ComplexPtr& filtration, const SheafDiagram& diagram, int k);

struct Square {
  int row;
  int col;
};

/// First non-commuting unit square, if any.
std::optional<Square> check_commutative(const BiGrid& g);

/// Rank of the composite from (r0, c0) to (r1, c1) along the staircase that
/// first moves horizontally, then vertically when `horizontal_first`.
std::size_t path_rank(const BiGrid& g, int r0, int c0, int r1, int c1, bool horizontal_first = true);

using GridIndex = std::pair<int, int>;

/// rank((r0, c0) -> (r1, c1)) for every comparable pair.
std::map<std::pair<GridIndex, GridIndex>, std::size_t> rank_invariant(const BiGrid& g);

}  // namespace psc
