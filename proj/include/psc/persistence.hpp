#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psc/field.hpp"

namespace psc {

/// maps[i] : dims[i] -> dims[i+1].
struct PersistenceModule {
  PrimeField field;
  std::vector<Eigen::Index> dims;
  std::vector<Matrix> maps;
};

/// maps[i] : dims[i+1] -> dims[i].
struct CopersistenceModule {
  PrimeField field;
  std::vector<Eigen::Index> dims;
  std::vector<Matrix> maps;
};

/// Interval [birth, death]; no death means the bar never ends.
struct Bar {
  int birth = 0;
  std::optional<int> death;

  bool infinite() const { return !death.has_value(); }
  friend bool operator==(const Bar&, const Bar&) = default;
};

bool operator<(const Bar& a, const Bar& b);

struct Barcode {
  int degree = 0;
  std::vector<Bar> bars;  // kept sorted by (birth, death), infinite last

  void sort();
  std::size_t size() const { return bars.size(); }
};

Barcode make_barcode(int degree, std::vector<Bar> bars);

/// Shape problems, or an empty list.
std::vector<std::string> validate_module(const PersistenceModule& m);

/// Bars from ranks of composite maps; the module is extended by identities
/// past its last index, so bars reaching it are infinite.
Barcode decompose_by_ranks(const PersistenceModule& m, int degree = 0);

/// Transposes every map and decomposes; bars keep the original indices.
Barcode decompose_copersistence(const CopersistenceModule& m, int degree = 0);

/// [a, b] -> [m-1-b, m-1-a]. An infinite bar counts as ending at m-1 and is
/// marked infinite again only if its reflection ends at m-1.
Barcode reflect(const Barcode& bc, int m);

/// Replaces every infinite end with m-1.
Barcode closed_ends(const Barcode& bc, int m);

bool barcodes_equal(const Barcode& a, const Barcode& b);

std::string to_string(const Bar& bar);
std::string to_string(const Barcode& bc);

/// Rank of the composite map from index a to index b (a <= b).
std::size_t composite_rank(const PersistenceModule& m, int a, int b);

}  // namespace psc
