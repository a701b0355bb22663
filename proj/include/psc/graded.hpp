#pragma once

#include <map>
#include <string>
#include <vector>

#include "psc/cohomology.hpp"
#include "psc/complex.hpp"
#include "psc/field.hpp"
#include "psc/persistence.hpp"
#include "psc/sheaf.hpp"

namespace psc {

/// Raised when a reduction step would leave the homogeneous matrices.
class HomogeneityError : public Error {
 public:
  using Error::Error;
};

/// Free graded F[t]-module given by the degrees of its generators.
struct GradedFreeModule {
  std::vector<int> degrees;

  Eigen::Index size() const { return static_cast<Eigen::Index>(degrees.size()); }
  friend bool operator==(const GradedFreeModule&, const GradedFreeModule&) = default;
};

/// Degree-0 map of free graded modules. Entry (i, j) stands for
/// scalar(i, j) * t^(deg source j - deg target i).
struct HomogeneousMatrix {
  GradedFreeModule source;
  GradedFreeModule target;
  Matrix scalar;

  /// Exponent of t at (i, j); meaningful only where scalar(i, j) != 0.
  int power(Eigen::Index i, Eigen::Index j) const {
    return source.degrees[j] - target.degrees[i];
  }
};

/// Shape and degree violations.
std::vector<std::string> check_homogeneous(const HomogeneousMatrix& m);

/// Composite of homogeneous maps; the t-powers add up so only scalars multiply.
HomogeneousMatrix compose(const PrimeField& field, const HomogeneousMatrix& b,
                          const HomogeneousMatrix& a);

/// Graded (co)chain complex; layout blocks record which simplex owns which
/// generators.
struct GradedComplex {
  PrimeField field;
  bool chain = false;
  std::vector<GradedFreeModule> modules;
  std::vector<std::vector<Block>> blocks;
  std::vector<HomogeneousMatrix> differential;

  int top() const { return static_cast<int>(modules.size()) - 1; }
  GradedFreeModule module(int k) const;
  HomogeneousMatrix outgoing(int k) const;
  HomogeneousMatrix incoming(int k) const;
};

/// Sheaf of free graded modules: generators per simplex and a homogeneous
/// matrix per codimension-1 incidence (face -> coface).
struct GradedSheaf {
  ComplexPtr complex;
  std::vector<GradedFreeModule> generators;
  std::map<IncidenceKey, HomogeneousMatrix> maps;
};

/// Cosheaf of free graded modules; maps keyed by (face, coface) go from the
/// coface's generators to the face's.
struct GradedCosheaf {
  ComplexPtr complex;
  std::vector<GradedFreeModule> generators;
  std::map<IncidenceKey, HomogeneousMatrix> maps;
};

std::vector<std::string> validate_graded_sheaf(const GradedSheaf& gs);

/// Graded sheaf of a stalk-wise injective diagram. Each stalk gets one
/// generator per dimension that appears at a step; restrictions are expressed
/// in those generators. Throws on a step map with a kernel.
GradedSheaf diagram_to_graded_sheaf(const SheafDiagram& d);

/// Ordinary sheaf seen at level n: generators of degree <= n.
CellularSheaf evaluate_at(const GradedSheaf& gs, int n);

GradedComplex graded_cochain_complex(const GradedSheaf& gs);
GradedComplex graded_chain_complex(const GradedCosheaf& gc);

/// Level-n slice of a graded complex plus the t-action into level n+1.
struct Slice {
  CochainComplex complex;
  std::vector<Matrix> t_maps;  // per degree: slice n -> slice n+1
};
Slice evaluate_at(const GradedComplex& gc, int n);

/// Barcode of the degree-k (co)homology as a graded module, by
/// homogeneity-preserving reduction.
Barcode graded_barcode(const GradedComplex& gc, int k);

/// H^k(X, F_0) -> ... -> H^k(X, F_{m-1}) in fixed bases.
PersistenceModule type_a_module(const SheafDiagram& d, int k);
Barcode type_a_pointwise(const SheafDiagram& d, int k);
Barcode type_a_graded(const SheafDiagram& d, int k);

/// True when every step component has trivial kernel.
bool is_monomorphic(const SheafDiagram& d);

}  // namespace psc
