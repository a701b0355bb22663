#pragma once

#include <memory>
#include <vector>

#include "psc/complex.hpp"
#include "psc/field.hpp"
#include "psc/sheaf.hpp"

namespace psc {

/// One simplex's slot in a cochain space.
struct Block {
  std::size_t simplex;
  Eigen::Index offset;
  Eigen::Index size;
};

/// Cochain complex (delta raises degree) or chain complex (boundary lowers
/// degree) of finite-dimensional F_p spaces in degrees 0..top.
struct CochainComplex {
  PrimeField field;
  bool chain = false;
  std::vector<std::vector<Block>> blocks;  // per degree
  std::vector<Matrix> differential;        // cochain: C^k -> C^{k+1}; chain: C_k -> C_{k-1}

  int top() const { return static_cast<int>(blocks.size()) - 1; }
  Eigen::Index dim(int k) const;
  /// The differential leaving degree k (0-row matrix when it lands outside).
  Matrix outgoing(int k) const;
  /// The differential arriving in degree k (0-column matrix when none).
  Matrix incoming(int k) const;
};

/// Basis of (co)homology in one degree, with representatives as columns of
/// C^k and a stored reduction for expressing cocycles in the basis.
class CohomologyBasis {
 public:
  CohomologyBasis(const CochainComplex& cc, int k);

  int degree() const { return degree_; }
  Eigen::Index dim() const { return reps_.cols(); }
  const Matrix& representatives() const { return reps_; }
  const std::vector<Block>& layout() const { return layout_; }
  const PrimeField& field() const { return field_; }

  /// Coordinates of the class of a cocycle z; throws if z is not a cocycle
  /// of this complex.
  Vector coordinates(const Vector& z) const;
  Matrix coordinates(const Matrix& zs) const;

 private:
  PrimeField field_;
  int degree_;
  Matrix reps_;
  std::vector<Block> layout_;
  std::shared_ptr<const ColumnReduction> solver_;  // of [reps | boundaries]
};

using HomologyBasis = CohomologyBasis;

/// Block matrix delta^k with block (tau, sigma) = [sigma:tau] restriction(sigma, tau).
CochainComplex cochain_complex(const CellularSheaf& f);
CochainComplex chain_complex(const CellularCosheaf& f);

CohomologyBasis cohomology_basis(const CellularSheaf& f, int k);
CohomologyBasis cosheaf_homology_basis(const CellularCosheaf& f, int k);
HomologyBasis simplicial_homology_basis(const ComplexPtr& k, int n);

/// dim H^k for every k in 0..dim(X).
std::vector<Eigen::Index> cohomology_dims(const CellularSheaf& f);

/// Matrix of H^k(phi) in the given bases.
Matrix induced_by_sheaf_morphism(const SheafMorphism& phi, int k);
Matrix induced_by_sheaf_morphism(const SheafMorphism& phi, const CohomologyBasis& from,
                                 const CohomologyBasis& to);

/// Cochain map C^k(Y, F) -> C^k(X, f^*F).
Matrix cochain_pullback(const SimplicialMap& f, const CellularSheaf& on_target,
                        const CellularSheaf& on_source, int k);

/// Matrix of H^k(Y, F) -> H^k(X, f^*F).
Matrix induced_by_simplicial_map(const SimplicialMap& f, const CellularSheaf& on_target, int k);
Matrix induced_by_simplicial_map(const SimplicialMap& f, const CellularSheaf& on_target,
                                 const CellularSheaf& on_source, const CohomologyBasis& from,
                                 const CohomologyBasis& to);

/// Copies a (co)chain between two layouts block by block, matching simplices
/// by vertex set. Blocks absent from the target layout must be zero.
Vector transport_chain(const Vector& v, const FilteredComplex& from_complex,
                       const std::vector<Block>& from, const FilteredComplex& to_complex,
                       const std::vector<Block>& to, Eigen::Index to_dim);

}  // namespace psc
