#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "psc/complex.hpp"
#include "psc/field.hpp"

namespace psc {

using IncidenceKey = std::pair<std::size_t, std::size_t>;  // (face, coface) indices

/// Cellular sheaf: a stalk dimension per simplex and a restriction matrix
/// (stalk(coface) x stalk(face)) per codimension-1 incidence.
class CellularSheaf {
 public:
  /// Missing restrictions next to a zero-dimensional stalk are filled with
  /// empty matrices; any other gap is left for validate_sheaf to report.
  CellularSheaf(ComplexPtr complex, std::vector<int> stalks,
                std::map<IncidenceKey, Matrix> restrictions);

  const FilteredComplex& complex() const { return *complex_; }
  const ComplexPtr& complex_ptr() const { return complex_; }
  const PrimeField& field() const { return complex_->field(); }

  int stalk(std::size_t sigma) const { return stalks_[sigma]; }
  const std::vector<int>& stalks() const { return stalks_; }

  bool has_restriction(std::size_t face, std::size_t coface) const;
  const Matrix& restriction(std::size_t face, std::size_t coface) const;
  const std::map<IncidenceKey, Matrix>& restrictions() const { return restrictions_; }

  /// Composite restriction along any saturated chain from face to coface;
  /// identity when they coincide.
  Matrix restriction_between(std::size_t face, std::size_t coface) const;

 private:
  ComplexPtr complex_;
  std::vector<int> stalks_;
  std::map<IncidenceKey, Matrix> restrictions_;
};

/// Cellular cosheaf: extension matrices stalk(face) x stalk(coface), keyed by
/// (face, coface) like the sheaf case.
class CellularCosheaf {
 public:
  CellularCosheaf(ComplexPtr complex, std::vector<int> stalks,
                  std::map<IncidenceKey, Matrix> extensions);

  const FilteredComplex& complex() const { return *complex_; }
  const ComplexPtr& complex_ptr() const { return complex_; }
  const PrimeField& field() const { return complex_->field(); }
  int stalk(std::size_t sigma) const { return stalks_[sigma]; }
  const std::vector<int>& stalks() const { return stalks_; }
  const Matrix& extension(std::size_t face, std::size_t coface) const;
  const std::map<IncidenceKey, Matrix>& extensions() const { return extensions_; }

 private:
  ComplexPtr complex_;
  std::vector<int> stalks_;
  std::map<IncidenceKey, Matrix> extensions_;
};

using SheafPtr = std::shared_ptr<const CellularSheaf>;

/// Natural transformation source -> target, one component per simplex.
struct SheafMorphism {
  SheafPtr source;
  SheafPtr target;
  std::vector<Matrix> components;
};

/// Linear diagram F_0 -> F_1 -> ... of sheaves on one complex;
/// maps[i] : sheaves[i] -> sheaves[i+1].
struct SheafDiagram {
  std::vector<SheafPtr> sheaves;
  std::vector<SheafMorphism> maps;

  const FilteredComplex& complex() const { return sheaves.front()->complex(); }
  int length() const { return static_cast<int>(sheaves.size()); }
};

std::vector<std::string> validate_sheaf(const CellularSheaf& f);
std::vector<std::string> validate_cosheaf(const CellularCosheaf& f);
std::vector<std::string> validate_morphism(const SheafMorphism& phi);
std::vector<std::string> validate_diagram(const SheafDiagram& d);

/// Throwing wrappers.
void require_valid(const CellularSheaf& f);
void require_valid(const SheafDiagram& d);

CellularSheaf constant(ComplexPtr complex, int d);
SheafPtr constant_ptr(ComplexPtr complex, int d);

/// f^*G: stalk at sigma is G's stalk at f(sigma); restrictions are G's
/// restrictions between the images, identity where f collapses the incidence.
CellularSheaf pullback(const SimplicialMap& f, const CellularSheaf& g);

/// Components of phi at the image simplices.
SheafMorphism pullback(const SimplicialMap& f, const SheafMorphism& phi, SheafPtr source,
                       SheafPtr target);

/// Extension by zero along an inclusion.
CellularSheaf extend_by_zero(const SimplicialMap& iota, const CellularSheaf& f);

CellularCosheaf dualize(const CellularSheaf& f);

/// F -> iota_* iota^* F: identity on the image of iota, zero elsewhere.
SheafMorphism unit_map(const SimplicialMap& iota, SheafPtr f);

SheafMorphism identity_morphism(SheafPtr f);
SheafMorphism compose(const SheafMorphism& psi, const SheafMorphism& phi);  // psi after phi

bool same_sheaf(const CellularSheaf& a, const CellularSheaf& b);

}  // namespace psc
