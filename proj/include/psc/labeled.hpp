#pragma once

#include <map>
#include <string>
#include <vector>

#include "psc/cohomology.hpp"
#include "psc/complex.hpp"
#include "psc/persistence.hpp"
#include "psc/sheaf.hpp"
#include "psc/type_t.hpp"

namespace psc {

/// A filtered complex K whose vertices carry one of r labels. The label
/// complex L is the full simplex on the label indices 0..r-1.
struct LabeledFiltration {
  ComplexPtr complex;
  ComplexPtr labels;
  std::map<int, int> label_of;  // vertex of K -> label index
  std::vector<std::string> label_names;

  int label_count() const { return static_cast<int>(label_names.size()); }
};

/// Full simplex on r vertices, single step.
ComplexPtr label_simplex(int r, PrimeField field);

/// Throws ValidationError on unlabeled vertices or out-of-range labels.
LabeledFiltration make_labeled(ComplexPtr k, std::map<int, int> label_of,
                               std::vector<std::string> label_names);

/// The label map restricted to a step subcomplex.
SimplicialMap label_map(const LabeledFiltration& lf, const ComplexPtr& sub);

/// Sheaf on L with stalk H_n(tau_f) at tau, plus the data needed to map
/// homology classes between preimages.
struct LabelSheaf {
  SheafPtr sheaf;
  std::vector<ComplexPtr> preimages;  // per simplex of L
  std::vector<HomologyBasis> bases;   // per simplex of L
};

LabelSheaf label_sheaf(const SimplicialMap& f, int n);

/// Matrix of H_n(a) -> H_n(b) for a subcomplex a of b.
Matrix homology_inclusion(const FilteredComplex& a, const HomologyBasis& ha,
                          const FilteredComplex& b, const HomologyBasis& hb);

/// One label sheaf per step with the morphisms induced by the inclusions.
SheafDiagram label_diagram(const LabeledFiltration& lf, int n);

/// Type-A barcode of label_diagram(lf, n) in degree k, pointwise engine.
Barcode mixed_feature_barcodes(const LabeledFiltration& lf, int n, int k);
PersistenceModule mixed_feature_module(const LabeledFiltration& lf, int n, int k);

/// Two-label sheaf on the label edge: vertex stalks F, edge stalk F^2, the
/// first label included as (1,0), the second as (0,1).
CellularSheaf two_label_sheaf(ComplexPtr label_edge);

/// Pulls the two-label sheaf back to K and runs type-T persistence.
TypeTResult unicolored_pipeline(const LabeledFiltration& lf, int k);

}  // namespace psc
