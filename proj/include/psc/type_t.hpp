#pragma once

#include <vector>

#include "psc/complex.hpp"
#include "psc/graded.hpp"
#include "psc/persistence.hpp"
#include "psc/sheaf.hpp"

namespace psc {

/// A filtration together with a sheaf on its final complex.
struct TypeTInput {
  ComplexPtr filtration;
  SheafPtr sheaf;

  int steps() const { return filtration->steps(); }
};

std::vector<std::string> validate_type_t(const TypeTInput& in);

/// Step subcomplexes X_0 .. X_{m-1}.
std::vector<ComplexPtr> step_complexes(const FilteredComplex& c);

/// F^i: the sheaf pulled back to each step subcomplex.
std::vector<SheafPtr> pullback_chain(const TypeTInput& in);

struct TypeTResult {
  CopersistenceModule module;
  Barcode barcode;
};

/// dims H^k(X_i, F^i) with the maps induced by the inclusions X_i -> X_{i+1}.
TypeTResult type_t_direct(const TypeTInput& in, int k);

/// G_i = extension by zero of F^i; maps[i] : sheaves[i+1] -> sheaves[i].
struct CodiagramOfSheaves {
  std::vector<SheafPtr> sheaves;
  std::vector<SheafMorphism> maps;
};
CodiagramOfSheaves g_chain(const TypeTInput& in);

/// The G-chain read backwards, as an ordinary sheaf diagram.
SheafDiagram mirrored_g_chain(const TypeTInput& in);

/// Cosheaf of free graded modules: stalk_dim(sigma) generators of degree
/// entry(sigma); extensions are transposed restrictions.
GradedCosheaf type_t_graded_cosheaf(const TypeTInput& in);

/// Homology barcode of the graded chain complex of that cosheaf.
Barcode type_t_graded(const TypeTInput& in, int k);

}  // namespace psc
