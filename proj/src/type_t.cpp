#include "psc/type_t.hpp"

#include "psc/cohomology.hpp"

namespace psc {

std::vector<std::string> validate_type_t(const TypeTInput& in) {
  if (!in.filtration || !in.sheaf) return {"type-T input needs a filtration and a sheaf"};
  auto out = validate_sheaf(*in.sheaf);
  const auto& a = in.sheaf->complex();
  const auto& b = *in.filtration;
  bool same = a.size() == b.size();
  for (std::size_t i = 0; same && i < a.size(); ++i)
    same = a[i].vertices == b[i].vertices && a[i].entry == b[i].entry;
  if (!same) out.push_back("sheaf does not live on the filtration's complex");
  return out;
}

std::vector<ComplexPtr> step_complexes(const FilteredComplex& c) {
  std::vector<ComplexPtr> out;
  for (int i = 0; i < c.steps(); ++i) out.push_back(step_complex(c, i));
  return out;
}

std::vector<SheafPtr> pullback_chain(const TypeTInput& in) {
  std::vector<SheafPtr> out;
  for (const auto& x : step_complexes(*in.filtration))
    out.push_back(std::make_shared<const CellularSheaf>(
        pullback(inclusion(x, in.sheaf->complex_ptr()), *in.sheaf)));
  return out;
}

TypeTResult type_t_direct(const TypeTInput& in, int k) {
  auto problems = validate_type_t(in);
  if (!problems.empty()) throw ValidationError(std::move(problems));
  const auto sheaves = pullback_chain(in);
  const int m = in.steps();
  CopersistenceModule mod{in.filtration->field(), {}, {}};
  std::vector<CohomologyBasis> bases;
  for (const auto& f : sheaves) {
    bases.push_back(cohomology_basis(*f, k));
    mod.dims.push_back(bases.back().dim());
  }
  for (int i = 0; i + 1 < m; ++i) {
    const auto iota = inclusion(sheaves[i]->complex_ptr(), sheaves[i + 1]->complex_ptr());
    mod.maps.push_back(
        induced_by_simplicial_map(iota, *sheaves[i + 1], *sheaves[i], bases[i + 1], bases[i]));
  }
  Barcode bc = decompose_copersistence(mod, k);
  return {std::move(mod), std::move(bc)};
}

CodiagramOfSheaves g_chain(const TypeTInput& in) {
  const auto pulled = pullback_chain(in);
  const auto full = in.sheaf->complex_ptr();
  CodiagramOfSheaves out;
  for (const auto& f : pulled)
    out.sheaves.push_back(std::make_shared<const CellularSheaf>(
        extend_by_zero(inclusion(f->complex_ptr(), full), *f)));
  for (std::size_t i = 0; i + 1 < pulled.size(); ++i) {
    // G_{i+1} -> G_i is the unit of X_i -> X, whose target rebuilds G_i
    SheafMorphism phi = unit_map(inclusion(pulled[i]->complex_ptr(), full), out.sheaves[i + 1]);
    if (!same_sheaf(*phi.target, *out.sheaves[i])) throw Error("g_chain: unit target differs from G_i");
    phi.target = out.sheaves[i];
    out.maps.push_back(std::move(phi));
  }
  return out;
}

SheafDiagram mirrored_g_chain(const TypeTInput& in) {
  auto g = g_chain(in);
  SheafDiagram d;
  d.sheaves.assign(g.sheaves.rbegin(), g.sheaves.rend());
  d.maps.assign(g.maps.rbegin(), g.maps.rend());
  return d;
}

GradedCosheaf type_t_graded_cosheaf(const TypeTInput& in) {
  const auto& c = *in.sheaf->complex_ptr();
  GradedCosheaf gcs{in.sheaf->complex_ptr(), std::vector<GradedFreeModule>(c.size()), {}};
  for (std::size_t s = 0; s < c.size(); ++s)
    gcs.generators[s].degrees.assign(static_cast<std::size_t>(in.sheaf->stalk(s)), c[s].entry);
  for (const auto& [key, m] : in.sheaf->restrictions())
    gcs.maps[key] = {gcs.generators[key.second], gcs.generators[key.first], m.transpose()};
  return gcs;
}

Barcode type_t_graded(const TypeTInput& in, int k) {
  auto problems = validate_type_t(in);
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return graded_barcode(graded_chain_complex(type_t_graded_cosheaf(in)), k);
}

}  // namespace psc
