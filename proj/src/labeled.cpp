#include "psc/labeled.hpp"

#include "psc/graded.hpp"

namespace psc {

ComplexPtr label_simplex(int r, PrimeField field) {
  std::vector<Simplex> simplices;
  for (int mask = 1; mask < (1 << r); ++mask) {
    std::vector<int> vs;
    for (int v = 0; v < r; ++v)
      if (mask & (1 << v)) vs.push_back(v);
    simplices.push_back({default_simplex_id(vs), vs, 0});
  }
  return make_complex(field, 1, std::move(simplices));
}

LabeledFiltration make_labeled(ComplexPtr k, std::map<int, int> label_of,
                               std::vector<std::string> label_names) {
  std::vector<std::string> bad;
  const int r = static_cast<int>(label_names.size());
  for (int v : k->vertices()) {
    auto it = label_of.find(v);
    if (it == label_of.end())
      bad.push_back("vertex " + std::to_string(v) + " has no label");
    else if (it->second < 0 || it->second >= r)
      bad.push_back("vertex " + std::to_string(v) + " has label index out of range");
  }
  if (r < 1 && !k->empty()) bad.push_back("no labels given");
  if (!bad.empty()) throw ValidationError(std::move(bad));
  ComplexPtr l = label_simplex(std::max(r, 1), k->field());
  return {std::move(k), std::move(l), std::move(label_of), std::move(label_names)};
}

SimplicialMap label_map(const LabeledFiltration& lf, const ComplexPtr& sub) {
  std::map<int, int> vm;
  for (int v : sub->vertices()) vm[v] = lf.label_of.at(v);
  return SimplicialMap(sub, lf.labels, std::move(vm));
}

namespace {

Eigen::Index layout_dim(const std::vector<Block>& layout) {
  Eigen::Index d = 0;
  for (const auto& b : layout) d += b.size;
  return d;
}

}  // namespace

Matrix homology_inclusion(const FilteredComplex& a, const HomologyBasis& ha,
                          const FilteredComplex& b, const HomologyBasis& hb) {
  Matrix out(hb.dim(), ha.dim());
  const Eigen::Index target_dim = layout_dim(hb.layout());
  for (Eigen::Index j = 0; j < ha.dim(); ++j) {
    const Vector moved = transport_chain(Vector(ha.representatives().col(j)), a, ha.layout(), b,
                                         hb.layout(), target_dim);
    out.col(j) = hb.coordinates(moved);
  }
  return out;
}

LabelSheaf label_sheaf(const SimplicialMap& f, int n) {
  const auto& l = f.target();
  LabelSheaf out;
  std::vector<int> stalks;
  for (std::size_t t = 0; t < l.size(); ++t) {
    out.preimages.push_back(std::make_shared<const FilteredComplex>(preimage_subcomplex(f, t)));
    out.bases.push_back(simplicial_homology_basis(out.preimages.back(), n));
    stalks.push_back(static_cast<int>(out.bases.back().dim()));
  }
  std::map<IncidenceKey, Matrix> r;
  for (std::size_t t = 0; t < l.size(); ++t)
    for (const auto& face : l.faces(t))
      r[{face.index, t}] = homology_inclusion(*out.preimages[face.index], out.bases[face.index],
                                              *out.preimages[t], out.bases[t]);
  out.sheaf = std::make_shared<const CellularSheaf>(f.target_ptr(), std::move(stalks), std::move(r));
  return out;
}

SheafDiagram label_diagram(const LabeledFiltration& lf, int n) {
  std::vector<LabelSheaf> per_step;
  for (const auto& sub : step_complexes(*lf.complex))
    per_step.push_back(label_sheaf(label_map(lf, sub), n));
  SheafDiagram d;
  for (const auto& ls : per_step) d.sheaves.push_back(ls.sheaf);
  for (std::size_t i = 0; i + 1 < per_step.size(); ++i) {
    SheafMorphism phi{per_step[i].sheaf, per_step[i + 1].sheaf, {}};
    for (std::size_t t = 0; t < lf.labels->size(); ++t)
      phi.components.push_back(homology_inclusion(*per_step[i].preimages[t], per_step[i].bases[t],
                                                  *per_step[i + 1].preimages[t],
                                                  per_step[i + 1].bases[t]));
    d.maps.push_back(std::move(phi));
  }
  return d;
}

PersistenceModule mixed_feature_module(const LabeledFiltration& lf, int n, int k) {
  return type_a_module(label_diagram(lf, n), k);
}

Barcode mixed_feature_barcodes(const LabeledFiltration& lf, int n, int k) {
  return decompose_by_ranks(mixed_feature_module(lf, n, k), k);
}

CellularSheaf two_label_sheaf(ComplexPtr label_edge) {
  const auto& l = *label_edge;
  if (l.size() != 3 || l.of_dim(0).size() != 2 || l.of_dim(1).size() != 1)
    throw Error("two_label_sheaf: label complex must be a single edge");
  const std::size_t e = l.of_dim(1)[0];
  std::vector<int> stalks(3, 1);
  stalks[e] = 2;
  Matrix first(2, 1), second(2, 1);
  first << 1, 0;
  second << 0, 1;
  std::map<IncidenceKey, Matrix> r;
  const std::size_t v0 = *l.find(std::vector<int>{l[e].vertices[0]});
  const std::size_t v1 = *l.find(std::vector<int>{l[e].vertices[1]});
  r[{v0, e}] = first;
  r[{v1, e}] = second;
  return CellularSheaf(std::move(label_edge), std::move(stalks), std::move(r));
}

TypeTResult unicolored_pipeline(const LabeledFiltration& lf, int k) {
  if (lf.label_count() > 2)
    throw Error("unicolored pipeline needs at most 2 labels, got " + std::to_string(lf.label_count()));
  const ComplexPtr edge = label_simplex(2, lf.complex->field());
  std::map<int, int> vm;
  for (int v : lf.complex->vertices()) vm[v] = lf.label_of.at(v);
  const SimplicialMap f(lf.complex, edge, std::move(vm));
  auto pulled = std::make_shared<const CellularSheaf>(pullback(f, two_label_sheaf(edge)));
  return type_t_direct({lf.complex, pulled}, k);
}

}  // namespace psc
