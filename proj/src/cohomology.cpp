#include "psc/cohomology.hpp"

#include <unordered_map>

namespace psc {

Eigen::Index CochainComplex::dim(int k) const {
  if (k < 0 || k > top()) return 0;
  Eigen::Index d = 0;
  for (const auto& b : blocks[k]) d += b.size;
  return d;
}

Matrix CochainComplex::outgoing(int k) const {
  if (k >= 0 && k <= top()) return differential[k];
  return zeros(dim(chain ? k - 1 : k + 1), dim(k));
}

Matrix CochainComplex::incoming(int k) const {
  const int from = chain ? k + 1 : k - 1;
  if (from >= 0 && from <= top()) return differential[from];
  return zeros(dim(k), dim(from));
}

CohomologyBasis::CohomologyBasis(const CochainComplex& cc, int k)
    : field_(cc.field), degree_(k) {
  if (k >= 0 && k <= cc.top()) layout_ = cc.blocks[k];
  const Eigen::Index n = cc.dim(k);
  const Matrix z = kernel_basis(field_, cc.outgoing(k));
  const Matrix b = cc.incoming(k);
  // keep the kernel columns that are independent modulo the boundaries
  ColumnReduction red(field_, hstack(b, z));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < z.cols(); ++j)
    if (red.pivot_row(b.cols() + j) >= 0) keep.push_back(j);
  reps_ = Matrix(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) reps_.col(c) = z.col(keep[c]);
  solver_ = std::make_shared<const ColumnReduction>(field_, hstack(reps_, b));
}

Vector CohomologyBasis::coordinates(const Vector& z) const {
  auto x = solver_->solve(z);
  if (!x) throw Error("vector is not a cocycle of degree " + std::to_string(degree_));
  return x->head(reps_.cols());
}

Matrix CohomologyBasis::coordinates(const Matrix& zs) const {
  Matrix out(reps_.cols(), zs.cols());
  for (Eigen::Index j = 0; j < zs.cols(); ++j) out.col(j) = coordinates(Vector(zs.col(j)));
  return out;
}

namespace {

template <typename StalkOf>
std::vector<std::vector<Block>> layout(const FilteredComplex& c, StalkOf stalk) {
  std::vector<std::vector<Block>> blocks(static_cast<std::size_t>(c.dimension() + 1));
  for (int k = 0; k <= c.dimension(); ++k) {
    Eigen::Index off = 0;
    for (std::size_t s : c.of_dim(k)) {
      blocks[k].push_back({s, off, stalk(s)});
      off += stalk(s);
    }
  }
  return blocks;
}

}  // namespace

CochainComplex cochain_complex(const CellularSheaf& f) {
  const auto& c = f.complex();
  CochainComplex cc{f.field(), false, layout(c, [&](std::size_t s) { return f.stalk(s); }), {}};
  for (int k = 0; k <= cc.top(); ++k) {
    Matrix d = zeros(cc.dim(k + 1), cc.dim(k));
    if (k < cc.top()) {
      std::unordered_map<std::size_t, const Block*> row_of;
      for (const auto& b : cc.blocks[k + 1]) row_of[b.simplex] = &b;
      for (const auto& sb : cc.blocks[k])
        for (const auto& cf : c.cofaces(sb.simplex)) {
          const Block& tb = *row_of.at(cf.index);
          const Matrix& r = f.restriction(sb.simplex, cf.index);
          d.block(tb.offset, sb.offset, tb.size, sb.size) =
              cf.sign > 0 ? r : scaled(f.field(), r, -1);
        }
    }
    cc.differential.push_back(std::move(d));
  }
  return cc;
}

CochainComplex chain_complex(const CellularCosheaf& f) {
  const auto& c = f.complex();
  CochainComplex cc{f.field(), true, layout(c, [&](std::size_t s) { return f.stalk(s); }), {}};
  for (int k = 0; k <= cc.top(); ++k) {
    Matrix d = zeros(cc.dim(k - 1), cc.dim(k));
    if (k > 0) {
      std::unordered_map<std::size_t, const Block*> row_of;
      for (const auto& b : cc.blocks[k - 1]) row_of[b.simplex] = &b;
      for (const auto& tb : cc.blocks[k])
        for (const auto& face : c.faces(tb.simplex)) {
          const Block& sb = *row_of.at(face.index);
          const Matrix& e = f.extension(face.index, tb.simplex);
          d.block(sb.offset, tb.offset, sb.size, tb.size) =
              face.sign > 0 ? e : scaled(f.field(), e, -1);
        }
    }
    cc.differential.push_back(std::move(d));
  }
  return cc;
}

CohomologyBasis cohomology_basis(const CellularSheaf& f, int k) {
  return CohomologyBasis(cochain_complex(f), k);
}

CohomologyBasis cosheaf_homology_basis(const CellularCosheaf& f, int k) {
  return CohomologyBasis(chain_complex(f), k);
}

HomologyBasis simplicial_homology_basis(const ComplexPtr& k, int n) {
  return cosheaf_homology_basis(dualize(constant(k, 1)), n);
}

std::vector<Eigen::Index> cohomology_dims(const CellularSheaf& f) {
  const auto cc = cochain_complex(f);
  std::vector<Eigen::Index> out;
  for (int k = 0; k <= cc.top(); ++k) out.push_back(CohomologyBasis(cc, k).dim());
  return out;
}

namespace {

Matrix block_diagonal(const std::vector<Block>& from, const std::vector<Block>& to,
                      const std::vector<Matrix>& components) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : to) rows += b.size;
  for (const auto& b : from) cols += b.size;
  Matrix out = zeros(rows, cols);
  for (std::size_t i = 0; i < from.size(); ++i)
    out.block(to[i].offset, from[i].offset, to[i].size, from[i].size) =
        components[from[i].simplex];
  return out;
}

}  // namespace

Matrix induced_by_sheaf_morphism(const SheafMorphism& phi, const CohomologyBasis& from,
                                 const CohomologyBasis& to) {
  const Matrix chain_map = block_diagonal(from.layout(), to.layout(), phi.components);
  return to.coordinates(multiply(from.field(), chain_map, from.representatives()));
}

Matrix induced_by_sheaf_morphism(const SheafMorphism& phi, int k) {
  return induced_by_sheaf_morphism(phi, cohomology_basis(*phi.source, k),
                                   cohomology_basis(*phi.target, k));
}

Matrix cochain_pullback(const SimplicialMap& f, const CellularSheaf& on_target,
                        const CellularSheaf& on_source, int k) {
  const auto& src = f.source();
  const auto& tgt = f.target();
  std::unordered_map<std::size_t, Eigen::Index> col_off;
  Eigen::Index cols = 0;
  for (std::size_t t : tgt.of_dim(k)) {
    col_off[t] = cols;
    cols += on_target.stalk(t);
  }
  Eigen::Index rows = 0;
  for (std::size_t s : src.of_dim(k)) rows += on_source.stalk(s);
  Matrix out = zeros(rows, cols);
  Eigen::Index row = 0;
  for (std::size_t s : src.of_dim(k)) {
    const int d = on_source.stalk(s);
    if (f.sign(s) != 0) {
      const Eigen::Index c = col_off.at(f.image(s));
      for (int i = 0; i < d; ++i) out(row + i, c + i) = on_source.field().reduce(f.sign(s));
    }
    row += d;
  }
  return out;
}

Matrix induced_by_simplicial_map(const SimplicialMap& f, const CellularSheaf& on_target,
                                 const CellularSheaf& on_source, const CohomologyBasis& from,
                                 const CohomologyBasis& to) {
  const Matrix m = cochain_pullback(f, on_target, on_source, from.degree());
  return to.coordinates(multiply(from.field(), m, from.representatives()));
}

Matrix induced_by_simplicial_map(const SimplicialMap& f, const CellularSheaf& on_target, int k) {
  const CellularSheaf pulled = pullback(f, on_target);
  return induced_by_simplicial_map(f, on_target, pulled, cohomology_basis(on_target, k),
                                   cohomology_basis(pulled, k));
}

Vector transport_chain(const Vector& v, const FilteredComplex& from_complex,
                       const std::vector<Block>& from, const FilteredComplex& to_complex,
                       const std::vector<Block>& to, Eigen::Index to_dim) {
  std::unordered_map<std::size_t, const Block*> by_simplex;
  for (const auto& b : to) by_simplex[b.simplex] = &b;
  Vector out = Vector::Zero(to_dim);
  for (const auto& b : from) {
    auto seg = v.segment(b.offset, b.size);
    auto idx = to_complex.find(from_complex[b.simplex].vertices);
    const Block* tb = idx ? by_simplex.count(*idx) ? by_simplex.at(*idx) : nullptr : nullptr;
    if (!tb) {
      if (!(seg.array() == 0).all())
        throw Error("transport_chain: support leaves the target complex");
      continue;
    }
    if (tb->size != b.size) throw Error("transport_chain: stalk sizes differ");
    out.segment(tb->offset, tb->size) = seg;
  }
  return out;
}

}  // namespace psc
