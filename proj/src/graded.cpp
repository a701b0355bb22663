#include "psc/graded.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace psc {

std::vector<std::string> check_homogeneous(const HomogeneousMatrix& m) {
  std::vector<std::string> out;
  if (m.scalar.rows() != m.target.size() || m.scalar.cols() != m.source.size()) {
    out.push_back("homogeneous matrix shape does not match its modules");
    return out;
  }
  for (Eigen::Index j = 0; j < m.scalar.cols(); ++j)
    for (Eigen::Index i = 0; i < m.scalar.rows(); ++i)
      if (m.scalar(i, j) != 0 && m.power(i, j) < 0)
        out.push_back("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                      ") would need t^" + std::to_string(m.power(i, j)));
  return out;
}

HomogeneousMatrix compose(const PrimeField& field, const HomogeneousMatrix& b,
                          const HomogeneousMatrix& a) {
  if (!(b.source == a.target)) throw Error("compose: graded modules do not match");
  return {a.source, b.target, multiply(field, b.scalar, a.scalar)};
}

GradedFreeModule GradedComplex::module(int k) const {
  if (k < 0 || k > top()) return {};
  return modules[k];
}

HomogeneousMatrix GradedComplex::outgoing(int k) const {
  if (k >= 0 && k <= top()) return differential[k];
  GradedFreeModule t = module(chain ? k - 1 : k + 1), s = module(k);
  return {s, t, zeros(t.size(), s.size())};
}

HomogeneousMatrix GradedComplex::incoming(int k) const {
  const int from = chain ? k + 1 : k - 1;
  if (from >= 0 && from <= top()) return differential[from];
  GradedFreeModule s = module(from), t = module(k);
  return {s, t, zeros(t.size(), s.size())};
}

std::vector<std::string> validate_graded_sheaf(const GradedSheaf& gs) {
  std::vector<std::string> out;
  const auto& c = *gs.complex;
  const auto& field = c.field();
  for (std::size_t t = 0; t < c.size(); ++t)
    for (const auto& f : c.faces(t)) {
      auto it = gs.maps.find({f.index, t});
      if (it == gs.maps.end()) {
        out.push_back("missing graded map '" + c[f.index].id + "' -> '" + c[t].id + "'");
        continue;
      }
      if (!(it->second.source == gs.generators[f.index]) || !(it->second.target == gs.generators[t]))
        out.push_back("graded map '" + c[f.index].id + "' -> '" + c[t].id + "' has wrong modules");
      for (auto& v : check_homogeneous(it->second))
        out.push_back("graded map '" + c[f.index].id + "' -> '" + c[t].id + "': " + v);
    }
  if (!out.empty()) return out;
  for (std::size_t t = 0; t < c.size(); ++t) {
    std::map<std::size_t, std::vector<std::size_t>> middles;
    for (const auto& mid : c.faces(t))
      for (const auto& low : c.faces(mid.index)) middles[low.index].push_back(mid.index);
    for (const auto& [low, mids] : middles)
      for (std::size_t a = 1; a < mids.size(); ++a) {
        auto x = compose(field, gs.maps.at({mids[0], t}), gs.maps.at({low, mids[0]}));
        auto y = compose(field, gs.maps.at({mids[a], t}), gs.maps.at({low, mids[a]}));
        if (!same_matrix(x.scalar, y.scalar))
          out.push_back("graded diamond at '" + c[low].id + "' < '" + c[t].id + "' does not commute");
      }
  }
  return out;
}

bool is_monomorphic(const SheafDiagram& d) {
  const auto& field = d.complex().field();
  for (const auto& phi : d.maps)
    for (const auto& m : phi.components)
      if (static_cast<Eigen::Index>(rank(field, m)) != m.cols()) return false;
  return true;
}

GradedSheaf diagram_to_graded_sheaf(const SheafDiagram& d) {
  require_valid(d);
  const auto& c = d.complex();
  const auto& field = c.field();
  const int m = d.length();
  GradedSheaf gs{d.sheaves.front()->complex_ptr(), std::vector<GradedFreeModule>(c.size()), {}};
  // bases[s][i]: columns are the generators alive at step i, pushed forward to step i
  std::vector<std::vector<Matrix>> bases(c.size());
  for (std::size_t s = 0; s < c.size(); ++s) {
    const int d0 = d.sheaves[0]->stalk(s);
    bases[s].push_back(identity(d0));
    gs.generators[s].degrees.assign(static_cast<std::size_t>(d0), 0);
    for (int i = 0; i + 1 < m; ++i) {
      const Matrix& step = d.maps[i].components[s];
      if (static_cast<Eigen::Index>(rank(field, step)) != step.cols())
        throw Error("diagram not free at '" + c[s].id + "', step " + std::to_string(i));
      Matrix next = multiply(field, step, bases[s].back());
      std::size_t r = rank(field, next);
      for (Eigen::Index e = 0; e < step.rows(); ++e) {
        Matrix trial = hstack(next, Matrix(Vector::Unit(step.rows(), e)));
        if (rank(field, trial) > r) {
          next = trial;
          ++r;
          gs.generators[s].degrees.push_back(i + 1);
        }
      }
      bases[s].push_back(next);
    }
  }
  for (std::size_t t = 0; t < c.size(); ++t)
    for (const auto& f : c.faces(t)) {
      const std::size_t s = f.index;
      const auto& src = gs.generators[s];
      const auto& tgt = gs.generators[t];
      Matrix scalar = zeros(tgt.size(), src.size());
      for (Eigen::Index g = 0; g < src.size(); ++g) {
        const int a = src.degrees[g];
        const Vector v = multiply(field, d.sheaves[a]->restriction(s, t), bases[s][a].col(g));
        const Matrix& bt = bases[t][a];
        auto x = ColumnReduction(field, bt).solve(v);
        if (!x) throw Error("diagram_to_graded_sheaf: restriction leaves the stalk");
        scalar.block(0, g, bt.cols(), 1) = *x;
      }
      gs.maps[{s, t}] = {src, tgt, scalar};
    }
  return gs;
}

CellularSheaf evaluate_at(const GradedSheaf& gs, int n) {
  const auto& c = *gs.complex;
  std::vector<int> stalks(c.size());
  for (std::size_t s = 0; s < c.size(); ++s)
    stalks[s] = static_cast<int>(std::count_if(gs.generators[s].degrees.begin(),
                                               gs.generators[s].degrees.end(),
                                               [&](int a) { return a <= n; }));
  std::map<IncidenceKey, Matrix> r;
  for (const auto& [key, hm] : gs.maps) {
    // generators are listed in degree order, so the alive ones form a prefix
    r[key] = hm.scalar.topLeftCorner(stalks[key.second], stalks[key.first]);
  }
  return CellularSheaf(gs.complex, std::move(stalks), std::move(r));
}

namespace {

template <typename Gens>
std::vector<std::vector<Block>> graded_layout(const FilteredComplex& c, const Gens& gens,
                                              std::vector<GradedFreeModule>& modules) {
  std::vector<std::vector<Block>> blocks(static_cast<std::size_t>(c.dimension() + 1));
  modules.assign(blocks.size(), {});
  for (int k = 0; k <= c.dimension(); ++k) {
    Eigen::Index off = 0;
    for (std::size_t s : c.of_dim(k)) {
      const auto& g = gens[s];
      blocks[k].push_back({s, off, g.size()});
      modules[k].degrees.insert(modules[k].degrees.end(), g.degrees.begin(), g.degrees.end());
      off += g.size();
    }
  }
  return blocks;
}

}  // namespace

GradedComplex graded_cochain_complex(const GradedSheaf& gs) {
  const auto& c = *gs.complex;
  GradedComplex gc{c.field(), false, {}, {}, {}};
  gc.blocks = graded_layout(c, gs.generators, gc.modules);
  for (int k = 0; k <= gc.top(); ++k) {
    GradedFreeModule tgt = gc.module(k + 1);
    Matrix d = zeros(tgt.size(), gc.modules[k].size());
    if (k < gc.top()) {
      std::unordered_map<std::size_t, const Block*> row_of;
      for (const auto& b : gc.blocks[k + 1]) row_of[b.simplex] = &b;
      for (const auto& sb : gc.blocks[k])
        for (const auto& cf : c.cofaces(sb.simplex)) {
          const Block& tb = *row_of.at(cf.index);
          const Matrix& r = gs.maps.at({sb.simplex, cf.index}).scalar;
          d.block(tb.offset, sb.offset, tb.size, sb.size) = cf.sign > 0 ? r : scaled(c.field(), r, -1);
        }
    }
    gc.differential.push_back({gc.modules[k], tgt, d});
  }
  return gc;
}

GradedComplex graded_chain_complex(const GradedCosheaf& gcs) {
  const auto& c = *gcs.complex;
  GradedComplex gc{c.field(), true, {}, {}, {}};
  gc.blocks = graded_layout(c, gcs.generators, gc.modules);
  for (int k = 0; k <= gc.top(); ++k) {
    GradedFreeModule tgt = gc.module(k - 1);
    Matrix d = zeros(tgt.size(), gc.modules[k].size());
    if (k > 0) {
      std::unordered_map<std::size_t, const Block*> row_of;
      for (const auto& b : gc.blocks[k - 1]) row_of[b.simplex] = &b;
      for (const auto& tb : gc.blocks[k])
        for (const auto& face : c.faces(tb.simplex)) {
          const Block& sb = *row_of.at(face.index);
          const Matrix& e = gcs.maps.at({face.index, tb.simplex}).scalar;
          d.block(sb.offset, tb.offset, sb.size, tb.size) = face.sign > 0 ? e : scaled(c.field(), e, -1);
        }
    }
    gc.differential.push_back({gc.modules[k], tgt, d});
  }
  return gc;
}

Slice evaluate_at(const GradedComplex& gc, int n) {
  Slice out{CochainComplex{gc.field, gc.chain, {}, {}}, {}};
  std::vector<std::vector<Eigen::Index>> alive(gc.modules.size()), alive_next(gc.modules.size());
  for (std::size_t k = 0; k < gc.modules.size(); ++k)
    for (Eigen::Index g = 0; g < gc.modules[k].size(); ++g) {
      if (gc.modules[k].degrees[g] <= n) alive[k].push_back(g);
      if (gc.modules[k].degrees[g] <= n + 1) alive_next[k].push_back(g);
    }
  for (std::size_t k = 0; k < gc.modules.size(); ++k) {
    std::vector<Block> blocks;
    Eigen::Index off = 0;
    for (const auto& b : gc.blocks[k]) {
      Eigen::Index cnt = 0;
      for (Eigen::Index g = b.offset; g < b.offset + b.size; ++g)
        if (gc.modules[k].degrees[g] <= n) ++cnt;
      blocks.push_back({b.simplex, off, cnt});
      off += cnt;
    }
    out.complex.blocks.push_back(std::move(blocks));
  }
  for (int k = 0; k <= gc.top(); ++k) {
    const int t = gc.chain ? k - 1 : k + 1;
    const auto& src = alive[k];
    static const std::vector<Eigen::Index> none;
    const auto& tgt = (t >= 0 && t <= gc.top()) ? alive[t] : none;
    Matrix d(static_cast<Eigen::Index>(tgt.size()), static_cast<Eigen::Index>(src.size()));
    for (std::size_t j = 0; j < src.size(); ++j)
      for (std::size_t i = 0; i < tgt.size(); ++i)
        d(i, j) = gc.differential[k].scalar(tgt[i], src[j]);
    out.complex.differential.push_back(std::move(d));
    Matrix tm = zeros(static_cast<Eigen::Index>(alive_next[k].size()),
                      static_cast<Eigen::Index>(src.size()));
    for (std::size_t j = 0; j < src.size(); ++j) {
      auto pos = std::find(alive_next[k].begin(), alive_next[k].end(), src[j]) - alive_next[k].begin();
      tm(pos, j) = 1;
    }
    out.t_maps.push_back(std::move(tm));
  }
  return out;
}

namespace {

void require_homogeneous(const HomogeneousMatrix& m, const char* what) {
  auto v = check_homogeneous(m);
  if (!v.empty()) throw HomogeneityError(std::string(what) + ": " + v.front());
}

std::vector<Eigen::Index> degree_order(const std::vector<int>& degrees) {
  std::vector<Eigen::Index> order(degrees.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return degrees[a] < degrees[b]; });
  return order;
}

Eigen::Index lowest_nonzero(const Matrix& m, Eigen::Index j) {
  for (Eigen::Index i = m.rows() - 1; i >= 0; --i)
    if (m(i, j) != 0) return i;
  return -1;
}

// Column reduction that only adds a column into one of equal or larger degree.
// Returns the lows; `v` receives the column transform.
std::vector<Eigen::Index> homogeneous_reduce(const PrimeField& field, Matrix& r, Matrix& v,
                                             const std::vector<int>& col_deg) {
  const std::int64_t p = field.modulus();
  v = identity(r.cols());
  std::vector<Eigen::Index> low(static_cast<std::size_t>(r.cols()), -1);
  std::vector<Eigen::Index> owner(static_cast<std::size_t>(r.rows()), -1);
  for (Eigen::Index j = 0; j < r.cols(); ++j) {
    for (;;) {
      const Eigen::Index l = lowest_nonzero(r, j);
      if (l < 0) break;
      const Eigen::Index o = owner[l];
      if (o < 0) {
        owner[l] = j;
        low[j] = l;
        break;
      }
      if (col_deg[o] > col_deg[j])
        throw HomogeneityError("column of degree " + std::to_string(col_deg[o]) +
                               " added into column of degree " + std::to_string(col_deg[j]));
      const std::int64_t f = field.neg(field.mul(r(l, j), field.inv(r(l, o))));
      for (Eigen::Index i = 0; i < r.rows(); ++i) r(i, j) = (r(i, j) + f * r(i, o)) % p;
      for (Eigen::Index i = 0; i < v.rows(); ++i) v(i, j) = (v(i, j) + f * v(i, o)) % p;
    }
  }
  return low;
}

}  // namespace

Barcode graded_barcode(const GradedComplex& gc, int k) {
  const PrimeField& field = gc.field;
  const std::int64_t p = field.modulus();
  const HomogeneousMatrix out_map = gc.outgoing(k);
  const HomogeneousMatrix in_map = gc.incoming(k);
  require_homogeneous(out_map, "outgoing differential");
  require_homogeneous(in_map, "incoming differential");
  const std::vector<int>& deg = out_map.source.degrees;
  const Eigen::Index n = static_cast<Eigen::Index>(deg.size());

  // 1. homogeneous kernel basis of the outgoing map, columns by degree
  const auto order = degree_order(deg);
  std::vector<int> sorted_deg(order.size());
  Matrix r(out_map.scalar.rows(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    r.col(j) = out_map.scalar.col(order[j]);
    sorted_deg[j] = deg[order[j]];
  }
  Matrix v;
  const auto low = homogeneous_reduce(field, r, v, sorted_deg);
  std::vector<Eigen::Index> kernel_cols;  // positions in sorted order
  std::vector<int> kdeg;
  std::vector<Eigen::Index> kernel_at(static_cast<std::size_t>(n), -1);
  for (Eigen::Index j = 0; j < n; ++j)
    if (low[j] < 0) {
      kernel_at[j] = static_cast<Eigen::Index>(kernel_cols.size());
      kernel_cols.push_back(j);
      kdeg.push_back(sorted_deg[j]);
    }
  for (Eigen::Index c : kernel_cols)
    for (Eigen::Index i = 0; i < n; ++i)
      if (v(i, c) != 0 && sorted_deg[i] > sorted_deg[c])
        throw HomogeneityError("kernel generator is not homogeneous");

  // 2. coordinates of incoming columns in the kernel basis. Column c of v has
  // its highest nonzero sorted position at c itself, so elimination from the
  // top down never touches generators born after the incoming column.
  const std::vector<int>& udeg = in_map.source.degrees;
  const Eigen::Index s = static_cast<Eigen::Index>(kernel_cols.size());
  const auto uorder = degree_order(udeg);
  std::vector<int> sorted_u(uorder.size());
  Matrix coeff = zeros(s, static_cast<Eigen::Index>(uorder.size()));
  for (std::size_t jj = 0; jj < uorder.size(); ++jj) {
    const Eigen::Index j = uorder[jj];
    sorted_u[jj] = udeg[j];
    Vector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = in_map.scalar(order[i], j);
    for (Eigen::Index pos = n - 1; pos >= 0; --pos) {
      if (x(pos) == 0) continue;
      const Eigen::Index kc = kernel_at[pos];
      if (kc < 0) throw Error("graded_barcode: incoming column is not a cycle");
      if (kdeg[kc] > udeg[j]) throw HomogeneityError("incoming column needs a younger kernel generator");
      const std::int64_t f = x(pos);  // v(pos, pos) == 1
      coeff(kc, static_cast<Eigen::Index>(jj)) = f;
      const std::int64_t nf = field.neg(f);
      const Eigen::Index col = kernel_cols[kc];
      for (Eigen::Index i = 0; i <= pos; ++i) x(i) = (x(i) + nf * v(i, col)) % p;
    }
  }

  // 3. graded Smith form of coeff: rows are kernel generators by degree,
  // columns are relations by degree.
  Matrix rr = coeff, vv;
  const auto rlow = homogeneous_reduce(field, rr, vv, sorted_u);
  for (Eigen::Index j = 0; j < rr.cols(); ++j) {
    const Eigen::Index l = rlow[j];
    if (l < 0) continue;
    for (Eigen::Index i = 0; i < l; ++i) {
      if (rr(i, j) == 0) continue;
      if (kdeg[l] < kdeg[i]) throw HomogeneityError("row operation against degree order");
      const std::int64_t f = field.neg(field.mul(rr(i, j), field.inv(rr(l, j))));
      for (Eigen::Index c = 0; c < rr.cols(); ++c) rr(i, c) = (rr(i, c) + f * rr(l, c)) % p;
    }
  }

  // 4. read off bars
  std::vector<Bar> bars;
  std::vector<bool> paired(static_cast<std::size_t>(s), false);
  for (Eigen::Index j = 0; j < rr.cols(); ++j) {
    const Eigen::Index l = rlow[j];
    if (l < 0) continue;
    paired[l] = true;
    if (sorted_u[j] > kdeg[l]) bars.push_back({kdeg[l], sorted_u[j] - 1});
  }
  for (Eigen::Index i = 0; i < s; ++i)
    if (!paired[i]) bars.push_back({kdeg[i], std::nullopt});
  return make_barcode(k, std::move(bars));
}

PersistenceModule type_a_module(const SheafDiagram& d, int k) {
  require_valid(d);
  PersistenceModule pm{d.complex().field(), {}, {}};
  std::vector<CohomologyBasis> bases;
  for (const auto& f : d.sheaves) {
    bases.push_back(cohomology_basis(*f, k));
    pm.dims.push_back(bases.back().dim());
  }
  for (std::size_t i = 0; i < d.maps.size(); ++i)
    pm.maps.push_back(induced_by_sheaf_morphism(d.maps[i], bases[i], bases[i + 1]));
  return pm;
}

Barcode type_a_pointwise(const SheafDiagram& d, int k) {
  return decompose_by_ranks(type_a_module(d, k), k);
}

Barcode type_a_graded(const SheafDiagram& d, int k) {
  return graded_barcode(graded_cochain_complex(diagram_to_graded_sheaf(d)), k);
}

}  // namespace psc
