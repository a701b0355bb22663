#include "psc/sheaf.hpp"


namespace psc {

namespace {

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

std::string incidence_name(const FilteredComplex& c, std::size_t face, std::size_t coface) {
  return "'" + c[face].id + "' -> '" + c[coface].id + "'";
}

void fill_zero_gaps(const FilteredComplex& c, const std::vector<int>& stalks,
                    std::map<IncidenceKey, Matrix>& maps, bool cosheaf) {
  for (std::size_t t = 0; t < c.size(); ++t)
    for (const auto& f : c.faces(t)) {
      const IncidenceKey key{f.index, t};
      if (maps.count(key)) continue;
      if (stalks[f.index] == 0 || stalks[t] == 0) {
        maps[key] = cosheaf ? zeros(stalks[f.index], stalks[t]) : zeros(stalks[t], stalks[f.index]);
      }
    }
}

bool same_simplices(const FilteredComplex& a, const FilteredComplex& b) {
  if (&a == &b) return true;
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].vertices != b[i].vertices) return false;
  return true;
}

}  // namespace

CellularSheaf::CellularSheaf(ComplexPtr complex, std::vector<int> stalks,
                             std::map<IncidenceKey, Matrix> restrictions)
    : complex_(std::move(complex)), stalks_(std::move(stalks)), restrictions_(std::move(restrictions)) {
  if (stalks_.size() != complex_->size())
    throw Error("sheaf: stalk count does not match the complex");
  fill_zero_gaps(*complex_, stalks_, restrictions_, false);
}

bool CellularSheaf::has_restriction(std::size_t face, std::size_t coface) const {
  return restrictions_.count({face, coface}) > 0;
}

const Matrix& CellularSheaf::restriction(std::size_t face, std::size_t coface) const {
  auto it = restrictions_.find({face, coface});
  if (it == restrictions_.end())
    throw Error("no restriction " + incidence_name(*complex_, face, coface));
  return it->second;
}

Matrix CellularSheaf::restriction_between(std::size_t face, std::size_t coface) const {
  const auto& c = *complex_;
  if (!is_face(c[face].vertices, c[coface].vertices))
    throw Error("restriction_between: " + incidence_name(c, face, coface) + " is not a face relation");
  Matrix acc = identity(stalks_[face]);
  std::size_t cur = face;
  while (cur != coface) {
    // step up through any coface that stays below the target
    std::size_t next = cur;
    for (const auto& cf : c.cofaces(cur))
      if (is_face(c[cf.index].vertices, c[coface].vertices)) {
        next = cf.index;
        break;
      }
    if (next == cur) throw Error("restriction_between: complex is not closed under faces");
    acc = multiply(field(), restriction(cur, next), acc);
    cur = next;
  }
  return acc;
}

CellularCosheaf::CellularCosheaf(ComplexPtr complex, std::vector<int> stalks,
                                 std::map<IncidenceKey, Matrix> extensions)
    : complex_(std::move(complex)), stalks_(std::move(stalks)), extensions_(std::move(extensions)) {
  if (stalks_.size() != complex_->size())
    throw Error("cosheaf: stalk count does not match the complex");
  fill_zero_gaps(*complex_, stalks_, extensions_, true);
}

const Matrix& CellularCosheaf::extension(std::size_t face, std::size_t coface) const {
  auto it = extensions_.find({face, coface});
  if (it == extensions_.end())
    throw Error("no extension " + incidence_name(*complex_, coface, face));
  return it->second;
}

namespace {

// Shared shape and diamond checks. `get(face, coface)` returns the stored
// matrix or nullptr; `compose` builds the two-step map along face<mid<top.
template <typename Get, typename Compose>
void check_maps(const FilteredComplex& c, const std::vector<int>& stalks, bool cosheaf,
                const PrimeField& field, Get get, Compose compose2, std::vector<std::string>& out) {
  for (std::size_t t = 0; t < c.size(); ++t)
    for (const auto& f : c.faces(t)) {
      const Matrix* m = get(f.index, t);
      const std::string name = incidence_name(c, f.index, t);
      if (!m) {
        out.push_back("missing map " + name);
        continue;
      }
      const Eigen::Index r = cosheaf ? stalks[f.index] : stalks[t];
      const Eigen::Index k = cosheaf ? stalks[t] : stalks[f.index];
      if (m->rows() != r || m->cols() != k) {
        out.push_back("map " + name + " has shape " + shape(*m) + ", expected " +
                      std::to_string(r) + "x" + std::to_string(k));
        continue;
      }
      for (Eigen::Index i = 0; i < m->size(); ++i)
        if (m->data()[i] < 0 || m->data()[i] >= field.modulus()) {
          out.push_back("map " + name + " has an entry outside [0, p)");
          break;
        }
    }
  if (!out.empty()) return;
  // diamonds: every codimension-2 pair sigma < tau has exactly two middles
  for (std::size_t t = 0; t < c.size(); ++t) {
    std::map<std::size_t, std::vector<std::size_t>> middles;
    for (const auto& mid : c.faces(t))
      for (const auto& low : c.faces(mid.index)) middles[low.index].push_back(mid.index);
    for (const auto& [low, mids] : middles) {
      for (std::size_t a = 1; a < mids.size(); ++a) {
        Matrix x = compose2(low, mids[0], t);
        Matrix y = compose2(low, mids[a], t);
        if (!same_matrix(x, y))
          out.push_back("diamond '" + c[low].id + "' < {'" + c[mids[0]].id + "', '" +
                        c[mids[a]].id + "'} < '" + c[t].id + "' does not commute");
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate_sheaf(const CellularSheaf& f) {
  std::vector<std::string> out = validate(f.complex());
  if (!out.empty()) return out;
  for (std::size_t i = 0; i < f.stalks().size(); ++i)
    if (f.stalk(i) < 0) out.push_back("negative stalk at '" + f.complex()[i].id + "'");
  if (!out.empty()) return out;
  for (const auto& [key, m] : f.restrictions()) {
    const auto& c = f.complex();
    if (incidence_sign(c[key.first].vertices, c[key.second].vertices) == 0)
      out.push_back("restriction " + incidence_name(c, key.first, key.second) +
                    " is not a codimension-1 incidence");
  }
  check_maps(
      f.complex(), f.stalks(), false, f.field(),
      [&](std::size_t a, std::size_t b) -> const Matrix* {
        auto it = f.restrictions().find({a, b});
        return it == f.restrictions().end() ? nullptr : &it->second;
      },
      [&](std::size_t low, std::size_t mid, std::size_t top) {
        return multiply(f.field(), f.restriction(mid, top), f.restriction(low, mid));
      },
      out);
  return out;
}

std::vector<std::string> validate_cosheaf(const CellularCosheaf& f) {
  std::vector<std::string> out = validate(f.complex());
  if (!out.empty()) return out;
  check_maps(
      f.complex(), f.stalks(), true, f.field(),
      [&](std::size_t a, std::size_t b) -> const Matrix* {
        auto it = f.extensions().find({a, b});
        return it == f.extensions().end() ? nullptr : &it->second;
      },
      [&](std::size_t low, std::size_t mid, std::size_t top) {
        return multiply(f.field(), f.extension(low, mid), f.extension(mid, top));
      },
      out);
  return out;
}

std::vector<std::string> validate_morphism(const SheafMorphism& phi) {
  std::vector<std::string> out;
  if (!phi.source || !phi.target) return {"morphism without source or target"};
  const auto& s = *phi.source;
  const auto& t = *phi.target;
  if (!same_simplices(s.complex(), t.complex()))
    return {"morphism between sheaves on different complexes"};
  const auto& c = s.complex();
  if (phi.components.size() != c.size()) return {"morphism needs one component per simplex"};
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Matrix& m = phi.components[i];
    if (m.rows() != t.stalk(i) || m.cols() != s.stalk(i))
      out.push_back("component at '" + c[i].id + "' has shape " + shape(m) + ", expected " +
                    std::to_string(t.stalk(i)) + "x" + std::to_string(s.stalk(i)));
  }
  if (!out.empty()) return out;
  for (std::size_t tau = 0; tau < c.size(); ++tau)
    for (const auto& f : c.faces(tau)) {
      Matrix left = multiply(s.field(), phi.components[tau], s.restriction(f.index, tau));
      Matrix right = multiply(s.field(), t.restriction(f.index, tau), phi.components[f.index]);
      if (!same_matrix(left, right))
        out.push_back("morphism not natural at " + incidence_name(c, f.index, tau));
    }
  return out;
}

std::vector<std::string> validate_diagram(const SheafDiagram& d) {
  std::vector<std::string> out;
  if (d.sheaves.empty()) return {"diagram has no sheaves"};
  if (d.maps.size() + 1 != d.sheaves.size())
    return {"diagram needs one morphism between consecutive sheaves"};
  for (std::size_t i = 0; i < d.sheaves.size(); ++i) {
    if (d.sheaves[i]->complex_ptr() != d.sheaves[0]->complex_ptr())
      out.push_back("snapshot " + std::to_string(i) + " lives on a different complex");
    for (auto& v : validate_sheaf(*d.sheaves[i]))
      out.push_back("snapshot " + std::to_string(i) + ": " + v);
  }
  if (!out.empty()) return out;
  for (std::size_t i = 0; i < d.maps.size(); ++i) {
    if (d.maps[i].source != d.sheaves[i] || d.maps[i].target != d.sheaves[i + 1]) {
      out.push_back("step " + std::to_string(i) + " does not connect consecutive snapshots");
      continue;
    }
    for (auto& v : validate_morphism(d.maps[i]))
      out.push_back("step " + std::to_string(i) + ": " + v);
  }
  return out;
}

void require_valid(const CellularSheaf& f) {
  auto v = validate_sheaf(f);
  if (!v.empty()) throw ValidationError(std::move(v));
}

void require_valid(const SheafDiagram& d) {
  auto v = validate_diagram(d);
  if (!v.empty()) throw ValidationError(std::move(v));
}

CellularSheaf constant(ComplexPtr complex, int d) {
  std::map<IncidenceKey, Matrix> r;
  for (std::size_t t = 0; t < complex->size(); ++t)
    for (const auto& f : complex->faces(t)) r[{f.index, t}] = identity(d);
  std::vector<int> stalks(complex->size(), d);
  return CellularSheaf(std::move(complex), std::move(stalks), std::move(r));
}

SheafPtr constant_ptr(ComplexPtr complex, int d) {
  return std::make_shared<const CellularSheaf>(constant(std::move(complex), d));
}

CellularSheaf pullback(const SimplicialMap& f, const CellularSheaf& g) {
  const auto& src = f.source();
  std::vector<int> stalks(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) stalks[i] = g.stalk(f.image(i));
  std::map<IncidenceKey, Matrix> r;
  for (std::size_t t = 0; t < src.size(); ++t)
    for (const auto& face : src.faces(t)) {
      const std::size_t a = f.image(face.index), b = f.image(t);
      r[{face.index, t}] = a == b ? identity(stalks[t]) : g.restriction(a, b);
    }
  return CellularSheaf(f.source_ptr(), std::move(stalks), std::move(r));
}

SheafMorphism pullback(const SimplicialMap& f, const SheafMorphism& phi, SheafPtr source,
                       SheafPtr target) {
  SheafMorphism out{std::move(source), std::move(target), {}};
  for (std::size_t i = 0; i < f.source().size(); ++i)
    out.components.push_back(phi.components[f.image(i)]);
  return out;
}

CellularSheaf extend_by_zero(const SimplicialMap& iota, const CellularSheaf& f) {
  if (!iota.is_inclusion()) throw Error("extend_by_zero: map is not an inclusion");
  const auto& tgt = iota.target();
  std::vector<long> pre(tgt.size(), -1);
  for (std::size_t i = 0; i < iota.source().size(); ++i) pre[iota.image(i)] = static_cast<long>(i);
  std::vector<int> stalks(tgt.size(), 0);
  for (std::size_t j = 0; j < tgt.size(); ++j)
    if (pre[j] >= 0) stalks[j] = f.stalk(static_cast<std::size_t>(pre[j]));
  std::map<IncidenceKey, Matrix> r;
  for (std::size_t t = 0; t < tgt.size(); ++t)
    for (const auto& face : tgt.faces(t)) {
      if (pre[t] >= 0 && pre[face.index] >= 0)
        r[{face.index, t}] = f.restriction(static_cast<std::size_t>(pre[face.index]),
                                           static_cast<std::size_t>(pre[t]));
      else
        r[{face.index, t}] = zeros(stalks[t], stalks[face.index]);
    }
  return CellularSheaf(iota.target_ptr(), std::move(stalks), std::move(r));
}

CellularCosheaf dualize(const CellularSheaf& f) {
  std::map<IncidenceKey, Matrix> e;
  for (const auto& [key, m] : f.restrictions()) e[key] = m.transpose();
  return CellularCosheaf(f.complex_ptr(), f.stalks(), std::move(e));
}

SheafMorphism unit_map(const SimplicialMap& iota, SheafPtr f) {
  auto target = std::make_shared<const CellularSheaf>(extend_by_zero(iota, pullback(iota, *f)));
  std::vector<bool> in_image(iota.target().size(), false);
  for (std::size_t i = 0; i < iota.source().size(); ++i) in_image[iota.image(i)] = true;
  SheafMorphism out{f, target, {}};
  for (std::size_t j = 0; j < iota.target().size(); ++j)
    out.components.push_back(in_image[j] ? identity(f->stalk(j)) : zeros(0, f->stalk(j)));
  return out;
}

SheafMorphism identity_morphism(SheafPtr f) {
  SheafMorphism out{f, f, {}};
  for (int d : f->stalks()) out.components.push_back(identity(d));
  return out;
}

SheafMorphism compose(const SheafMorphism& psi, const SheafMorphism& phi) {
  SheafMorphism out{phi.source, psi.target, {}};
  const auto& field = phi.source->field();
  for (std::size_t i = 0; i < phi.components.size(); ++i)
    out.components.push_back(multiply(field, psi.components[i], phi.components[i]));
  return out;
}

bool same_sheaf(const CellularSheaf& a, const CellularSheaf& b) {
  if (a.stalks() != b.stalks()) return false;
  if (a.restrictions().size() != b.restrictions().size()) return false;
  for (const auto& [key, m] : a.restrictions()) {
    auto it = b.restrictions().find(key);
    if (it == b.restrictions().end() || !same_matrix(m, it->second)) return false;
  }
  return true;
}

}  // namespace psc
