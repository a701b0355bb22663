#include "psc/complex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace psc {

std::string default_simplex_id(const std::vector<int>& vertices) {
  std::string id = "s";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) id += '_';
    id += std::to_string(vertices[i]);
  }
  return id;
}

int incidence_sign(const std::vector<int>& sigma, const std::vector<int>& tau) {
  if (sigma.size() + 1 != tau.size()) return 0;
  std::size_t j = 0;
  while (j < sigma.size() && sigma[j] == tau[j]) ++j;
  // tau[j] is the omitted vertex; the rest must line up shifted by one
  for (std::size_t i = j; i < sigma.size(); ++i)
    if (sigma[i] != tau[i + 1]) return 0;
  return j % 2 == 0 ? 1 : -1;
}

bool is_face(const std::vector<int>& sigma, const std::vector<int>& tau) {
  return std::includes(tau.begin(), tau.end(), sigma.begin(), sigma.end());
}

FilteredComplex::FilteredComplex(PrimeField field, int steps, std::vector<Simplex> simplices)
    : field_(field), steps_(steps), simplices_(std::move(simplices)) {
  std::stable_sort(simplices_.begin(), simplices_.end(), [](const Simplex& a, const Simplex& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    if (a.entry != b.entry) return a.entry < b.entry;
    return a.vertices < b.vertices;
  });
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    const Simplex& s = simplices_[i];
    if (s.dim() >= 0) {
      if (static_cast<int>(by_dim_.size()) <= s.dim()) by_dim_.resize(s.dim() + 1);
      by_dim_[s.dim()].push_back(i);
    }
    by_id_.emplace(s.id, i);
    by_vertices_.emplace(s.vertices, i);
  }
  faces_.resize(simplices_.size());
  cofaces_.resize(simplices_.size());
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    const auto& v = simplices_[i].vertices;
    if (v.size() < 2) continue;
    for (std::size_t j = 0; j < v.size(); ++j) {
      std::vector<int> face = v;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
      auto it = by_vertices_.find(face);
      if (it == by_vertices_.end()) continue;
      const int sign = j % 2 == 0 ? 1 : -1;
      faces_[i].push_back({it->second, sign});
      cofaces_[it->second].push_back({i, sign});
    }
  }
  for (auto& f : faces_)
    std::sort(f.begin(), f.end(), [](auto& a, auto& b) { return a.index < b.index; });
  for (auto& f : cofaces_)
    std::sort(f.begin(), f.end(), [](auto& a, auto& b) { return a.index < b.index; });
}

const std::vector<std::size_t>& FilteredComplex::of_dim(int k) const {
  static const std::vector<std::size_t> none;
  if (k < 0 || k >= static_cast<int>(by_dim_.size())) return none;
  return by_dim_[k];
}

std::optional<std::size_t> FilteredComplex::find(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FilteredComplex::find(const std::vector<int>& vertices) const {
  auto it = by_vertices_.find(vertices);
  if (it == by_vertices_.end()) return std::nullopt;
  return it->second;
}

std::size_t FilteredComplex::index_of(const std::string& id) const {
  auto i = find(id);
  if (!i) throw Error("unknown simplex id '" + id + "'");
  return *i;
}

FilteredComplex FilteredComplex::step(int i) const {
  std::vector<Simplex> kept;
  for (const auto& s : simplices_)
    if (s.entry <= i) kept.push_back(s);
  return FilteredComplex(field_, steps_, std::move(kept));
}

FilteredComplex FilteredComplex::with_field(PrimeField field) const {
  return FilteredComplex(field, steps_, simplices_);
}

std::vector<int> FilteredComplex::vertices() const {
  std::set<int> vs;
  for (const auto& s : simplices_) vs.insert(s.vertices.begin(), s.vertices.end());
  return {vs.begin(), vs.end()};
}

std::vector<std::string> validate(const FilteredComplex& c) {
  std::vector<std::string> out;
  if (c.steps() < 1) out.push_back("steps must be at least 1");
  std::set<std::string> ids;
  std::set<std::vector<int>> seen;
  for (const auto& s : c.simplices()) {
    const std::string name = "simplex '" + s.id + "'";
    if (!ids.insert(s.id).second) out.push_back("duplicate id '" + s.id + "'");
    if (s.vertices.empty()) {
      out.push_back(name + ": empty vertex list");
      continue;
    }
    if (!std::is_sorted(s.vertices.begin(), s.vertices.end()) ||
        std::adjacent_find(s.vertices.begin(), s.vertices.end()) != s.vertices.end())
      out.push_back(name + ": vertices not strictly increasing");
    if (!seen.insert(s.vertices).second) out.push_back(name + ": duplicate vertex set");
    if (s.entry < 0 || s.entry >= c.steps())
      out.push_back(name + ": entry " + std::to_string(s.entry) + " outside 0.." +
                    std::to_string(c.steps() - 1));
    if (s.vertices.size() < 2) continue;
    for (std::size_t j = 0; j < s.vertices.size(); ++j) {
      std::vector<int> face = s.vertices;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
      auto f = c.find(face);
      if (!f) {
        out.push_back(name + ": missing face " + default_simplex_id(face));
      } else if (c[*f].entry > s.entry) {
        out.push_back(name + ": entry not monotone (face '" + c[*f].id + "' enters at " +
                      std::to_string(c[*f].entry) + ")");
      }
    }
  }
  return out;
}

ComplexPtr make_complex(PrimeField field, int steps, std::vector<Simplex> simplices) {
  auto c = std::make_shared<const FilteredComplex>(field, steps, std::move(simplices));
  auto v = validate(*c);
  if (!v.empty()) throw ValidationError(std::move(v));
  return c;
}

ComplexPtr step_complex(const FilteredComplex& c, int i) {
  return std::make_shared<const FilteredComplex>(c.step(i));
}

std::vector<std::size_t> open_star(const FilteredComplex& c, std::size_t sigma) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (is_face(c[sigma].vertices, c[i].vertices)) out.push_back(i);
  return out;
}

std::vector<std::size_t> open_star(const FilteredComplex& c, const std::string& id) {
  return open_star(c, c.index_of(id));
}

SimplicialMap::SimplicialMap(ComplexPtr source, ComplexPtr target, std::map<int, int> vertex_map)
    : source_(std::move(source)), target_(std::move(target)), vertex_map_(std::move(vertex_map)) {
  std::vector<std::string> bad;
  image_.resize(source_->size());
  sign_.resize(source_->size());
  for (std::size_t i = 0; i < source_->size(); ++i) {
    const auto& s = (*source_)[i];
    std::vector<int> img;
    bool ok = true;
    for (int v : s.vertices) {
      auto it = vertex_map_.find(v);
      if (it == vertex_map_.end()) {
        bad.push_back("vertex " + std::to_string(v) + " has no image");
        ok = false;
        break;
      }
      img.push_back(it->second);
    }
    if (!ok) continue;
    // parity of the sorting permutation, counted by inversions
    int inversions = 0;
    for (std::size_t a = 0; a < img.size(); ++a)
      for (std::size_t b = a + 1; b < img.size(); ++b)
        if (img[a] > img[b]) ++inversions;
    std::vector<int> sorted = img;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    auto t = target_->find(sorted);
    if (!t) {
      bad.push_back("image of '" + s.id + "' is not a simplex of the target");
      continue;
    }
    image_[i] = *t;
    sign_[i] = sorted.size() < img.size() ? 0 : (inversions % 2 == 0 ? 1 : -1);
  }
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

bool SimplicialMap::is_inclusion() const {
  std::set<int> images;
  for (int v : source_->vertices()) {
    if (!images.insert(vertex_map_.at(v)).second) return false;
  }
  return true;
}

SimplicialMap inclusion(ComplexPtr sub, ComplexPtr full) {
  std::map<int, int> vm;
  for (int v : sub->vertices()) vm[v] = v;
  return SimplicialMap(std::move(sub), std::move(full), std::move(vm));
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  std::map<int, int> vm;
  for (const auto& [v, w] : f.vertex_map()) {
    auto it = g.vertex_map().find(w);
    if (it != g.vertex_map().end()) vm[v] = it->second;
  }
  return SimplicialMap(f.source_ptr(), g.target_ptr(), std::move(vm));
}

FilteredComplex preimage_subcomplex(const SimplicialMap& f, std::size_t tau) {
  if (tau >= f.target().size()) throw Error("preimage_subcomplex: unknown target simplex");
  const auto& tv = f.target()[tau].vertices;
  std::vector<Simplex> kept;
  for (std::size_t i = 0; i < f.source().size(); ++i)
    if (is_face(f.target()[f.image(i)].vertices, tv)) kept.push_back(f.source()[i]);
  return FilteredComplex(f.source().field(), f.source().steps(), std::move(kept));
}

FilteredComplex vietoris_rips(const std::vector<std::vector<double>>& points,
                              const std::vector<double>& thresholds, int max_dim,
                              PrimeField field) {
  if (thresholds.empty()) throw Error("vietoris_rips: no thresholds");
  for (std::size_t i = 1; i < thresholds.size(); ++i)
    if (!(thresholds[i] > thresholds[i - 1]))
      throw Error("vietoris_rips: thresholds must be strictly increasing");
  if (max_dim < 0) throw Error("vietoris_rips: max_dim must be non-negative");
  const int n = static_cast<int>(points.size());
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (points[a].size() != points[b].size())
        throw Error("vietoris_rips: points have different dimensions");
      double s = 0;
      for (std::size_t c = 0; c < points[a].size(); ++c) {
        const double d = points[a][c] - points[b][c];
        s += d * d;
      }
      dist[a][b] = dist[b][a] = std::sqrt(s);
    }
  auto entry_of = [&](double diam) -> int {
    auto it = std::lower_bound(thresholds.begin(), thresholds.end(), diam);
    return it == thresholds.end() ? -1 : static_cast<int>(it - thresholds.begin());
  };
  std::vector<Simplex> out;
  std::vector<int> clique;
  std::function<void(int, double)> grow = [&](int next, double diam) {
    const int e = entry_of(diam);
    if (e < 0) return;
    out.push_back({default_simplex_id(clique), clique, e});
    if (static_cast<int>(clique.size()) > max_dim) return;
    for (int v = next; v < n; ++v) {
      double d = diam;
      for (int u : clique) d = std::max(d, dist[u][v]);
      if (entry_of(d) < 0) continue;
      clique.push_back(v);
      grow(v + 1, d);
      clique.pop_back();
    }
  };
  for (int v = 0; v < n; ++v) {
    clique = {v};
    grow(v + 1, 0.0);
  }
  return FilteredComplex(field, static_cast<int>(thresholds.size()), std::move(out));
}

}  // namespace psc
