#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "psc/field.hpp"

namespace psc {

struct Simplex {
  std::string id;
  std::vector<int> vertices;  // strictly increasing
  int entry = 0;

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Default identifier for a simplex given by its vertices, e.g. "s0_2".
std::string default_simplex_id(const std::vector<int>& vertices);

/// Coefficient [sigma:tau]: (-1)^j when sigma is tau without its j-th vertex,
/// 0 when sigma is not a codimension-1 face of tau.
int incidence_sign(const std::vector<int>& sigma, const std::vector<int>& tau);

/// True when every vertex of sigma occurs in tau.
bool is_face(const std::vector<int>& sigma, const std::vector<int>& tau);

/// A finite simplicial complex with integer entry times 0..steps-1.
///
/// Simplices are stored in canonical order (dimension, entry, vertex list), and
/// every index-based accessor refers to that order. Construction does not
/// validate; call validate() or make_complex() for checked input.
class FilteredComplex {
 public:
  struct Incidence {
    std::size_t index;
    int sign;
  };

  FilteredComplex() = default;
  FilteredComplex(PrimeField field, int steps, std::vector<Simplex> simplices);

  const PrimeField& field() const { return field_; }
  int steps() const { return steps_; }
  std::size_t size() const { return simplices_.size(); }
  bool empty() const { return simplices_.empty(); }
  const Simplex& operator[](std::size_t i) const { return simplices_[i]; }
  const std::vector<Simplex>& simplices() const { return simplices_; }

  /// Highest simplex dimension, -1 when empty.
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  /// Indices of the k-simplices in canonical order (empty for k out of range).
  const std::vector<std::size_t>& of_dim(int k) const;

  std::optional<std::size_t> find(const std::string& id) const;
  std::optional<std::size_t> find(const std::vector<int>& vertices) const;
  std::size_t index_of(const std::string& id) const;  // throws on unknown id

  /// Codimension-1 faces and cofaces with their incidence signs.
  const std::vector<Incidence>& faces(std::size_t i) const { return faces_[i]; }
  const std::vector<Incidence>& cofaces(std::size_t i) const { return cofaces_[i]; }

  /// Subcomplex of simplices with entry <= i; keeps ids, entries and steps.
  FilteredComplex step(int i) const;

  /// Same simplices with a different coefficient field.
  FilteredComplex with_field(PrimeField field) const;

  /// Set of vertices used by the complex.
  std::vector<int> vertices() const;

 private:
  PrimeField field_;
  int steps_ = 1;
  std::vector<Simplex> simplices_;
  std::vector<std::vector<std::size_t>> by_dim_;
  std::map<std::string, std::size_t> by_id_;
  std::map<std::vector<int>, std::size_t> by_vertices_;
  std::vector<std::vector<Incidence>> faces_;
  std::vector<std::vector<Incidence>> cofaces_;
};

using ComplexPtr = std::shared_ptr<const FilteredComplex>;

/// Violations of closure, entry monotonicity, id uniqueness and shape.
std::vector<std::string> validate(const FilteredComplex& c);

/// Builds and validates; throws ValidationError listing every violation.
ComplexPtr make_complex(PrimeField field, int steps, std::vector<Simplex> simplices);

/// All simplices of the given step as a shared complex.
ComplexPtr step_complex(const FilteredComplex& c, int i);

/// The basic Alexandrov open U_sigma: indices of all cofaces of sigma,
/// including sigma, in canonical order.
std::vector<std::size_t> open_star(const FilteredComplex& c, std::size_t sigma);
std::vector<std::size_t> open_star(const FilteredComplex& c, const std::string& id);

/// Simplicial map given on vertices. For every source simplex the image
/// simplex and an orientation sign are cached: the sign of the permutation
/// sorting the vertex images, or 0 when the image has lower dimension.
class SimplicialMap {
 public:
  SimplicialMap(ComplexPtr source, ComplexPtr target, std::map<int, int> vertex_map);

  const FilteredComplex& source() const { return *source_; }
  const FilteredComplex& target() const { return *target_; }
  const ComplexPtr& source_ptr() const { return source_; }
  const ComplexPtr& target_ptr() const { return target_; }
  const std::map<int, int>& vertex_map() const { return vertex_map_; }

  std::size_t image(std::size_t sigma) const { return image_[sigma]; }
  int sign(std::size_t sigma) const { return sign_[sigma]; }

  /// Injective on vertices, hence on simplices.
  bool is_inclusion() const;

 private:
  ComplexPtr source_;
  ComplexPtr target_;
  std::map<int, int> vertex_map_;
  std::vector<std::size_t> image_;
  std::vector<int> sign_;
};

/// The identity-on-vertices map sub -> full.
SimplicialMap inclusion(ComplexPtr sub, ComplexPtr full);
SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);  // g after f

/// tau_f = {sigma in source : f(sigma) is a face of tau}.
FilteredComplex preimage_subcomplex(const SimplicialMap& f, std::size_t tau);

/// Vietoris-Rips complex: a simplex enters at the least threshold index that
/// bounds its diameter; simplices above the last threshold are dropped.
FilteredComplex vietoris_rips(const std::vector<std::vector<double>>& points,
                              const std::vector<double>& thresholds, int max_dim,
                              PrimeField field = PrimeField(2));

}  // namespace psc
