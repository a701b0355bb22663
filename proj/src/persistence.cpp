#include "psc/persistence.hpp"

#include <algorithm>

namespace psc {

bool operator<(const Bar& a, const Bar& b) {
  if (a.birth != b.birth) return a.birth < b.birth;
  if (a.death.has_value() != b.death.has_value()) return a.death.has_value();
  return a.death.value_or(0) < b.death.value_or(0);
}

void Barcode::sort() { std::sort(bars.begin(), bars.end()); }

Barcode make_barcode(int degree, std::vector<Bar> bars) {
  Barcode bc{degree, std::move(bars)};
  bc.sort();
  return bc;
}

std::vector<std::string> validate_module(const PersistenceModule& m) {
  std::vector<std::string> out;
  if (m.dims.empty()) {
    if (!m.maps.empty()) out.push_back("maps without spaces");
    return out;
  }
  if (m.maps.size() + 1 != m.dims.size()) out.push_back("need one map between consecutive spaces");
  for (std::size_t i = 0; i < m.maps.size() && i + 1 < m.dims.size(); ++i)
    if (m.maps[i].rows() != m.dims[i + 1] || m.maps[i].cols() != m.dims[i])
      out.push_back("map " + std::to_string(i) + " has the wrong shape");
  return out;
}

namespace {

// composite[a][b] for a <= b, composite[a][a] = identity
std::vector<std::vector<std::size_t>> rank_table(const PersistenceModule& m) {
  const int n = static_cast<int>(m.dims.size());
  std::vector<std::vector<std::size_t>> r(n, std::vector<std::size_t>(n, 0));
  for (int a = 0; a < n; ++a) {
    Matrix acc = identity(m.dims[a]);
    r[a][a] = static_cast<std::size_t>(m.dims[a]);
    for (int b = a + 1; b < n; ++b) {
      acc = multiply(m.field, m.maps[b - 1], acc);
      r[a][b] = rank(m.field, acc);
    }
  }
  return r;
}

}  // namespace

std::size_t composite_rank(const PersistenceModule& m, int a, int b) {
  Matrix acc = identity(m.dims[a]);
  for (int i = a; i < b; ++i) acc = multiply(m.field, m.maps[i], acc);
  return rank(m.field, acc);
}

Barcode decompose_by_ranks(const PersistenceModule& m, int degree) {
  auto problems = validate_module(m);
  if (!problems.empty()) throw ValidationError(std::move(problems));
  const int n = static_cast<int>(m.dims.size());
  const auto r = rank_table(m);
  auto rk = [&](int a, int b) -> long {
    if (a < 0) return 0;
    return static_cast<long>(r[a][std::min(b, n - 1)]);
  };
  std::vector<Bar> bars;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      long mult;
      if (b == n - 1)
        mult = rk(a, b) - rk(a - 1, b);
      else
        mult = rk(a, b) - rk(a - 1, b) - rk(a, b + 1) + rk(a - 1, b + 1);
      if (mult < 0) throw Error("decompose_by_ranks: negative multiplicity");
      for (long i = 0; i < mult; ++i)
        bars.push_back(b == n - 1 ? Bar{a, std::nullopt} : Bar{a, b});
    }
  return make_barcode(degree, std::move(bars));
}

Barcode decompose_copersistence(const CopersistenceModule& m, int degree) {
  PersistenceModule t{m.field, m.dims, {}};
  for (const auto& mat : m.maps) t.maps.push_back(mat.transpose());
  return decompose_by_ranks(t, degree);
}

Barcode reflect(const Barcode& bc, int m) {
  std::vector<Bar> out;
  for (const auto& bar : bc.bars) {
    const int b = bar.death.value_or(m - 1);
    if (bar.birth >= m || b >= m || bar.birth < 0 || b < bar.birth)
      throw Error("reflect: bar " + to_string(bar) + " does not fit in " + std::to_string(m) +
                  " steps");
    const int na = m - 1 - b, nb = m - 1 - bar.birth;
    if (bar.infinite() && nb == m - 1)
      out.push_back({na, std::nullopt});
    else
      out.push_back({na, nb});
  }
  return make_barcode(bc.degree, std::move(out));
}

Barcode closed_ends(const Barcode& bc, int m) {
  std::vector<Bar> out;
  for (const auto& bar : bc.bars) out.push_back({bar.birth, bar.death.value_or(m - 1)});
  return make_barcode(bc.degree, std::move(out));
}

bool barcodes_equal(const Barcode& a, const Barcode& b) {
  auto x = a.bars, y = b.bars;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

std::string to_string(const Bar& bar) {
  if (bar.infinite()) return "[" + std::to_string(bar.birth) + ", inf)";
  return "[" + std::to_string(bar.birth) + ", " + std::to_string(*bar.death) + "]";
}

std::string to_string(const Barcode& bc) {
  std::string s = "{";
  for (std::size_t i = 0; i < bc.bars.size(); ++i) {
    if (i) s += ", ";
    s += to_string(bc.bars[i]);
  }
  return s + "}";
}

}  // namespace psc
