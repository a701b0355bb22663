#include "psc/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace psc {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols, const PrimeField& field,
                        const std::string& where) {
  const std::string expect = std::to_string(rows) + "x" + std::to_string(cols);
  if (!j.is_array()) throw InputError(where + ": matrix must be a list of rows");
  Matrix m = zeros(rows, cols);
  if (rows == 0 || (cols == 0 && j.empty())) {
    if (!j.empty() && rows == 0) throw InputError(where + ": expected a " + expect + " matrix");
    return m;
  }
  if (static_cast<Eigen::Index>(j.size()) != rows)
    throw InputError(where + ": expected a " + expect + " matrix, got " + std::to_string(j.size()) +
                     " rows");
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw InputError(where + ": expected a " + expect + " matrix, row " + std::to_string(i) +
                       " has the wrong length");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_number_integer()) throw InputError(where + ": matrix entries must be integers");
      m(i, c) = field.reduce(e.get<std::int64_t>());
    }
  }
  return m;
}

Json complex_to_json(const FilteredComplex& c) {
  Json j;
  j["field"] = c.field().modulus();
  j["steps"] = c.steps();
  Json simplices = Json::array();
  for (const auto& s : c.simplices())
    simplices.push_back({{"id", s.id}, {"vertices", s.vertices}, {"entry", s.entry}});
  j["simplices"] = std::move(simplices);
  return j;
}

ComplexPtr complex_from_json(const Json& j, std::optional<PrimeField> field) {
  if (!j.is_object() || !j.contains("simplices") || !j["simplices"].is_array())
    throw InputError("complex: expected an object with a \"simplices\" list");
  try {
    PrimeField f = field ? *field : PrimeField(j.value("field", std::int64_t{2}));
    std::vector<Simplex> simplices;
    int max_entry = 0;
    for (const auto& s : j["simplices"]) {
      Simplex x;
      x.vertices = s.at("vertices").get<std::vector<int>>();
      x.entry = s.value("entry", 0);
      x.id = s.contains("id") ? s["id"].get<std::string>() : default_simplex_id(x.vertices);
      max_entry = std::max(max_entry, x.entry);
      simplices.push_back(std::move(x));
    }
    const int steps = j.value("steps", max_entry + 1);
    return make_complex(f, steps, std::move(simplices));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("complex: ") + e.what());
  }
}

Json sheaf_to_json(const CellularSheaf& f, bool embed_complex) {
  const auto& c = f.complex();
  Json j;
  if (embed_complex) j["complex"] = complex_to_json(c);
  Json stalks = Json::object();
  for (std::size_t i = 0; i < c.size(); ++i) stalks[c[i].id] = f.stalk(i);
  j["stalks"] = std::move(stalks);
  Json r = Json::array();
  for (const auto& [key, m] : f.restrictions())
    r.push_back({{"face", c[key.first].id}, {"coface", c[key.second].id}, {"matrix", matrix_to_json(m)}});
  j["restrictions"] = std::move(r);
  return j;
}

CellularSheaf sheaf_from_json(const Json& j, ComplexPtr complex) {
  if (j.is_object() && j.contains("constant")) {
    const Json& d = j["constant"];
    if (!d.is_number_integer() || d.get<int>() < 0)
      throw InputError("sheaf: \"constant\" must be a non-negative integer");
    return constant(std::move(complex), d.get<int>());
  }
  if (!j.is_object() || !j.contains("stalks") || !j["stalks"].is_object())
    throw InputError("sheaf: expected an object with \"stalks\"");
  const auto& c = *complex;
  std::vector<int> stalks(c.size(), -1);
  std::vector<std::string> bad;
  for (const auto& [id, d] : j["stalks"].items()) {
    auto i = c.find(id);
    if (!i) {
      bad.push_back("stalk for unknown simplex '" + id + "'");
      continue;
    }
    if (!d.is_number_integer() || d.get<int>() < 0) {
      bad.push_back("stalk at '" + id + "' must be a non-negative integer");
      continue;
    }
    stalks[*i] = d.get<int>();
  }
  for (std::size_t i = 0; i < c.size(); ++i)
    if (stalks[i] < 0) bad.push_back("no stalk for simplex '" + c[i].id + "'");
  if (!bad.empty()) throw ValidationError(std::move(bad));
  std::map<IncidenceKey, Matrix> r;
  for (const auto& e : j.value("restrictions", Json::array())) {
    const std::string fid = e.at("face").get<std::string>();
    const std::string tid = e.at("coface").get<std::string>();
    auto a = c.find(fid), b = c.find(tid);
    if (!a || !b) {
      bad.push_back("restriction '" + fid + "' -> '" + tid + "' names an unknown simplex");
      continue;
    }
    if (incidence_sign(c[*a].vertices, c[*b].vertices) == 0) {
      bad.push_back("restriction '" + fid + "' -> '" + tid + "' is not a codimension-1 incidence");
      continue;
    }
    r[{*a, *b}] = matrix_from_json(e.at("matrix"), stalks[*b], stalks[*a], c.field(),
                                   "restriction '" + fid + "' -> '" + tid + "'");
  }
  if (!bad.empty()) throw ValidationError(std::move(bad));
  return CellularSheaf(std::move(complex), std::move(stalks), std::move(r));
}

Json diagram_to_json(const SheafDiagram& d, bool embed_complex) {
  Json j;
  const auto& c = d.complex();
  if (embed_complex) j["complex"] = complex_to_json(c);
  Json snaps = Json::array();
  for (const auto& f : d.sheaves) snaps.push_back(sheaf_to_json(*f));
  j["snapshots"] = std::move(snaps);
  Json steps = Json::array();
  for (const auto& phi : d.maps) {
    Json step = Json::object();
    for (std::size_t i = 0; i < c.size(); ++i) step[c[i].id] = matrix_to_json(phi.components[i]);
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  return j;
}

SheafDiagram diagram_from_json(const Json& j, ComplexPtr complex) {
  if (!j.is_object() || !j.contains("snapshots") || !j["snapshots"].is_array())
    throw InputError("diagram: expected an object with a \"snapshots\" list");
  SheafDiagram d;
  for (const auto& s : j["snapshots"])
    d.sheaves.push_back(std::make_shared<const CellularSheaf>(sheaf_from_json(s, complex)));
  const Json steps = j.value("steps", Json::array());
  if (steps.size() + 1 != d.sheaves.size())
    throw InputError("diagram: need exactly one step map between consecutive snapshots");
  const auto& c = *complex;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    SheafMorphism phi{d.sheaves[i], d.sheaves[i + 1], {}};
    for (std::size_t s = 0; s < c.size(); ++s) {
      const int from = d.sheaves[i]->stalk(s), to = d.sheaves[i + 1]->stalk(s);
      const std::string where = "step " + std::to_string(i) + " at '" + c[s].id + "'";
      if (steps[i].contains(c[s].id))
        phi.components.push_back(matrix_from_json(steps[i][c[s].id], to, from, c.field(), where));
      else if (from == 0 || to == 0)
        phi.components.push_back(zeros(to, from));
      else
        throw InputError(where + ": missing matrix");
    }
    for (const auto& [id, m] : steps[i].items())
      if (!c.find(id)) throw InputError("step " + std::to_string(i) + ": unknown simplex '" + id + "'");
    d.maps.push_back(std::move(phi));
  }
  return d;
}

Json barcode_to_json(const BarcodeReport& r, bool closed_end) {
  Json j;
  j["degree"] = r.barcode.degree;
  j["engine"] = r.engine;
  j["field"] = r.field;
  j["steps"] = r.steps;
  Json bars = Json::array();
  for (const auto& b : r.barcode.bars) {
    if (b.death)
      bars.push_back({b.birth, *b.death});
    else if (closed_end)
      bars.push_back({b.birth, r.steps - 1});
    else
      bars.push_back({b.birth, nullptr});
  }
  j["bars"] = std::move(bars);
  return j;
}

BarcodeReport barcode_from_json(const Json& j) {
  try {
    BarcodeReport r;
    r.engine = j.value("engine", std::string("pointwise"));
    r.field = j.value("field", std::int64_t{2});
    r.steps = j.value("steps", 1);
    std::vector<Bar> bars;
    for (const auto& b : j.at("bars")) {
      Bar bar{b.at(0).get<int>(), std::nullopt};
      if (!b.at(1).is_null()) bar.death = b.at(1).get<int>();
      bars.push_back(bar);
    }
    r.barcode = make_barcode(j.value("degree", 0), std::move(bars));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("barcode: ") + e.what());
  }
}

namespace {

std::string svg(const BarcodeReport& r, bool closed_end) {
  const int m = std::max(r.steps, 1);
  const int unit = 40, left = 50, top = 30, row_h = 18;
  const int axis_end = left + m * unit + 20;
  const int n = static_cast<int>(r.barcode.bars.size());
  const int height = top + std::max(n, 1) * row_h + 40;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << axis_end + 20 << "\" height=\""
     << height << "\">\n";
  os << "<defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"4\" "
        "orient=\"auto\"><path d=\"M0,0 L8,4 L0,8 z\" fill=\"black\"/></marker></defs>\n";
  os << "<text x=\"10\" y=\"18\" font-family=\"monospace\" font-size=\"12\">H^" << r.barcode.degree
     << " (" << r.engine << ", F_" << r.field << ")</text>\n";
  const int axis_y = top + std::max(n, 1) * row_h + 10;
  os << "<line x1=\"" << left << "\" y1=\"" << axis_y << "\" x2=\"" << axis_end << "\" y2=\""
     << axis_y << "\" stroke=\"black\"/>\n";
  for (int i = 0; i < m; ++i) {
    const int x = left + i * unit + unit / 2;
    os << "<text x=\"" << x << "\" y=\"" << axis_y + 16
       << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" << i << "</text>\n";
  }
  for (int i = 0; i < n; ++i) {
    const Bar& b = r.barcode.bars[i];
    const int y = top + i * row_h + row_h / 2;
    const int x1 = left + b.birth * unit + 4;
    if (b.death || closed_end) {
      const int d = b.death.value_or(m - 1);
      const int x2 = left + (d + 1) * unit - 4;
      os << "<line x1=\"" << x1 << "\" y1=\"" << y << "\" x2=\"" << x2 << "\" y2=\"" << y
         << "\" stroke=\"black\" stroke-width=\"4\"/>\n";
    } else {
      os << "<line x1=\"" << x1 << "\" y1=\"" << y << "\" x2=\"" << axis_end << "\" y2=\"" << y
         << "\" stroke=\"black\" stroke-width=\"4\" marker-end=\"url(#arrow)\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::string render_barcode(const BarcodeReport& r, Format format, bool closed_end) {
  if (format == Format::Json) return barcode_to_json(r, closed_end).dump(2) + "\n";
  if (format == Format::Svg) return svg(r, closed_end);
  const std::string prefix = "H^" + std::to_string(r.barcode.degree) + ": ";
  if (r.barcode.bars.empty()) return prefix + "(empty)\n";
  std::string out;
  for (const auto& b : r.barcode.bars) {
    if (b.infinite() && closed_end)
      out += prefix + to_string(Bar{b.birth, r.steps - 1}) + "\n";
    else
      out += prefix + to_string(b) + "\n";
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return cells;
}

std::optional<double> as_number(const std::string& s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

LabeledPoints parse_points_csv(std::istream& in) {
  LabeledPoints out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    auto cells = split_csv_line(line);
    if (cells.size() < 2) throw InputError("points line " + std::to_string(lineno) + ": need coordinates and a label");
    std::vector<double> p;
    bool numeric = true;
    for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
      auto v = as_number(cells[i]);
      if (!v) {
        numeric = false;
        break;
      }
      p.push_back(*v);
    }
    if (!numeric) {
      if (out.points.empty() && lineno == 1) continue;  // header
      throw InputError("points line " + std::to_string(lineno) + ": coordinates must be numbers");
    }
    if (!out.points.empty() && p.size() != out.points.front().size())
      throw InputError("points line " + std::to_string(lineno) + ": wrong number of coordinates");
    out.points.push_back(std::move(p));
    out.labels.push_back(cells.back());
  }
  return out;
}

namespace {

LabeledFiltration attach_labels(ComplexPtr k, const std::vector<std::string>& vertex_labels) {
  std::set<std::string> distinct(vertex_labels.begin(), vertex_labels.end());
  std::vector<std::string> names(distinct.begin(), distinct.end());
  std::map<int, int> label_of;
  for (std::size_t v = 0; v < vertex_labels.size(); ++v)
    label_of[static_cast<int>(v)] = static_cast<int>(
        std::lower_bound(names.begin(), names.end(), vertex_labels[v]) - names.begin());
  return make_labeled(std::move(k), std::move(label_of), std::move(names));
}

}  // namespace

LabeledFiltration labeled_from_points(const LabeledPoints& pts, const std::vector<double>& thresholds,
                                      int max_dim, PrimeField field) {
  auto k = std::make_shared<const FilteredComplex>(vietoris_rips(pts.points, thresholds, max_dim, field));
  return attach_labels(std::move(k), pts.labels);
}

LabeledFiltration labeled_from_json(const Json& j, std::optional<PrimeField> field) {
  if (!j.is_object() || !j.contains("complex") || !j.contains("labels"))
    throw InputError("labeled input: expected {\"complex\", \"labels\"}");
  auto k = complex_from_json(j["complex"], field);
  std::vector<std::string> labels;
  try {
    labels = j["labels"].get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("labels: ") + e.what());
  }
  return attach_labels(std::move(k), labels);
}

}  // namespace psc
