#include "psc/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psc/bipersistence.hpp"
#include "psc/cohomology.hpp"
#include "psc/graded.hpp"
#include "psc/io.hpp"
#include "psc/labeled.hpp"
#include "psc/type_t.hpp"

namespace psc {

namespace {

struct Options {
  std::optional<std::int64_t> field;
  std::string format = "text";
  bool closed_end = false;
  int k = 0;
  std::string engine;
  std::string complex_path;
  std::string input_path;
  std::vector<double> thresholds;
  int max_dim = 2;
  int hom_n = 0;
};

class Mismatch : public Error {
 public:
  using Error::Error;
};

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "svg") return Format::Svg;
  return Format::Text;
}

std::optional<PrimeField> field_override(const Options& o) {
  if (!o.field) return std::nullopt;
  return PrimeField(*o.field);
}

// Sheaf or diagram files may carry their own "complex"; an explicit complex
// file wins.
ComplexPtr complex_for(const Json& doc, const std::string& complex_path, const Options& o) {
  if (!complex_path.empty()) return complex_from_json(read_json_file(complex_path), field_override(o));
  if (doc.contains("complex")) return complex_from_json(doc["complex"], field_override(o));
  throw InputError("no complex given: pass a complex file or embed \"complex\"");
}

SheafPtr load_sheaf(const std::string& path, const std::string& complex_path, const Options& o) {
  const Json doc = read_json_file(path);
  auto f = std::make_shared<const CellularSheaf>(sheaf_from_json(doc, complex_for(doc, complex_path, o)));
  require_valid(*f);
  return f;
}

SheafDiagram load_diagram(const std::string& path, const std::string& complex_path, const Options& o) {
  const Json doc = read_json_file(path);
  SheafDiagram d = diagram_from_json(doc, complex_for(doc, complex_path, o));
  require_valid(d);
  return d;
}

bool is_json_path(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

LabeledFiltration load_labeled(const Options& o) {
  if (is_json_path(o.input_path)) return labeled_from_json(read_json_file(o.input_path), field_override(o));
  std::ifstream in(o.input_path);
  if (!in) throw InputError("cannot open '" + o.input_path + "'");
  if (o.thresholds.empty()) throw InputError("--thresholds is required for point input");
  const auto pts = parse_points_csv(in);
  return labeled_from_points(pts, o.thresholds, o.max_dim, field_override(o).value_or(PrimeField(2)));
}

void print_barcode(std::ostream& out, const Options& o, const Barcode& bc, const std::string& engine,
                   std::int64_t p, int steps) {
  out << render_barcode({bc, engine, p, steps}, parse_format(o.format), o.closed_end);
}

void cross_check(const Barcode& a, const Barcode& b, const std::string& what) {
  if (!barcodes_equal(a, b))
    throw Mismatch(what + " engines disagree: " + to_string(a) + " vs " + to_string(b));
}

int cmd_validate(const Options& o, std::ostream& out) {
  const auto f = load_sheaf(o.input_path, o.complex_path, o);
  out << "ok: " << f->complex().size() << " simplices, sheaf valid\n";
  return kOk;
}

int cmd_cohomology(const Options& o, bool k_given, std::ostream& out) {
  const auto f = load_sheaf(o.input_path, o.complex_path, o);
  const auto dims = cohomology_dims(*f);
  std::vector<std::pair<int, Eigen::Index>> rows;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k)
    if (!k_given || k == o.k) rows.push_back({k, dims[k]});
  if (k_given && o.k >= static_cast<int>(dims.size())) rows.push_back({o.k, 0});
  if (parse_format(o.format) == Format::Json) {
    Json j;
    j["field"] = f->field().modulus();
    Json arr = Json::array();
    for (auto [k, d] : rows) arr.push_back({{"degree", k}, {"dim", d}});
    j["cohomology"] = std::move(arr);
    out << j.dump(2) << "\n";
  } else {
    for (auto [k, d] : rows) out << "H^" << k << ": " << d << "\n";
  }
  return kOk;
}

int cmd_persist_a(const Options& o, std::ostream& out, std::ostream& err) {
  const SheafDiagram d = load_diagram(o.input_path, o.complex_path, o);
  const std::string engine = o.engine.empty() ? "graded" : o.engine;
  const auto p = d.complex().field().modulus();
  const bool free = is_monomorphic(d);
  if (engine != "pointwise" && !free)
    err << "note: diagram is not stalk-wise injective, using the pointwise engine\n";
  if (engine == "pointwise" || !free) {
    print_barcode(out, o, type_a_pointwise(d, o.k), "pointwise", p, d.length());
  } else if (engine == "graded") {
    print_barcode(out, o, type_a_graded(d, o.k), "graded", p, d.length());
  } else {
    const Barcode a = type_a_pointwise(d, o.k);
    cross_check(a, type_a_graded(d, o.k), "pointwise and graded");
    print_barcode(out, o, a, "pointwise", p, d.length());
  }
  return kOk;
}

int cmd_persist_t(const Options& o, std::ostream& out) {
  const auto c = complex_from_json(read_json_file(o.complex_path), field_override(o));
  const Json doc = read_json_file(o.input_path);
  auto f = std::make_shared<const CellularSheaf>(sheaf_from_json(doc, c));
  require_valid(*f);
  const TypeTInput in{c, f};
  const std::string engine = o.engine.empty() ? "direct" : o.engine;
  const auto p = c->field().modulus();
  if (engine == "direct") {
    print_barcode(out, o, type_t_direct(in, o.k).barcode, "pointwise", p, c->steps());
  } else if (engine == "graded") {
    print_barcode(out, o, type_t_graded(in, o.k), "graded", p, c->steps());
  } else {
    const Barcode a = type_t_direct(in, o.k).barcode;
    cross_check(a, type_t_graded(in, o.k), "direct and graded");
    print_barcode(out, o, a, "pointwise", p, c->steps());
  }
  return kOk;
}

int cmd_bipersist(const Options& o, std::ostream& out, std::ostream& err) {
  const auto c = complex_from_json(read_json_file(o.complex_path), field_override(o));
  const SheafDiagram d = diagram_from_json(read_json_file(o.input_path), c);
  require_valid(d);
  const BiGrid g = grid(c, d, o.k);
  const auto bad = check_commutative(g);
  if (parse_format(o.format) == Format::Json) {
    Json j;
    j["field"] = g.field.modulus();
    j["degree"] = g.degree;
    j["rows"] = g.rows();
    j["cols"] = g.cols();
    j["dims"] = g.dims;
    Json h = Json::array(), v = Json::array();
    for (const auto& row : g.horizontal) {
      Json r = Json::array();
      for (const auto& m : row) r.push_back(matrix_to_json(m));
      h.push_back(std::move(r));
    }
    for (const auto& row : g.vertical) {
      Json r = Json::array();
      for (const auto& m : row) r.push_back(matrix_to_json(m));
      v.push_back(std::move(r));
    }
    j["horizontal"] = std::move(h);
    j["vertical"] = std::move(v);
    j["commutative"] = !bad.has_value();
    Json ri = Json::array();
    if (!bad)
      for (const auto& [key, r] : rank_invariant(g))
        ri.push_back({{"from", {key.first.first, key.first.second}},
                      {"to", {key.second.first, key.second.second}},
                      {"rank", r}});
    j["rank_invariant"] = std::move(ri);
    out << j.dump(2) << "\n";
  } else {
    out << "H^" << g.degree << " grid (" << g.rows() << " x " << g.cols()
        << "), row r is step " << "m-1-r\n";
    for (const auto& row : g.dims) {
      for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
      out << "\n";
    }
    out << "commutative: " << (bad ? "no" : "yes") << "\n";
  }
  if (bad) {
    err << "square at row " << bad->row << ", column " << bad->col << " does not commute\n";
    return kMismatch;
  }
  return kOk;
}

int cmd_labeled(const Options& o, std::ostream& out) {
  const auto lf = load_labeled(o);
  const Barcode bc = mixed_feature_barcodes(lf, o.hom_n, o.k);
  print_barcode(out, o, bc, "pointwise", lf.complex->field().modulus(), lf.complex->steps());
  return kOk;
}

int cmd_unicolored(const Options& o, std::ostream& out) {
  const auto lf = load_labeled(o);
  const auto res = unicolored_pipeline(lf, o.k);
  print_barcode(out, o, res.barcode, "pointwise", lf.complex->field().modulus(), lf.complex->steps());
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Persistent cohomology of cellular sheaves"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--field", o.field, "prime modulus (default: the complex's own, else 2)");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "svg"}));
  app.add_flag("--closed-end", o.closed_end, "print last-index survival as [a, m-1]");

  auto* validate_cmd = app.add_subcommand("validate", "check a sheaf file");
  validate_cmd->add_option("sheaf", o.input_path)->required();
  validate_cmd->add_option("--complex", o.complex_path, "complex file when the sheaf does not embed one");

  auto* coh = app.add_subcommand("cohomology", "sheaf cohomology dimensions");
  coh->add_option("complex", o.complex_path)->required();
  coh->add_option("sheaf", o.input_path)->required();
  auto* coh_k = coh->add_option("--k", o.k, "single degree (default: all)");

  auto* pa = app.add_subcommand("persist-a", "persistence along a diagram of sheaves");
  pa->add_option("diagram", o.input_path)->required();
  pa->add_option("--k", o.k, "cohomological degree");
  pa->add_option("--engine", o.engine, "computation engine")->check(CLI::IsMember({"graded", "pointwise", "both"}));
  pa->add_option("--complex", o.complex_path, "complex file when the diagram does not embed one");

  auto* pt = app.add_subcommand("persist-t", "persistence along a filtration");
  pt->add_option("complex", o.complex_path)->required();
  pt->add_option("sheaf", o.input_path)->required();
  pt->add_option("--k", o.k, "cohomological degree");
  pt->add_option("--engine", o.engine, "computation engine")->check(CLI::IsMember({"direct", "graded", "both"}));

  auto* bp = app.add_subcommand("bipersist", "two-parameter grid report");
  bp->add_option("complex", o.complex_path)->required();
  bp->add_option("diagram", o.input_path)->required();
  bp->add_option("--k", o.k, "cohomological degree");

  auto* lab = app.add_subcommand("labeled", "mixed-feature barcodes of labeled data");
  lab->add_option("input", o.input_path, "points CSV or labeled complex JSON")->required();
  lab->add_option("--thresholds", o.thresholds, "Vietoris-Rips scales for point input")->delimiter(',');
  lab->add_option("--max-dim", o.max_dim, "maximum simplex dimension for point input");
  lab->add_option("--hom-n", o.hom_n, "homology degree of the label sheaf");
  lab->add_option("--k", o.k, "cohomological degree");

  auto* uni = app.add_subcommand("unicolored", "persistent unicolored components");
  uni->add_option("input", o.input_path, "points CSV or labeled complex JSON")->required();
  uni->add_option("--thresholds", o.thresholds, "Vietoris-Rips scales for point input")->delimiter(',');
  uni->add_option("--max-dim", o.max_dim, "maximum simplex dimension for point input");
  uni->add_option("--k", o.k, "cohomological degree");

  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (o.k < 0) {
    err << "error: --k must be non-negative\n";
    return kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(o, out);
    if (*coh) return cmd_cohomology(o, coh_k->count() > 0, out);
    if (*pa) return cmd_persist_a(o, out, err);
    if (*pt) return cmd_persist_t(o, out);
    if (*bp) return cmd_bipersist(o, out, err);
    if (*lab) return cmd_labeled(o, out);
    if (*uni) return cmd_unicolored(o, out);
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) err << "invalid: " << v << "\n";
    return kInvalid;
  } catch (const Mismatch& e) {
    err << "mismatch: " << e.what() << "\n";
    return kMismatch;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kUsage;
}

}  // namespace psc
