#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "psc/complex.hpp"
#include "psc/labeled.hpp"
#include "psc/persistence.hpp"
#include "psc/sheaf.hpp"

namespace psc {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input file.
class InputError : public Error {
 public:
  using Error::Error;
};

Json read_json_file(const std::string& path);

Json matrix_to_json(const Matrix& m);
/// Expects a rows x cols list of integer rows; entries are reduced mod p.
Matrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols, const PrimeField& field,
                        const std::string& where);

Json complex_to_json(const FilteredComplex& c);
/// An explicit field overrides the file's "field" entry.
ComplexPtr complex_from_json(const Json& j, std::optional<PrimeField> field = std::nullopt);

Json sheaf_to_json(const CellularSheaf& f, bool embed_complex = false);
/// {"constant": d} is shorthand for the constant sheaf with stalk F^d.
CellularSheaf sheaf_from_json(const Json& j, ComplexPtr complex);

Json diagram_to_json(const SheafDiagram& d, bool embed_complex = false);
SheafDiagram diagram_from_json(const Json& j, ComplexPtr complex);

struct BarcodeReport {
  Barcode barcode;
  std::string engine = "pointwise";
  std::int64_t field = 2;
  int steps = 1;
};

enum class Format { Text, Json, Svg };

Json barcode_to_json(const BarcodeReport& r, bool closed_end = false);
BarcodeReport barcode_from_json(const Json& j);
std::string render_barcode(const BarcodeReport& r, Format format, bool closed_end = false);

/// Rows of coordinates with a trailing label column. A first row whose
/// leading cell is not a number is taken as a header.
struct LabeledPoints {
  std::vector<std::vector<double>> points;
  std::vector<std::string> labels;
};
LabeledPoints parse_points_csv(std::istream& in);

/// Labels are indexed in lexicographic order.
LabeledFiltration labeled_from_points(const LabeledPoints& pts, const std::vector<double>& thresholds,
                                      int max_dim, PrimeField field);
/// {"complex": {...}, "labels": [label of vertex 0, label of vertex 1, ...]}
LabeledFiltration labeled_from_json(const Json& j, std::optional<PrimeField> field);

}  // namespace psc
