#include <doctest.h>

#include <sstream>

#include "psc/cohomology.hpp"
#include "psc/io.hpp"
#include "support/random.hpp"
#include "support/worked.hpp"

using namespace psc;
using worked::at;

namespace {

const std::string fixtures = PSC_FIXTURES;

Bar fin(int a, int b) { return {a, b}; }
Bar inf(int a) { return {a, std::nullopt}; }

void check_same_complex(const FilteredComplex& a, const FilteredComplex& b) {
  REQUIRE(a.size() == b.size());
  CHECK(a.steps() == b.steps());
  CHECK(a.field() == b.field());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == b[i].id);
    CHECK(a[i].vertices == b[i].vertices);
    CHECK(a[i].entry == b[i].entry);
  }
}

}  // namespace

TEST_CASE("complex round-trip") {
  gen::Rng rng(151);
  for (int run = 0; run < 20; ++run) {
    auto c = gen::random_complex(rng, 20, 3, run % 2 ? 3 : 2);
    const Json j = complex_to_json(*c);
    check_same_complex(*complex_from_json(j), *c);
    check_same_complex(*complex_from_json(Json::parse(j.dump())), *c);
  }
  auto minimal = complex_from_json(Json::parse(R"({"simplices": [{"id": "v", "vertices": [0]}]})"));
  CHECK(minimal->size() == 1);
  CHECK(minimal->steps() == 1);
  CHECK(minimal->field().modulus() == 2);
  auto over5 = complex_from_json(Json::parse(R"({"field": 3, "simplices": [{"id": "v", "vertices": [0]}]})"),
                                 PrimeField(5));
  CHECK(over5->field().modulus() == 5);
}

TEST_CASE("malformed complexes") {
  CHECK_THROWS(complex_from_json(Json::parse(R"({"simplices": 3})")));
  CHECK_THROWS(complex_from_json(Json::parse(R"({"field": 4, "simplices": []})")));
  CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"simplices": [{"id": "e", "vertices": [0, 1]}]})")),
                  ValidationError);
  CHECK_THROWS(read_json_file(fixtures + "/does_not_exist.json"));
}

TEST_CASE("sheaf round-trip") {
  gen::Rng rng(153);
  for (int run = 0; run < 20; ++run) {
    auto c = gen::random_complex(rng, 15, 1, 3);
    auto f = gen::random_sheaf(rng, c).sheaf;
    CHECK(same_sheaf(sheaf_from_json(sheaf_to_json(*f), c), *f));
    const Json embedded = sheaf_to_json(*f, true);
    auto c2 = complex_from_json(embedded.at("complex"));
    CHECK(same_sheaf(sheaf_from_json(embedded, c2), CellularSheaf(c2, f->stalks(), f->restrictions())));
  }
}

TEST_CASE("sheaf fixtures") {
  const Json j = read_json_file(fixtures + "/edge_sheaf.json");
  auto c = complex_from_json(j.at("complex"));
  auto f = sheaf_from_json(j, c);
  CHECK(validate_sheaf(f).empty());
  CHECK(same_sheaf(f, *worked::edge_morphism().source));

  const Json bd = read_json_file(fixtures + "/broken_diamond.json");
  auto bc = complex_from_json(bd.at("complex"));
  CHECK_FALSE(validate_sheaf(sheaf_from_json(bd, bc)).empty());

  auto tri = complex_from_json(read_json_file(fixtures + "/triangle.json"));
  auto k = sheaf_from_json(read_json_file(fixtures + "/constant1.json"), tri);
  CHECK(same_sheaf(k, constant(tri, 1)));
  CHECK(cohomology_dims(k) == std::vector<Eigen::Index>{1, 1});
  CHECK_THROWS_AS(sheaf_from_json(Json::parse(R"({"constant": -1})"), tri), InputError);
  CHECK_THROWS_AS(sheaf_from_json(Json::parse(R"({"constant": 1.5})"), tri), InputError);
}

TEST_CASE("sheaf inputs with bad shapes or ids") {
  auto c = worked::edge();
  CHECK_THROWS(sheaf_from_json(Json::parse(R"({"stalks": {"s0": 1, "s1": 1, "nope": 1}, "restrictions": []})"), c));
  CHECK_THROWS(sheaf_from_json(
      Json::parse(R"({"stalks": {"s0": 1, "s1": 1, "s0_1": 1},
                      "restrictions": [{"face": "s0", "coface": "s0_1", "matrix": [[1, 1]]}]})"),
      c));
  CHECK_THROWS(matrix_from_json(Json::parse("[[1], [2, 3]]"), 2, 1, PrimeField(2), "here"));
  const Matrix m = matrix_from_json(Json::parse("[[-1, 4]]"), 1, 2, PrimeField(3), "here");
  CHECK(same_matrix(m, worked::mat({{2, 1}})));
  CHECK(matrix_to_json(m) == Json::parse("[[2, 1]]"));
}

TEST_CASE("diagram round-trip") {
  auto d = worked::edge_diagram();
  auto c = d.sheaves.front()->complex_ptr();
  auto back = diagram_from_json(diagram_to_json(d), c);
  REQUIRE(back.length() == d.length());
  for (int i = 0; i < d.length(); ++i) CHECK(same_sheaf(*back.sheaves[i], *d.sheaves[i]));
  for (std::size_t i = 0; i < d.maps.size(); ++i)
    for (std::size_t s = 0; s < c->size(); ++s) CHECK(same_matrix(back.maps[i].components[s], d.maps[i].components[s]));

  const Json fixture = read_json_file(fixtures + "/edge_diagram.json");
  auto fc = complex_from_json(fixture.at("complex"));
  auto fd = diagram_from_json(fixture, fc);
  CHECK(validate_diagram(fd).empty());
  CHECK(barcodes_equal(type_a_pointwise(fd, 0), make_barcode(0, {inf(1), inf(2), inf(4)})));
}

TEST_CASE("barcode round-trip") {
  BarcodeReport r{make_barcode(1, {fin(3, 5), fin(5, 5), inf(0)}), "graded", 3, 7};
  auto back = barcode_from_json(barcode_to_json(r));
  CHECK(barcodes_equal(back.barcode, r.barcode));
  CHECK(back.barcode.degree == 1);
  CHECK(back.engine == "graded");
  CHECK(back.field == 3);
  CHECK(back.steps == 7);
  CHECK(barcode_to_json(r, true)["bars"].front() == Json::parse("[0, 6]"));
}

TEST_CASE("rendering") {
  BarcodeReport empty{make_barcode(0, {}), "pointwise", 2, 1};
  CHECK(render_barcode(empty, Format::Text) == "H^0: (empty)\n");

  BarcodeReport three{make_barcode(0, {inf(1), inf(2), inf(4)}), "graded", 2, 5};
  CHECK(render_barcode(three, Format::Text) == "H^0: [1, inf)\nH^0: [2, inf)\nH^0: [4, inf)\n");
  CHECK(render_barcode(three, Format::Text, true) == "H^0: [1, 4]\nH^0: [2, 4]\nH^0: [4, 4]\n");

  BarcodeReport two{make_barcode(1, {fin(5, 5), fin(3, 5)}), "pointwise", 2, 7};
  CHECK(render_barcode(two, Format::Text) == "H^1: [3, 5]\nH^1: [5, 5]\n");

  const std::string svg = render_barcode(three, Format::Svg);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  const auto json = Json::parse(render_barcode(two, Format::Json));
  CHECK(json["degree"] == 1);
  CHECK(json["bars"].size() == 2);
  CHECK(render_barcode(two, Format::Svg) == render_barcode(two, Format::Svg));
}

TEST_CASE("points csv") {
  std::istringstream with_header("x,y,label\n0,0,red\n1,0,blue\n\n0,1,red\n");
  auto pts = parse_points_csv(with_header);
  CHECK(pts.points.size() == 3);
  CHECK(pts.labels == std::vector<std::string>{"red", "blue", "red"});
  CHECK(pts.points[1] == std::vector<double>{1.0, 0.0});

  std::istringstream bare("0.5, 2, a\n1.5, 2, b\n");
  auto p2 = parse_points_csv(bare);
  CHECK(p2.points.size() == 2);
  CHECK(p2.points[0] == std::vector<double>{0.5, 2.0});

  std::istringstream bad("0,0,a\n0,x,b\n");
  CHECK_THROWS_AS(parse_points_csv(bad), InputError);
  std::istringstream ragged("0,0,a\n0,b\n");
  CHECK_THROWS_AS(parse_points_csv(ragged), InputError);

  auto lf = labeled_from_points(pts, {0.5, 1.5}, 1, PrimeField(2));
  CHECK(lf.label_names == std::vector<std::string>{"blue", "red"});
  CHECK(lf.label_of.at(0) == 1);
  CHECK(lf.label_of.at(1) == 0);
  CHECK(lf.complex->steps() == 2);
}

TEST_CASE("labeled json") {
  auto lf = labeled_from_json(read_json_file(fixtures + "/two_pairs.json"), std::nullopt);
  auto expected = worked::two_pairs();
  check_same_complex(*lf.complex, *expected.complex);
  CHECK(lf.label_of == expected.label_of);
  CHECK(lf.label_names == expected.label_names);
  CHECK_THROWS(labeled_from_json(Json::parse(R"({"complex": {"simplices": [{"id": "v", "vertices": [0]}]},
                                                 "labels": []})"),
                                 std::nullopt));
}
