#include <doctest.h>

#include <string>

#include "conic/cone_json.hpp"
#include "conic/csv.hpp"

using namespace conic;

TEST_CASE("csv writer and parser round trip") {
  CsvWriter w({"t", "m", "p_hat"});
  w.add_comment("seed", "7");
  w.add_row({format_double(-0.5), "32", format_double(0.4721)});
  w.add_row({format_double(1.0 / 3.0), "33", format_double(1e-17)});
  const std::string text = w.str();
  CHECK(text.substr(0, 1) == "#");

  const CsvTable table = parse_csv(text);
  REQUIRE(table.header.size() == 3);
  CHECK(table.header[0] == "t");
  REQUIRE(table.rows.size() == 2);
  CHECK(std::stod(table.rows[1][0]) == 1.0 / 3.0);  // 17 digits round-trip exactly
  CHECK(std::stod(table.rows[1][2]) == 1e-17);
}

TEST_CASE("csv quoting") {
  CsvWriter w({"name", "inputs"});
  w.add_row({"tv", "delta=1;note=\"a,b\""});
  const CsvTable table = parse_csv(w.str());
  CHECK(table.rows[0][1] == "delta=1;note=\"a,b\"");
  CHECK_THROWS(w.add_row({"only-one-cell"}));
}

TEST_CASE("empty csv has only the header") {
  CsvWriter w({"j", "v_j"});
  const CsvTable table = parse_csv(w.str());
  CHECK(table.header.size() == 2);
  CHECK(table.rows.empty());
}

TEST_CASE("cone JSON round trips") {
  for (const char* text : {
           R"({"kind":"orthant","d":100})",
           R"({"kind":"subspace","d":10,"k":3})",
           R"({"kind":"circular","d":50,"alpha":0.5235987755982988})",
           R"({"kind":"psd","n":4})",
           R"({"kind":"chamber_a","d":8})",
           R"({"kind":"chamber_bc","d":8})",
           R"({"kind":"l1_descent","d":100,"s":10})",
           R"({"kind":"schatten_descent","m":6,"n":8,"r":2})",
       }) {
    const ConeSpec cone = cone_from_json_text(text);
    const ConeSpec back = cone_from_json_text(cone_to_json_text(cone));
    CHECK(back.describe() == cone.describe());
  }

  const ConeSpec polar = cone_from_json_text(R"({"kind":"polar","of":{"kind":"chamber_a","d":5}})");
  CHECK(polar.kind() == ConeKind::kPolar);
  CHECK(cone_from_json_text(cone_to_json_text(polar)).describe() == polar.describe());

  const ConeSpec negated = cone_from_json_text(R"({"kind":"orthant","d":4,"negated":true})");
  CHECK(negated.negated());
  CHECK(cone_from_json_text(cone_to_json_text(negated)).describe() == negated.describe());

  CHECK_THROWS_AS(cone_from_json_text("not json"), ParameterError);
  CHECK_THROWS_AS(cone_from_json_text(R"({"kind":"moebius","d":3})"), ParameterError);
  CHECK_THROWS_AS(cone_from_json_text(R"({"kind":"subspace","d":3,"k":9})"), ParameterError);
}
