#include "conic/cone_json.hpp"

#include <json.hpp>

namespace conic {

namespace {

using nlohmann::json;

ConeSpec from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ParameterError("cone JSON must be an object with a \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  const bool negated = j.value("negated", false);

  auto base = [&]() -> ConeSpec {
    if (kind == "orthant") return ConeSpec::orthant(j.at("d").get<int>());
    if (kind == "subspace") return ConeSpec::subspace(j.at("d").get<int>(), j.at("k").get<int>());
    if (kind == "circular") return ConeSpec::circular(j.at("d").get<int>(), j.at("alpha").get<double>());
    if (kind == "psd") return ConeSpec::psd(j.at("n").get<int>());
    if (kind == "chamber_a") return ConeSpec::chamber_a(j.at("d").get<int>());
    if (kind == "chamber_bc") return ConeSpec::chamber_bc(j.at("d").get<int>());
    if (kind == "l1_descent") return ConeSpec::l1_descent(j.at("d").get<int>(), j.at("s").get<int>());
    if (kind == "schatten_descent")
      return ConeSpec::schatten_descent(j.at("m").get<int>(), j.at("n").get<int>(), j.at("r").get<int>());
    if (kind == "polar") return from_json(j.at("of")).polar();
    throw ParameterError("unknown cone kind: " + kind);
  }();

  if (!negated) return base;
  switch (base.kind()) {
    case ConeKind::kOrthant:
      return base.polar();  // polar of the positive copy is the negated copy
    case ConeKind::kCircular:
      return ConeSpec::circular(base.ambient_dimension(), 0.5 * kPi - base.angle()).polar();
    default:
      throw ParameterError("\"negated\" only applies to orthant and circular cones");
  }
}

json to_json(const ConeSpec& cone) {
  json j;
  switch (cone.kind()) {
    case ConeKind::kOrthant:
      j = {{"kind", "orthant"}, {"d", cone.ambient_dimension()}};
      break;
    case ConeKind::kSubspace:
      j = {{"kind", "subspace"}, {"d", cone.ambient_dimension()}, {"k", cone.subspace_dim()}};
      break;
    case ConeKind::kCircular:
      j = {{"kind", "circular"}, {"d", cone.ambient_dimension()}, {"alpha", cone.angle()}};
      break;
    case ConeKind::kPsd:
      j = {{"kind", "psd"}, {"n", cone.psd_side()}};
      break;
    case ConeKind::kChamberA:
      j = {{"kind", "chamber_a"}, {"d", cone.ambient_dimension()}};
      break;
    case ConeKind::kChamberBC:
      j = {{"kind", "chamber_bc"}, {"d", cone.ambient_dimension()}};
      break;
    case ConeKind::kL1Descent:
      j = {{"kind", "l1_descent"}, {"d", cone.ambient_dimension()}, {"s", cone.sparsity()}};
      break;
    case ConeKind::kSchattenDescent:
      j = {{"kind", "schatten_descent"}, {"m", cone.matrix_rows()}, {"n", cone.matrix_cols()}, {"r", cone.rank()}};
      break;
    case ConeKind::kPolar:
      j = {{"kind", "polar"}, {"of", json::parse(cone_to_json_text(cone.inner()))}};
      break;
  }
  if (cone.negated()) j["negated"] = true;
  return j;
}

}  // namespace

ConeSpec cone_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("invalid cone JSON: ") + e.what());
  }
  return from_json(j);
}

std::string cone_to_json_text(const ConeSpec& cone) { return to_json(cone).dump(); }

}  // namespace conic
