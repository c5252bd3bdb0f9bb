#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ncdef/algebra.hpp"
#include "ncdef/hochschild.hpp"

namespace ncdef {

using Json = nlohmann::ordered_json;

inline constexpr const char* kScenarioSchema = "ncdef-scenario/1";
inline constexpr const char* kToolVersion = "0.3.0";

/// Parsed scenario file. Either a structure-constant algebra or a matric
/// presentation (then `presented` is set and `algebra` is its truncation).
struct Scenario {
  std::string name;
  FieldSpec field;
  Algebra algebra;
  std::shared_ptr<PresentedAlgebra> presented;
  std::optional<MatricPresentation> presentation;
  std::vector<ModuleRep> family;
  std::size_t degree_cap = 8;
  std::string emit = "json";
  /// Raw module input kept for the round trip (presentation modules are
  /// given on idempotents and arrows).
  Json modules_source;

  Field f() const { return Field{field}; }
  std::size_t index_of(const std::string& module_name) const;
};

/// Throws ScenarioError on any schema or consistency problem.
/// degree_cap_override replaces options.degree_cap (and the presentation cap).
Scenario parse_scenario(const std::string& text, std::optional<std::size_t> degree_cap_override = std::nullopt);
Scenario load_scenario(const std::string& path, std::optional<std::size_t> degree_cap_override = std::nullopt);
/// Canonical JSON form; parse_scenario(dump(to_json(s))) is equivalent to s.
Json scenario_to_json(const Scenario& s);

Conventions parse_conventions(const Json& j);
Json conventions_to_json(const Conventions& c);

Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, const Field& f);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const Field& f, const std::string& what);

std::string read_file(const std::string& path);

}  // namespace ncdef
