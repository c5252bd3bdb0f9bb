#include "ncdef/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "ncdef/errors.hpp"

namespace ncdef {

namespace {

[[noreturn]] void bad(const std::string& code, const std::string& what) { throw ScenarioError(code, what); }

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad("MissingField", where + ": missing \"" + key + "\"");
  return j.at(key);
}

std::size_t need_count(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_number_unsigned()) bad("BadField", where + ": \"" + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

std::string need_string(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_string()) bad("BadField", where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

FieldSpec parse_field(const Json& j) {
  const std::string kind = need_string(j, "kind", "field");
  if (kind == "rational") return FieldSpec::rational();
  if (kind != "prime") bad("BadField", "field kind must be rational or prime");
  try {
    return FieldSpec::prime(need_count(j, "p", "field"));
  } catch (const std::invalid_argument& e) {
    bad("BadField", e.what());
  }
}

Vector coefficient_map(const Json& j, const std::vector<std::string>& names, const Field& f, const std::string& what) {
  Vector v = zero_vector(names.size(), f);
  auto index = [&](const std::string& n) {
    for (std::size_t k = 0; k < names.size(); ++k)
      if (names[k] == n) return k;
    bad("UnknownBasis", what + ": unknown basis element \"" + n + "\"");
  };
  if (j.is_string()) {
    v[index(j.get<std::string>())] = f.one();
    return v;
  }
  if (!j.is_object()) bad("BadField", what + ": expected an object of coefficients");
  for (const auto& [k, c] : j.items()) v[index(k)] += scalar_from_json(c, f);
  return v;
}

Algebra parse_structure(const Json& j, const Field& f) {
  const Json& basis = need(j, "basis", "algebra");
  if (!basis.is_array() || basis.empty()) bad("BadField", "algebra: basis must be a non-empty array");
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const auto& b : basis) {
    if (!b.is_string()) bad("BadField", "algebra: basis names must be strings");
    if (!seen.insert(b.get<std::string>()).second) bad("BadField", "algebra: duplicate basis name " + b.dump());
    if (b.get<std::string>().find('*') != std::string::npos) bad("BadField", "algebra: basis names cannot contain '*'");
    names.push_back(b.get<std::string>());
  }
  const std::size_t n = names.size();
  Vector unit = coefficient_map(need(j, "unit", "algebra"), names, f, "unit");
  std::vector<SparseVec> table(n * n);
  if (j.contains("products")) {
    const Json& prods = j.at("products");
    if (!prods.is_object()) bad("BadField", "algebra: products must be an object");
    for (const auto& [key, val] : prods.items()) {
      const auto star = key.find('*');
      if (star == std::string::npos) bad("BadField", "products key \"" + key + "\" must look like a*b");
      const std::string l = key.substr(0, star), r = key.substr(star + 1);
      std::size_t li = n, ri = n;
      for (std::size_t k = 0; k < n; ++k) {
        if (names[k] == l) li = k;
        if (names[k] == r) ri = k;
      }
      if (li == n || ri == n) bad("UnknownBasis", "products key \"" + key + "\" names unknown elements");
      const Vector v = coefficient_map(val, names, f, "products[" + key + "]");
      for (std::size_t k = 0; k < n; ++k)
        if (!v[k].is_zero()) table[li * n + ri].emplace_back(k, v[k]);
    }
  }
  Algebra a(f, std::move(names), std::move(unit), std::move(table));
  validate(a);
  return a;
}

MatricPresentation parse_presentation(const Json& j, std::size_t cap) {
  MatricPresentation p;
  p.quiver.points = need_count(j, "points", "presentation");
  if (p.quiver.points == 0) bad("BadField", "presentation: points must be positive");
  const Json& arrows = need(j, "arrows", "presentation");
  if (!arrows.is_array()) bad("BadField", "presentation: arrows must be an array");
  for (const auto& a : arrows) {
    Arrow arr{need_string(a, "name", "arrow"), need_count(a, "from", "arrow"), need_count(a, "to", "arrow")};
    if (arr.source < 1 || arr.source > p.quiver.points || arr.target < 1 || arr.target > p.quiver.points)
      bad("BadField", "arrow " + arr.name + ": endpoints are 1-based points");
    if (p.quiver.arrow_index(arr.name)) bad("BadField", "duplicate arrow " + arr.name);
    --arr.source;
    --arr.target;
    p.quiver.arrows.push_back(std::move(arr));
  }
  if (j.contains("relations")) {
    for (const auto& r : j.at("relations")) {
      if (!r.is_string()) bad("BadRelation", "relations must be strings");
      p.relations.push_back(r.get<std::string>());
    }
  }
  p.degree_cap = cap;
  return p;
}

ModuleRep parse_structure_module(const Json& j, const Algebra& a) {
  ModuleRep m;
  m.name = need_string(j, "name", "module");
  m.dim = need_count(j, "dim", "module " + m.name);
  const Json& action = need(j, "action", "module " + m.name);
  if (!action.is_object()) bad("BadModule", "module " + m.name + ": action must be an object");
  for (std::size_t b = 0; b < a.dim(); ++b) {
    if (!action.contains(a.name(b))) bad("BadModule", "module " + m.name + ": no action for " + a.name(b));
    m.action.push_back(matrix_from_json(action.at(a.name(b)), m.dim, m.dim, a.field(),
                                        "module " + m.name + " action " + a.name(b)));
  }
  for (const auto& [k, v] : action.items()) {
    bool known = false;
    for (std::size_t b = 0; b < a.dim(); ++b) known = known || a.name(b) == k;
    if (!known) bad("UnknownBasis", "module " + m.name + ": unknown basis element " + k);
  }
  validate_module(a, m);
  return m;
}

ModuleRep parse_presented_module(const Json& j, const PresentedAlgebra& pa, const Field& f) {
  const std::string name = need_string(j, "name", "module");
  const std::size_t dim = need_count(j, "dim", "module " + name);
  const Quiver& q = pa.table().quiver();
  const Json& points = need(j, "points", "module " + name);
  if (!points.is_array() || points.size() != q.points)
    bad("BadModule", "module " + name + ": points needs one matrix per point");
  std::vector<Matrix> pts, arr;
  for (std::size_t i = 0; i < q.points; ++i)
    pts.push_back(matrix_from_json(points[i], dim, dim, f, "module " + name + " e" + std::to_string(i + 1)));
  const Json arrows = j.contains("arrows") ? j.at("arrows") : Json::object();
  if (!arrows.is_object()) bad("BadModule", "module " + name + ": arrows must be an object");
  for (const auto& [k, v] : arrows.items())
    if (!q.arrow_index(k)) bad("UnknownBasis", "module " + name + ": unknown arrow " + k);
  for (const auto& a : q.arrows)
    arr.push_back(arrows.contains(a.name) ? matrix_from_json(arrows.at(a.name), dim, dim, f, "module " + name + " " + a.name)
                                          : Matrix(dim, dim, f));
  return pa.module(name, dim, pts, arr);
}

}  // namespace

std::size_t Scenario::index_of(const std::string& module_name) const {
  for (std::size_t i = 0; i < family.size(); ++i)
    if (family[i].name == module_name) return i;
  throw ScenarioError("UnknownModule", "no module named " + module_name);
}

Json scalar_to_json(const Scalar& s) {
  const mpq_class q = s.modulus() ? mpq_class(0) : s.to_rational();
  const std::string text = s.str();
  if (s.modulus() || (q.get_den() == 1 && q.get_num().fits_slong_p())) return std::stol(text);
  return text;
}

Scalar scalar_from_json(const Json& j, const Field& f) {
  if (j.is_number_integer()) return f.from_int(j.get<long>());
  if (j.is_string()) {
    try {
      return f.parse(j.get<std::string>());
    } catch (const std::exception& e) {
      bad("BadScalar", "cannot read scalar " + j.dump() + ": " + e.what());
    }
  }
  bad("BadScalar", "scalars are integers or strings like \"3/2\", got " + j.dump());
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const Field& f, const std::string& what) {
  if (!j.is_array() || j.size() != rows) bad("BadMatrix", what + ": expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols, f);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      bad("BadMatrix", what + ": row " + std::to_string(r + 1) + " needs " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(j[r][c], f);
  }
  return m;
}

Conventions parse_conventions(const Json& j) {
  Conventions c;
  if (!j.is_object()) bad("BadConventions", "conventions must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) bad("BadConventions", "convention " + k + " must be a string");
    if (k == "ext1_column_order")
      c.ext1_column_order = v.get<std::string>();
    else if (k == "cochain_column_order")
      c.cochain_column_order = v.get<std::string>();
    else if (k == "massey_sign")
      c.massey_sign = v.get<std::string>();
    else
      bad("BadConventions", "unknown convention " + k);
  }
  c.check();
  return c;
}

Json conventions_to_json(const Conventions& c) {
  return Json{{"ext1_column_order", c.ext1_column_order},
              {"cochain_column_order", c.cochain_column_order},
              {"massey_sign", c.massey_sign}};
}

Scenario parse_scenario(const std::string& text, std::optional<std::size_t> degree_cap_override) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad("BadJson", e.what());
  }
  if (!j.is_object()) bad("BadJson", "scenario must be a JSON object");
  if (need_string(j, "schema", "scenario") != kScenarioSchema)
    bad("BadSchema", std::string("schema must be ") + kScenarioSchema);
  Scenario s;
  s.name = j.contains("name") ? need_string(j, "name", "scenario") : "scenario";
  s.field = parse_field(need(j, "field", "scenario"));
  const Field f = s.f();

  const Json opts = j.contains("options") ? j.at("options") : Json::object();
  if (opts.contains("degree_cap")) s.degree_cap = need_count(opts, "degree_cap", "options");
  if (degree_cap_override) s.degree_cap = *degree_cap_override;
  if (s.degree_cap < 1) bad("BadOption", "degree_cap must be at least 1");
  if (opts.contains("cochain_support_cap") && need_count(opts, "cochain_support_cap", "options") != s.degree_cap)
    bad("BadOption", "cochain_support_cap other than degree_cap is not supported");
  if (opts.contains("emit")) {
    s.emit = need_string(opts, "emit", "options");
    if (s.emit != "json" && s.emit != "text") bad("BadOption", "emit must be json or text");
  }

  const Json& alg = need(j, "algebra", "scenario");
  const Json& mods = need(j, "modules", "scenario");
  if (!mods.is_array() || mods.empty()) bad("BadField", "modules must be a non-empty array");
  s.modules_source = mods;
  if (alg.contains("presentation")) {
    s.presentation = parse_presentation(alg.at("presentation"), s.degree_cap);
    s.presented = std::make_shared<PresentedAlgebra>(f, *s.presentation);
    s.algebra = s.presented->algebra();
    for (const auto& m : mods) s.family.push_back(parse_presented_module(m, *s.presented, f));
  } else {
    s.algebra = parse_structure(alg, f);
    for (const auto& m : mods) s.family.push_back(parse_structure_module(m, s.algebra));
  }
  std::set<std::string> names;
  for (const auto& m : s.family)
    if (!names.insert(m.name).second) bad("BadModule", "duplicate module name " + m.name);
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("NoSuchFile", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scenario load_scenario(const std::string& path, std::optional<std::size_t> degree_cap_override) {
  return parse_scenario(read_file(path), degree_cap_override);
}

Json scenario_to_json(const Scenario& s) {
  Json j;
  j["schema"] = kScenarioSchema;
  j["name"] = s.name;
  j["field"] = s.field.is_prime() ? Json{{"kind", "prime"}, {"p", s.field.characteristic()}} : Json{{"kind", "rational"}};
  if (s.presentation) {
    Json arrows = Json::array();
    for (const auto& a : s.presentation->quiver.arrows)
      arrows.push_back(Json{{"name", a.name}, {"from", a.source + 1}, {"to", a.target + 1}});
    j["algebra"] = Json{{"presentation", Json{{"points", s.presentation->quiver.points},
                                               {"arrows", arrows},
                                               {"relations", s.presentation->relations}}}};
    j["modules"] = s.modules_source;
  } else {
    const Algebra& a = s.algebra;
    Json unit = Json::object(), prods = Json::object();
    for (std::size_t k = 0; k < a.dim(); ++k)
      if (!a.unit()[k].is_zero()) unit[a.name(k)] = scalar_to_json(a.unit()[k]);
    for (std::size_t x = 0; x < a.dim(); ++x)
      for (std::size_t y = 0; y < a.dim(); ++y) {
        Json val = Json::object();
        for (const auto& [k, c] : a.product(x, y))
          if (!c.is_zero()) val[a.name(k)] = scalar_to_json(c);
        if (!val.empty()) prods[a.name(x) + "*" + a.name(y)] = val;
      }
    j["algebra"] = Json{{"basis", a.names()}, {"unit", unit}, {"products", prods}};
    Json mods = Json::array();
    for (const auto& m : s.family) {
      Json act = Json::object();
      for (std::size_t b = 0; b < a.dim(); ++b) act[a.name(b)] = matrix_to_json(m.action[b]);
      mods.push_back(Json{{"name", m.name}, {"dim", m.dim}, {"action", act}});
    }
    j["modules"] = mods;
  }
  j["options"] = Json{{"degree_cap", s.degree_cap}, {"emit", s.emit}};
  return j;
}

}  // namespace ncdef
