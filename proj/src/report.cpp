#include "ncdef/report.hpp"

#include <iostream>
#include <sstream>

#include "ncdef/cache.hpp"
#include "ncdef/errors.hpp"
#include "ncdef/extensions.hpp"
#include "ncdef/observables.hpp"

namespace ncdef {

Session::Session(Scenario s, std::string scenario_bytes, RunOptions opts)
    : s_(std::move(s)), bytes_(std::move(scenario_bytes)), opts_(std::move(opts)) {
  opts_.conventions.check();
  cx_ = std::make_unique<Complex>(s_.algebra, s_.family, opts_.conventions);
}

HullEngine& Session::engine() {
  if (!engine_) {
    engine_ = std::make_unique<HullEngine>(*cx_);
    pro_ = engine_->run(s_.degree_cap);
  }
  return *engine_;
}

const ProCouple& Session::hull() {
  if (pro_) return *pro_;
  std::optional<HullCache> cache;
  std::string key;
  if (opts_.cache_dir) {
    cache.emplace(*opts_.cache_dir);
    key = HullCache::key(bytes_, opts_.conventions, s_.degree_cap);
    if (auto hit = cache->load(key, *cx_)) {
      cache_hit_ = true;
      std::cerr << "cache: hit " << key << "\n";
      pro_ = std::move(*hit);
      return *pro_;
    }
  }
  engine();
  if (cache) {
    cache->store(key, *pro_);
    std::cerr << "cache: stored " << key << "\n";
  }
  return *pro_;
}

namespace {

Json header(Session& s, const std::string& command) {
  Json tool{{"name", "ncdef"},
            {"version", kToolVersion},
            {"conventions", conventions_to_json(s.options().conventions)},
            {"leibniz_sign", kLeibnizSign},
            {"psi_alpha_dictionary", "alpha_ij = (-1)^(j-i+1) psi_ij"}};
  Json modules = Json::array();
  for (const auto& m : s.scenario().family) modules.push_back(Json{{"name", m.name}, {"dim", m.dim}});
  return Json{{"schema", "ncdef-report/1"},
              {"command", command},
              {"scenario", s.scenario().name},
              {"field", s.scenario().field.describe()},
              {"algebra_dim", s.complex().algebra().dim()},
              {"truncated_at", s.scenario().presented ? Json(s.scenario().degree_cap) : Json(nullptr)},
              {"modules", modules},
              {"tool", tool}};
}

Json ext_table(const Complex& cx) {
  Json t = Json::array();
  for (std::size_t i = 0; i < cx.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < cx.size(); ++j) row.push_back(cx.ext1(i, j).reps.size());
    t.push_back(row);
  }
  return t;
}

Json hull_json(const ProCouple& pro) {
  Json arrows = Json::array();
  for (const auto& a : pro.quiver.arrows) arrows.push_back(Json{{"name", a.name}, {"from", a.source + 1}, {"to", a.target + 1}});
  const PathTable t = pro.table();
  Json rels = Json::array();
  for (const auto& r : pro.level.relations) rels.push_back(Json{{"name", r.name}, {"poly", render_poly(r.poly, t)}});
  Json levels = Json::array();
  for (const auto& h : pro.history) levels.push_back(Json{{"n", h.n}, {"relations", h.relations}, {"graded_dims", h.graded_dims}});
  Json blocks = Json::array();
  for (std::size_t i = 0; i < pro.quiver.points; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < pro.quiver.points; ++j) row.push_back(pro.dim_block(i, j));
    blocks.push_back(row);
  }
  return Json{{"arrows", arrows},
              {"relations", rels},
              {"graded_dims", pro.graded_dims()},
              {"dim", pro.dim()},
              {"block_dims", blocks},
              {"stabilized", pro.stabilized},
              {"top_degree", pro.top_degree},
              {"obstruction_classes", pro.class_names},
              {"levels", levels}};
}

std::vector<std::size_t> module_dims(const Complex& cx) {
  std::vector<std::size_t> d;
  for (const auto& m : cx.family()) d.push_back(m.dim);
  return d;
}

Json combination(const Algebra& a, std::span<const Scalar> v) {
  Json out = Json::object();
  for (std::size_t k = 0; k < a.dim(); ++k)
    if (!v[k].is_zero()) out[a.name(k)] = scalar_to_json(v[k]);
  return out;
}

std::vector<std::size_t> chain_from_json(const Session& s, const Json& chain) {
  if (!chain.is_array() || chain.empty()) throw ScenarioError("BadChain", "chain must be a non-empty array");
  std::vector<std::size_t> out;
  for (const auto& c : chain) {
    if (c.is_string()) {
      out.push_back(s.scenario().index_of(c.get<std::string>()));
    } else if (c.is_number_unsigned() && c.get<std::size_t>() >= 1 && c.get<std::size_t>() <= s.complex().size()) {
      out.push_back(c.get<std::size_t>() - 1);
    } else {
      throw ScenarioError("BadChain", "chain entries are module names or 1-based indices");
    }
  }
  return out;
}

Json cochain_json(const Complex& cx, const Cochain& c) {
  Json vals = Json::object();
  for (std::size_t b = 0; b < cx.algebra().dim(); ++b)
    if (!c.values[b].is_zero()) vals[cx.algebra().name(b)] = matrix_to_json(c.values[b]);
  return vals;
}

Json family_json(const Complex& cx, const std::map<std::pair<std::size_t, std::size_t>, Cochain>& m) {
  Json out = Json::array();
  for (const auto& [k, c] : m) out.push_back(Json{{"i", k.first + 1}, {"j", k.second + 1}, {"values", cochain_json(cx, c)}});
  return out;
}

Json extension_json(Session& s, const IteratedExtension& e) {
  const Complex& cx = s.complex();
  Json action = Json::object();
  for (std::size_t b = 0; b < cx.algebra().dim(); ++b) action[cx.algebra().name(b)] = matrix_to_json(e.module.action[b]);
  Json induced = Json::array();
  for (const auto& v : e.induced) {
    Json row = Json::array();
    for (const auto& c : v) row.push_back(scalar_to_json(c));
    induced.push_back(row);
  }
  Json out{{"dim", e.module.dim},
           {"flag_dims", e.flag_dims},
           {"induced_classes", induced},
           {"psi", family_json(cx, e.spec.psi)},
           {"alpha", family_json(cx, alpha_from_psi(cx, e.spec).alpha)},
           {"action", action}};
  if (!cx.algebra().support_cap()) {
    const auto chain = kernel_chain(cx, s.hull());
    const Subspace& k = chain.back();
    const auto ann = annihilation_check(cx, e, k);
    out["annihilation"] = Json{{"K_dim", k.dim()},
                               {"E_K_zero", ann.annihilates},
                               {"modules_K_zero", ann.modules_vanish},
                               {"alpha_K_zero", ann.alpha_vanish}};
  }
  return out;
}

}  // namespace

Json report_ext(Session& s) {
  Json r = header(s, "ext");
  r["ext1_dims"] = ext_table(s.complex());
  return r;
}

Json report_hull(Session& s) {
  const ProCouple& pro = s.hull();
  Json r = header(s, "hull");
  r["ext1_dims"] = pro.ext1_dims;
  r["hull"] = hull_json(pro);
  r["kernel_chain"] = pro.kernel_chain;
  return r;
}

Json report_kernel_chain(Session& s) {
  const Complex& cx = s.complex();
  if (cx.algebra().support_cap())
    throw HypothesisViolation("TruncatedAlgebra", "the kernel chain needs a finite-dimensional algebra");
  const ProCouple& pro = s.hull();
  const auto chain = kernel_chain(cx, pro);
  Json basis = Json::array();
  for (std::size_t k = 0; k < chain.back().dim(); ++k) basis.push_back(combination(cx.algebra(), chain.back().basis().row(k)));
  Json r = header(s, "kernel-chain");
  r["kernel_chain"] = pro.kernel_chain;
  r["K_dim"] = chain.back().dim();
  r["K_basis"] = basis;
  r["radical_dim"] = chain.front().dim();
  r["stabilized"] = pro.stabilized;
  return r;
}

Json report_observables(Session& s) {
  const Complex& cx = s.complex();
  const ProCouple& pro = s.hull();
  const ObservablesAlg obs = assemble(pro, module_dims(cx), cx.field());
  Json o{{"dim_A", cx.algebra().dim()}, {"dim_O", obs.labels.size()}, {"truncated", obs.truncated}};
  Json end_dims = Json::array(), certs = Json::array();
  for (const auto& m : cx.family()) {
    const auto c = simplicity_certificate(cx.algebra(), m);
    end_dims.push_back(c.end_dim);
    certs.push_back(to_string(c.verdict));
  }
  o["end_dims"] = end_dims;
  o["certificates"] = certs;
  if (cx.algebra().support_cap()) {
    o["eta"] = nullptr;
  } else {
    const VersalMorphism vm = versal_morphism(cx, pro, obs);
    o["ker_dim"] = vm.kernel.dim();
    o["im_dim"] = vm.image.dim();
    o["eta_injective"] = vm.kernel.dim() == 0;
    o["eta_surjective"] = vm.image.dim() == obs.labels.size();
  }
  Json r = header(s, "observables");
  r["hull"] = Json{{"graded_dims", pro.graded_dims()}, {"stabilized", pro.stabilized}};
  r["observables"] = o;
  return r;
}

Json report_burnside(Session& s) {
  const Complex& cx = s.complex();
  const ProCouple& pro = s.hull();
  const BurnsideReport b = burnside_report(cx, pro);
  Json r = header(s, "burnside");
  r["hull"] = Json{{"graded_dims", pro.graded_dims()}, {"stabilized", pro.stabilized}};
  r["observables"] = Json{{"dim_A", b.dim_A},
                          {"dim_O", b.dim_O},
                          {"ker_dim", b.ker_dim},
                          {"im_dim", b.im_dim},
                          {"end_dims", b.end_dims},
                          {"certificates", b.certificates},
                          {"classical_surjective", b.classical_surjective},
                          {"eta_injective", b.eta_injective},
                          {"eta_surjective", b.eta_surjective},
                          {"gbt_verdict", b.verdict()}};
  r["graded"] = Json{{"radical_dim", b.rad_dim},
                     {"gr0_iso", b.gr0_iso},
                     {"gr1_iso", b.gr1_iso},
                     {"gr1_dim_A", b.gr1_A},
                     {"gr1_dim_O", b.gr1_O},
                     {"gr1_rank", b.gr1_rank}};
  r["standard_form"] = b.standard.summary;
  return r;
}

Json report_standard_form(Session& s) {
  const Complex& cx = s.complex();
  const ProCouple& pro = s.hull();
  const ObservablesAlg obs = assemble(pro, module_dims(cx), cx.field());
  const VersalMorphism vm = versal_morphism(cx, pro, obs);
  const StandardForm sf = standard_form(pro, obs, vm);
  const PathTable t = pro.table();
  Json blocks = Json::array();
  for (const auto& b : sf.blocks) {
    Json labels = Json::array();
    for (const auto& l : obs.labels)
      if (l.src == b.i && l.tgt == b.j)
        labels.push_back(t.render(l.word) + "@E" + std::to_string(l.p + 1) + std::to_string(l.q + 1));
    Json basis = Json::array();
    for (std::size_t k = 0; k < b.basis.rows(); ++k) {
      Json row = Json::array();
      for (std::size_t c = 0; c < b.basis.cols(); ++c) row.push_back(scalar_to_json(b.basis(k, c)));
      basis.push_back(row);
    }
    blocks.push_back(Json{{"i", b.i + 1},
                          {"j", b.j + 1},
                          {"descriptor", b.descriptor},
                          {"dim", b.dim},
                          {"full_dim", b.full_dim},
                          {"labels", labels},
                          {"basis", basis}});
  }
  Json r = header(s, "standard-form");
  r["summary"] = sf.summary;
  r["blocks"] = blocks;
  return r;
}

Json report_closure(Session& s) {
  const ClosureReport c = closure_check(s.complex(), s.scenario().degree_cap);
  Json r = header(s, "closure");
  r["closure"] = Json{{"dim_B", c.dim_B},
                      {"certificates_over_B", c.certificates},
                      {"graded_dims_A", c.graded_dims_A},
                      {"graded_dims_B", c.graded_dims_B},
                      {"ker_dim", c.ker_dim},
                      {"im_dim", c.im_dim},
                      {"eta_B_bijective", c.eta_bijective},
                      {"stabilized", c.stabilized}};
  return r;
}

Json report_extension_build(Session& s, const Json& cochains) {
  const Complex& cx = s.complex();
  CofiltrationSpec spec;
  spec.modules = chain_from_json(s, cochains.contains("chain") ? cochains.at("chain") : Json());
  const Json psi = cochains.contains("psi") ? cochains.at("psi") : Json::array();
  if (!psi.is_array()) throw ScenarioError("BadCochains", "psi must be an array");
  for (const auto& e : psi) {
    if (!e.contains("i") || !e.contains("j") || !e.at("i").is_number_unsigned() || !e.at("j").is_number_unsigned())
      throw ScenarioError("BadCochains", "psi entries need 1-based i and j");
    const std::size_t i = e.at("i").get<std::size_t>(), j = e.at("j").get<std::size_t>();
    if (i < 1 || j <= i || j > spec.modules.size()) throw ScenarioError("BadCochains", "psi needs 1 <= i < j <= r");
    Cochain c = cx.zero(1, spec.modules[i - 1], spec.modules[j - 1]);
    const Json vals = e.contains("values") ? e.at("values") : Json::object();
    if (!vals.is_object()) throw ScenarioError("BadCochains", "psi values must be an object");
    for (const auto& [name, m] : vals.items()) {
      std::size_t b = cx.algebra().dim();
      for (std::size_t k = 0; k < cx.algebra().dim(); ++k)
        if (cx.algebra().name(k) == name) b = k;
      if (b == cx.algebra().dim()) throw ScenarioError("UnknownBasis", "unknown basis element " + name);
      c.values[b] = matrix_from_json(m, cx.mdim(c.src), cx.mdim(c.tgt), cx.field(), "psi value " + name);
    }
    if (!spec.psi.emplace(std::make_pair(i - 1, j - 1), std::move(c)).second)
      throw ScenarioError("BadCochains", "psi entry given twice");
  }
  const IteratedExtension e = build(cx, spec);
  const DefiningSystem sys = alpha_from_psi(cx, spec);
  Json r = header(s, "extension build");
  r["chain"] = cochains.at("chain");
  r["extension"] = extension_json(s, e);
  r["corner_bounds"] = spec.modules.size() < 2 || corner_bounds(cx, sys);
  return r;
}

Json report_extension_check(Session& s, const Json& cochains, bool search_indeterminacy) {
  const Complex& cx = s.complex();
  const auto modules = chain_from_json(s, cochains.contains("chain") ? cochains.at("chain") : Json());
  const Json classes = cochains.contains("classes") ? cochains.at("classes") : Json();
  if (!classes.is_array() || classes.size() + 1 != modules.size())
    throw ScenarioError("BadCochains", "classes needs one Ext^1 coordinate list per consecutive pair");
  std::vector<Cochain> consecutive;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto& ext = cx.ext1(modules[k], modules[k + 1]);
    if (!classes[k].is_array() || classes[k].size() != ext.reps.size())
      throw ScenarioError("BadCochains", "class " + std::to_string(k + 1) + " needs " + std::to_string(ext.reps.size()) +
                                             " coordinates");
    Cochain c = cx.zero(1, modules[k], modules[k + 1]);
    for (std::size_t l = 0; l < ext.reps.size(); ++l) c += scalar_from_json(classes[k][l], cx.field()) * ext.reps[l];
    consecutive.push_back(std::move(c));
  }
  HullEngine& eng = s.engine();  // registers the hull's classes first, so names agree
  const VanishingResult v = massey_vanishing_check(cx, eng.registry(), modules, consecutive, search_indeterminacy);
  Json r = header(s, "extension check");
  r["chain"] = cochains.at("chain");
  r["indeterminacy_search"] = search_indeterminacy;
  r["adjusted"] = v.adjusted;
  if (v.constructible) {
    r["result"] = "Constructible";
    r["extension"] = extension_json(s, *v.extension);
  } else {
    Json cls = Json::object();
    for (std::size_t l = 0; l < v.classes.size(); ++l)
      if (!v.classes[l].is_zero()) cls[eng.registry().class_name(v.src, v.tgt, l)] = scalar_to_json(v.classes[l]);
    r["result"] = "Obstructed";
    r["obstruction"] = Json{{"order", v.order}, {"from", v.i + 1}, {"to", v.j + 1}, {"class", cls}};
  }
  return r;
}

namespace {

void flatten(const Json& j, const std::string& prefix, std::ostringstream& out) {
  auto scalar_list = [](const Json& a) {
    for (const auto& x : a)
      if (x.is_structured()) return false;
    return true;
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && scalar_list(j)) {
    out << prefix << ":";
    for (const auto& x : j) out << " " << (x.is_string() ? x.get<std::string>() : x.dump());
    out << "\n";
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "[" + std::to_string(k + 1) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream out;
  flatten(report, "", out);
  return out.str();
}

}  // namespace ncdef
