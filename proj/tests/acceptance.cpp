// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "properties.hpp"
#include "ncdef/errors.hpp"
#include "ncdef/extensions.hpp"
#include "ncdef/hull.hpp"
#include "ncdef/observables.hpp"
#include "ncdef/scenario.hpp"

using namespace ncdef;

namespace {

const std::string kScenarios = NCDEF_SCENARIO_DIR;

Scenario scenario(const std::string& name) { return load_scenario(kScenarios + "/" + name + ".json"); }

// collects failed sub-checks of one criterion
struct Checks {
  std::vector<std::string> failed;
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

template <class T>
std::string show(const std::vector<T>& v) {
  std::ostringstream s;
  s << "(";
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << ")";
  return s.str();
}

std::vector<std::vector<std::size_t>> ext_dims(const Complex& cx) {
  std::vector<std::vector<std::size_t>> d(cx.size(), std::vector<std::size_t>(cx.size()));
  for (std::size_t i = 0; i < cx.size(); ++i)
    for (std::size_t j = 0; j < cx.size(); ++j) d[i][j] = cx.ext1(i, j).reps.size();
  return d;
}

std::vector<std::size_t> module_dims(const Complex& cx) {
  std::vector<std::size_t> d;
  for (std::size_t i = 0; i < cx.size(); ++i) d.push_back(cx.mdim(i));
  return d;
}

void criterion1(Checks& c) {
  const Scenario s = scenario("z3_gf7");
  const Complex cx(s.algebra, s.family);
  c.expect(ext_dims(cx) == std::vector<std::vector<std::size_t>>(3, std::vector<std::size_t>(3, 0)), "Ext^1 not zero");
  const ProCouple pro = run_hull(cx, s.degree_cap);
  c.expect(pro.stabilized && pro.quiver.arrows.empty() && pro.dim() == 3, "H != k^3");
  const BurnsideReport r = burnside_report(cx, pro);
  c.expect(r.eta_injective && r.eta_surjective, "eta not bijective");
  c.expect(r.dim_O == 3, "dim O = " + std::to_string(r.dim_O));
  c.expect(r.standard.summary == "k^3", "standard form " + r.standard.summary);
  c.note("H=k^3 dimO=" + std::to_string(r.dim_O) + " form=" + r.standard.summary);
}

void criterion2(Checks& c) {
  const Scenario s = scenario("z3_gf3");
  const Complex cx(s.algebra, s.family);
  c.expect(cx.size() == 1, "expected one simple");
  c.expect(cx.ext1(0, 0).reps.size() == 1, "Ext^1 dim != 1");
  const ProCouple pro = run_hull(cx, s.degree_cap);
  c.expect(pro.quiver.arrows.size() == 1, "hull quiver is not one loop");
  c.expect(pro.level.relations.size() == 1, "expected a single relation");
  std::string lead = "?";
  if (pro.level.relations.size() == 1) {
    const PathTable t = pro.table();
    const auto& poly = pro.level.relations[0].poly;
    lead = t.render(poly.begin()->first);
    c.expect(t.path(poly.begin()->first).degree() == 3 && t.path(poly.begin()->first).arrows == std::vector<std::size_t>{0, 0, 0},
             "leading term " + lead);
  }
  c.expect(pro.stabilized && pro.dim() == 3, "dim H = " + std::to_string(pro.dim()));
  const BurnsideReport r = burnside_report(cx, pro);
  c.expect(r.eta_injective && r.eta_surjective, "eta not bijective");
  c.note("lead=" + lead + " dimH=" + std::to_string(pro.dim()));
}

void criterion3(Checks& c) {
  const Scenario s = scenario("z3_rational");
  const Complex cx(s.algebra, s.family);
  c.expect(module_dims(cx) == std::vector<std::size_t>{1, 2}, "simple dims " + show(module_dims(cx)));
  const ProCouple pro = run_hull(cx, s.degree_cap);
  c.expect(pro.stabilized && pro.quiver.arrows.empty() && pro.dim() == 2, "H != k x k");
  const BurnsideReport r = burnside_report(cx, pro);
  c.expect(r.end_dims == std::vector<std::size_t>{1, 2}, "end_dims " + show(r.end_dims));
  c.expect(r.dim_O == 5, "dim O = " + std::to_string(r.dim_O));
  c.expect(r.ker_dim == 0, "ker eta = " + std::to_string(r.ker_dim));
  c.expect(r.im_dim == 3, "dim im eta = " + std::to_string(r.im_dim));
  c.expect(!r.classical_surjective, "classical check did not fail");
  c.expect(r.standard.summary == "diag(k, K)", "standard form " + r.standard.summary);
  c.note("end_dims=" + show(r.end_dims) + " dimO=" + std::to_string(r.dim_O) + " im=" + std::to_string(r.im_dim) +
         " form=" + r.standard.summary);
}

void criterion4(Checks& c) {
  const Scenario s = scenario("laudal_example");
  const Complex cx(s.algebra, s.family);  // default conventions are the pinned ones
  const auto d = ext_dims(cx);
  c.expect(d == std::vector<std::vector<std::size_t>>{{2, 2}, {0, 1}}, "Ext^1 dims");
  HullEngine engine(cx);
  const ProCouple pro = engine.run(4);
  const std::string f11 = "f11 = t11_1*t11_2 - t11_2*t11_1";
  const std::string f12 = "f12 = t11_1*t12_2 - t11_2*t12_1 - 2*t12_2*t22";
  const std::string f12_cubic = f12 + " - t12_1*t22^2";
  bool quadratic = false, cubic = false;
  for (const auto& h : pro.history) {
    if (h.n == 3) quadratic = h.relations == std::vector<std::string>{f11, f12};
    if (h.n == 4) cubic = h.relations == std::vector<std::string>{f11, f12_cubic};
  }
  c.expect(quadratic, "degree-2 relations differ");
  c.expect(cubic, "degree-3 update differs");
  ClassRegistry& reg = engine.registry();
  const auto sys = extend_system(
      cx, reg, start_system(cx, {0, 1, 1, 1}, {cx.ext1(0, 1).reps[0], cx.ext1(1, 1).reps[0], cx.ext1(1, 1).reps[0]}));
  bool massey = false;
  if (!sys.obstruction && sys.system.complete()) {
    const MasseyValue v = massey_value(cx, reg, sys.system);
    const Vector& rep = v.reported(cx.conventions());
    massey = rep.size() == 1 && rep[0] == cx.field().from_int(-1) && reg.class_name(0, 1, 0) == "s12";
  }
  c.expect(massey, "<psi12^1, psi22, psi22> != -s12");
  const auto dims = pro.graded_dims();
  const auto oracle = fx::closed_form_graded_dims(4);
  c.expect(dims == oracle, "graded dims " + show(dims) + " vs oracle " + show(oracle));
  c.note("graded=" + show(dims) + " oracle=" + show(oracle) + " massey=-s12");
}

void criterion5(Checks& c) {
  std::size_t n = 0;
  for (const Field& f : {fx::rational(), fx::prime(2), fx::prime(3), fx::prime(7)})
    for (const auto& in : fx::battery(f)) {
      ++n;
      const Complex cx(in.algebra, in.family);
      const ProCouple pro = run_hull(cx, 8);
      const BurnsideReport r = burnside_report(cx, pro);
      const std::string at = in.label + " over " + f.spec.describe();
      c.expect(r.ker_dim == 0, at + ": ker eta != 0");
      c.expect(r.im_dim == r.dim_O && r.dim_O == r.dim_A, at + ": dims im/O/A differ");
      c.expect(r.gr0_iso, at + ": gr0 not iso");
      c.expect(r.gr1_iso, at + ": gr1 not iso");
    }
  c.note(std::to_string(n) + " instances");
}

// block-unitriangular change of basis of an extension; gives another
// iterated extension with the same composition chain
CofiltrationSpec gauge(const Complex& cx, const IteratedExtension& e, std::mt19937_64& rng) {
  const Field& f = cx.field();
  const std::size_t n = e.module.dim, r = e.spec.modules.size();
  Matrix g = Matrix::identity(n, f);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      g.set_block(e.offsets[i], e.offsets[j], fx::random_matrix(cx.mdim(e.spec.modules[i]), cx.mdim(e.spec.modules[j]), f, rng));
  const Matrix gi = *solve(g, Matrix::identity(n, f));
  CofiltrationSpec spec;
  spec.modules = e.spec.modules;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      Cochain psi = cx.zero(1, spec.modules[i], spec.modules[j]);
      for (std::size_t b = 0; b < cx.algebra().dim(); ++b)
        psi.values[b] = (g * e.module.action[b] * gi)
                            .block(e.offsets[i], e.offsets[j], cx.mdim(spec.modules[i]), cx.mdim(spec.modules[j]));
      spec.psi.emplace(std::make_pair(i, j), std::move(psi));
    }
  return spec;
}

void criterion6(Checks& c) {
  for (const std::string name : {"z3_gf7", "z3_gf3", "z3_rational", "upper_triangular_2", "dual_numbers"}) {
    const Scenario s = scenario(name);
    const Complex cx(s.algebra, s.family);
    const auto chain = kernel_chain(cx, run_hull(cx, s.degree_cap));
    c.expect(!chain.empty() && chain.back().dim() == 0, name + ": final K != 0");
  }
  const Scenario s = scenario("product_partial_family");
  const Complex cx(s.algebra, s.family);
  const Subspace k = kernel_chain(cx, run_hull(cx, s.degree_cap)).back();
  c.expect(k.dim() > 0, "partial family: K = 0");
  std::mt19937_64 rng(2024);
  std::size_t built = 0;
  for (std::size_t r = 2; r <= 4; ++r) {
    const std::vector<std::size_t> chain(r, 0);
    std::vector<Cochain> cons;
    for (std::size_t x = 0; x + 1 < r; ++x) {
      Cochain a = cx.zero(1, 0, 0);
      for (const auto& rep : cx.ext1(0, 0).reps) a += cx.field().from_int(static_cast<long>(rng() % 5) - 2) * rep;
      cons.push_back(a);
    }
    ClassRegistry reg(cx);
    const VanishingResult res = massey_vanishing_check(cx, reg, chain, cons, true);
    if (!res.extension) continue;
    std::vector<IteratedExtension> family{*res.extension};
    for (int t = 0; t < 5; ++t) family.push_back(build(cx, gauge(cx, *res.extension, rng)));
    for (const auto& e : family) {
      ++built;
      c.expect(annihilation_check(cx, e, k).annihilates, "E.K != 0 for a length-" + std::to_string(r) + " extension");
    }
  }
  c.expect(built > 0, "no extension constructed");
  c.note("K_partial=" + std::to_string(k.dim()) + " extensions=" + std::to_string(built));
}

void criterion7(Checks& c) {
  auto one = [&](const std::string& label, const Complex& cx, std::size_t cap) {
    const auto t0 = std::chrono::steady_clock::now();
    const ClosureReport r = closure_check(cx, cap);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    c.expect(r.eta_bijective, label + ": eta^B not bijective");
    c.expect(ms < 5000, label + ": over 5 s");
    c.note(label + " dimB=" + std::to_string(r.dim_B) + " " + std::to_string(static_cast<long>(ms)) + "ms");
  };
  for (const std::string name : {"z3_gf3", "upper_triangular_2"}) {
    const Scenario s = scenario(name);
    one(name, Complex(s.algebra, s.family), s.degree_cap);
  }
  const Scenario s = scenario("z3_rational");
  one("z3_rational{M}", Complex(s.algebra, {s.family[s.index_of("M")]}), s.degree_cap);
}

void criterion8(Checks& c) {
  const std::size_t per_field = 100;
  std::size_t instances = 0, checks = 0;
  for (std::uint64_t p : {0u, 2u, 3u, 7u}) {
    const Field f = p ? fx::prime(p) : fx::rational();
    for (const auto& t : {fx::complex_properties(f, per_field, 100 + p), fx::cup_class_properties(f, per_field, 200 + p),
                          fx::extension_round_trips(f, per_field, 300 + p), fx::hull_defect_properties(f, per_field, 400 + p)}) {
      instances += t.instances;
      checks += t.checks;
      c.expect(t.instances >= per_field, "too few instances");
      for (const auto& fail : t.failures) c.expect(false, fail);
    }
  }
  c.note(std::to_string(instances) + " instances, " + std::to_string(checks) + " checks");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double budget_ms;  // 0: no runtime bound
    std::function<void(Checks&)> run;
  };
  const std::vector<Criterion> all{{1, 1000, criterion1}, {2, 1000, criterion2},  {3, 1000, criterion3},
                                   {4, 30000, criterion4}, {5, 10000, criterion5}, {6, 0, criterion6},
                                   {7, 0, criterion7},     {8, 0, criterion8}};
  int failures = 0;
  for (const auto& cr : all) {
    Checks c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const Error& e) {
      c.expect(false, std::string("error ") + e.code() + ": " + e.what());
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (cr.budget_ms > 0) c.expect(ms < cr.budget_ms, "runtime over " + std::to_string(static_cast<long>(cr.budget_ms)) + " ms");
    const bool ok = c.failed.empty();
    failures += !ok;
    std::string detail;
    for (const auto& n : c.notes) detail += (detail.empty() ? "" : "; ") + n;
    if (!ok) {
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + c.failed.front();
      if (c.failed.size() > 1) detail += " (+" + std::to_string(c.failed.size() - 1) + " more)";
    }
    std::printf("criterion %d: %s (%s; %.0f ms)\n", cr.id, ok ? "PASS" : "FAIL", detail.c_str(), ms);
  }
  return failures == 0 ? 0 : 1;
}
