#include "ncdef/extensions.hpp"

#include "ncdef/errors.hpp"

namespace ncdef {

namespace {

Scalar dictionary_sign(std::size_t i, std::size_t j) { return (j - i + 1) % 2 == 0 ? Scalar(1) : Scalar(-1); }

Cochain entry(const Complex& cx, const CofiltrationSpec& spec, std::size_t i, std::size_t j) {
  auto it = spec.psi.find({i, j});
  if (it != spec.psi.end()) return it->second;
  return cx.zero(1, spec.modules[i], spec.modules[j]);
}

Vector obstruction_sign(Vector v, std::size_t classes, const Conventions& conv) {
  // a product of `classes` classes: obstruction = (-1)^(classes+2) * defining
  if (conv.massey_sign == "obstruction" && classes % 2 == 1)
    for (auto& c : v) c = -c;
  return v;
}

}  // namespace

IteratedExtension build(const Complex& cx, const CofiltrationSpec& spec) {
  const std::size_t r = spec.modules.size();
  if (r == 0) throw ScenarioError("BadChain", "empty module chain");
  for (auto m : spec.modules)
    if (m >= cx.size()) throw ScenarioError("BadChain", "module index outside the family");
  for (const auto& [key, c] : spec.psi) {
    const auto [i, j] = key;
    if (i >= j || j >= r) throw ScenarioError("BadChain", "psi indices must satisfy i < j <= r");
    if (c.degree != 1 || c.src != spec.modules[i] || c.tgt != spec.modules[j])
      throw ScenarioError("EndpointMismatch", "psi(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                                  ") has the wrong endpoints");
  }
  for (std::size_t gap = 1; gap < r; ++gap)
    for (std::size_t i = 0; i + gap < r; ++i) {
      const std::size_t j = i + gap;
      Cochain lhs = cx.d1(entry(cx, spec, i, j));
      for (std::size_t l = i + 1; l < j; ++l) lhs += cx.cup(entry(cx, spec, i, l), entry(cx, spec, l, j));
      if (!is_zero(cx.coords(lhs)))
        throw ScenarioError("NotAssociativeAction", "equation (" + std::to_string(i + 1) + "," +
                                                        std::to_string(j + 1) + ") fails");
    }

  const Algebra& a = cx.algebra();
  const Field& f = a.field();
  IteratedExtension e;
  e.spec = spec;
  std::size_t dim = 0;
  for (auto m : spec.modules) {
    e.offsets.push_back(dim);
    dim += cx.mdim(m);
  }
  e.module.name = "E";
  e.module.dim = dim;
  for (std::size_t b = 0; b < a.dim(); ++b) {
    Matrix act(dim, dim, f);
    for (std::size_t i = 0; i < r; ++i) {
      act.set_block(e.offsets[i], e.offsets[i], cx.rho(spec.modules[i], b));
      for (std::size_t j = i + 1; j < r; ++j) {
        auto it = spec.psi.find({i, j});
        if (it != spec.psi.end()) act.set_block(e.offsets[i], e.offsets[j], it->second.values[b]);
      }
    }
    e.module.action.push_back(std::move(act));
  }
  try {
    validate_module(a, e.module);
  } catch (const ScenarioError& err) {
    throw InvariantBreach("ExtensionNotModule", err.what());
  }
  for (std::size_t k = 0; k + 1 < r; ++k)
    e.induced.push_back(cx.ext1(spec.modules[k], spec.modules[k + 1]).coordinates(entry(cx, spec, k, k + 1)));
  for (std::size_t k = 0; k < r; ++k) {
    std::vector<Vector> rows;
    for (std::size_t x = e.offsets[k]; x < dim; ++x) {
      Vector v = zero_vector(dim, f);
      v[x] = f.one();
      rows.push_back(std::move(v));
    }
    const Subspace s = Subspace::span(rows, dim, f);
    for (std::size_t b = 0; b < a.dim(); ++b)
      for (std::size_t x = 0; x < s.dim(); ++x)
        if (!s.contains(s.basis().row(x) * e.module.action[b]))
          throw InvariantBreach("FlagNotInvariant", "cofiltration step is not a submodule");
    e.flag_dims.push_back(s.dim());
  }
  return e;
}

DefiningSystem alpha_from_psi(const Complex& cx, const CofiltrationSpec& spec) {
  DefiningSystem sys;
  sys.modules = spec.modules;
  const std::size_t r = spec.modules.size();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) sys.alpha.emplace(std::make_pair(i, j), dictionary_sign(i, j) * entry(cx, spec, i, j));
  return sys;
}

CofiltrationSpec psi_from_alpha(const DefiningSystem& sys) {
  CofiltrationSpec spec;
  spec.modules = sys.modules;
  for (const auto& [key, c] : sys.alpha) spec.psi.emplace(key, dictionary_sign(key.first, key.second) * c);
  return spec;
}

bool corner_bounds(const Complex& cx, const DefiningSystem& sys) {
  const std::size_t r = sys.length();
  if (r < 2 || !sys.has(0, r - 1)) return false;
  return is_zero(cx.coords(cx.d1(sys.at(0, r - 1)) - defining_sum(cx, sys, 0, r - 1)));
}

VanishingResult massey_vanishing_check(const Complex& cx, ClassRegistry& reg, const std::vector<std::size_t>& modules,
                                       const std::vector<Cochain>& consecutive, bool search_indeterminacy) {
  VanishingResult out;
  const std::size_t r = modules.size();
  ExtendResult ext = extend_system(cx, reg, start_system(cx, modules, consecutive), search_indeterminacy);
  out.adjusted = ext.adjusted;
  if (ext.obstruction) {
    const Obstruction& ob = *ext.obstruction;
    out.order = ob.order;
    out.i = ob.i;
    out.j = ob.j;
    out.src = modules[ob.i];
    out.tgt = modules[ob.j];
    out.classes = obstruction_sign(ob.classes, ob.order, cx.conventions());
    out.system = std::move(ext.system);
    return out;
  }
  DefiningSystem sys = std::move(ext.system);
  if (r > 2) {
    auto sol = reg.solve(defining_sum(cx, sys, 0, r - 1), false);
    if ((!sol || !is_zero(sol->classes)) && search_indeterminacy &&
        clear_by_indeterminacy(cx, reg, sys, r - 1, {{0, r - 1}})) {
      out.adjusted = true;
      sol = reg.solve(defining_sum(cx, sys, 0, r - 1), false);
    }
    if (!sol || !is_zero(sol->classes)) {
      const MasseyValue v = massey_value(cx, reg, sys);
      out.order = r - 1;
      out.i = 0;
      out.j = r - 1;
      out.src = modules.front();
      out.tgt = modules.back();
      out.classes = v.reported(cx.conventions());
      out.system = std::move(sys);
      return out;
    }
    sys.alpha.emplace(std::make_pair(0, r - 1), std::move(sol->primitive));
  }
  if (!corner_bounds(cx, sys)) throw InvariantBreach("CornerNotBounded", "completed defining system is inconsistent");
  out.constructible = true;
  out.extension = build(cx, psi_from_alpha(sys));
  out.system = std::move(sys);
  return out;
}

AnnihilationReport annihilation_check(const Complex& cx, const IteratedExtension& e, const Subspace& k) {
  const Algebra& a = cx.algebra();
  const Field& f = a.field();
  if (!is_two_sided_ideal(a, k)) throw ScenarioError("NotAnIdeal", "K is not a two-sided ideal of A");
  AnnihilationReport rep{true, true, true};
  auto apply = [&](const std::vector<Matrix>& action, std::span<const Scalar> v, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols, f);
    for (std::size_t b = 0; b < a.dim(); ++b)
      if (!v[b].is_zero()) m += action[b] * v[b];
    return m;
  };
  const DefiningSystem sys = alpha_from_psi(cx, e.spec);
  for (std::size_t x = 0; x < k.dim(); ++x) {
    const auto v = k.basis().row(x);
    if (!apply(e.module.action, v, e.module.dim, e.module.dim).is_zero()) rep.annihilates = false;
    for (auto m : e.spec.modules)
      if (!apply(cx.family()[m].action, v, cx.mdim(m), cx.mdim(m)).is_zero()) rep.modules_vanish = false;
    for (const auto& [key, c] : sys.alpha)
      if (!apply(c.values, v, cx.mdim(c.src), cx.mdim(c.tgt)).is_zero()) rep.alpha_vanish = false;
  }
  return rep;
}

}  // namespace ncdef
