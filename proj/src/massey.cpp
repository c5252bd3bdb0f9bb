#include "ncdef/massey.hpp"

#include "ncdef/errors.hpp"

namespace ncdef {

bool DefiningSystem::complete() const {
  const std::size_t r = length();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      if (i == 0 && j == r - 1) continue;
      if (!has(i, j)) return false;
    }
  return true;
}

DefiningSystem start_system(const Complex& cx, std::vector<std::size_t> modules, std::vector<Cochain> consecutive) {
  if (modules.size() < 2 || consecutive.size() + 1 != modules.size())
    throw ScenarioError("BadChain", "a chain of r modules needs r - 1 consecutive cochains");
  DefiningSystem sys;
  sys.modules = std::move(modules);
  for (std::size_t k = 0; k < consecutive.size(); ++k) {
    Cochain& c = consecutive[k];
    if (sys.modules[k] >= cx.size() || sys.modules[k + 1] >= cx.size())
      throw ScenarioError("BadChain", "module index outside the family");
    if (c.degree != 1 || c.src != sys.modules[k] || c.tgt != sys.modules[k + 1])
      throw ScenarioError("EndpointMismatch", "cochain " + std::to_string(k + 1) + " has the wrong endpoints");
    if (!cx.is_derivation(c))
      throw ScenarioError("NotACocycle", "cochain " + std::to_string(k + 1) + " is not a derivation");
    sys.alpha.emplace(std::make_pair(k, k + 1), std::move(c));
  }
  return sys;
}

Cochain defining_sum(const Complex& cx, const DefiningSystem& sys, std::size_t i, std::size_t j) {
  Cochain out = cx.zero(2, sys.modules[i], sys.modules[j]);
  for (std::size_t l = i + 1; l < j; ++l) out += cx.cup(sys.at(i, l), sys.at(l, j));
  return out;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> diagonal(std::size_t r, std::size_t gap) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i + gap < r; ++i) {
    const std::size_t j = i + gap;
    if (i == 0 && j == r - 1) continue;
    out.emplace_back(i, j);
  }
  return out;
}

bool all_zero(const Vector& v) { return is_zero(v); }

}  // namespace

bool clear_by_indeterminacy(const Complex& cx, ClassRegistry& reg, DefiningSystem& sys, std::size_t gap,
                            const std::vector<std::pair<std::size_t, std::size_t>>& targets) {
  if (gap < 3) return false;
  const Field& f = cx.field();
  const std::size_t r = sys.length();

  struct Unknown {
    std::size_t i, j;
    Cochain z;
  };
  std::vector<Unknown> unknowns;
  for (std::size_t i = 0; i + gap - 1 < r; ++i) {
    const std::size_t j = i + gap - 1;
    if (!sys.has(i, j)) continue;
    for (const auto& z : cx.ext1(sys.modules[i], sys.modules[j]).reps) unknowns.push_back({i, j, z});
  }
  if (unknowns.empty()) return false;

  // class vectors; registry may grow while we collect them
  std::vector<Vector> base;
  std::vector<std::vector<Vector>> effect(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto [i, j] = targets[t];
    base.push_back(reg.solve_coboundary(defining_sum(cx, sys, i, j)).classes);
    for (const auto& u : unknowns) {
      Cochain c = cx.zero(2, sys.modules[i], sys.modules[j]);
      if (u.i == i && u.j == j - 1) c += cx.cup(u.z, sys.at(j - 1, j));
      if (u.i == i + 1 && u.j == j) c += cx.cup(sys.at(i, i + 1), u.z);
      effect[t].push_back(c.is_zero() ? Vector{} : reg.solve_coboundary(c).classes);
    }
  }
  std::size_t rows = 0;
  std::vector<std::size_t> offset;
  for (const auto& [i, j] : targets) {
    offset.push_back(rows);
    rows += reg.count(sys.modules[i], sys.modules[j]);
  }
  if (rows == 0) return false;
  Matrix m(rows, unknowns.size(), f), b(rows, 1, f);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    for (std::size_t k = 0; k < base[t].size(); ++k) b(offset[t] + k, 0) = -base[t][k];
    for (std::size_t u = 0; u < unknowns.size(); ++u)
      for (std::size_t k = 0; k < effect[t][u].size(); ++k) m(offset[t] + k, u) = effect[t][u][k];
  }
  auto lambda = solve(m, b);
  if (!lambda) return false;
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const Scalar& c = (*lambda)(u, 0);
    if (c.is_zero()) continue;
    sys.alpha.at({unknowns[u].i, unknowns[u].j}) += c * unknowns[u].z;
  }
  return true;
}

ExtendResult extend_system(const Complex& cx, ClassRegistry& reg, DefiningSystem partial, bool search_indeterminacy) {
  ExtendResult res{std::move(partial), std::nullopt, false};
  DefiningSystem& sys = res.system;
  const std::size_t r = sys.length();
  for (std::size_t k = 0; k + 1 < r; ++k)
    if (!sys.has(k, k + 1)) throw ScenarioError("BadChain", "consecutive cochain missing");

  for (std::size_t gap = 2; gap + 1 <= r; ++gap) {
    const auto targets = diagonal(r, gap);
    if (targets.empty()) break;
    bool retried = false;
    while (true) {
      std::optional<std::pair<std::size_t, std::size_t>> blocked;
      std::map<std::pair<std::size_t, std::size_t>, Cochain> filled;
      for (const auto& [i, j] : targets) {
        if (sys.has(i, j)) continue;
        auto sol = reg.solve(defining_sum(cx, sys, i, j), false);
        if (!sol || !all_zero(sol->classes)) {
          blocked = std::make_pair(i, j);
          break;
        }
        filled.emplace(std::make_pair(i, j), std::move(sol->primitive));
      }
      if (!blocked) {
        for (auto& [k, c] : filled) sys.alpha.emplace(k, std::move(c));
        break;
      }
      if (search_indeterminacy && !retried && gap >= 3) {
        std::vector<std::pair<std::size_t, std::size_t>> open;
        for (const auto& t : targets)
          if (!sys.has(t.first, t.second)) open.push_back(t);
        retried = true;
        if (clear_by_indeterminacy(cx, reg, sys, gap, open)) {
          res.adjusted = true;
          continue;
        }
      }
      const auto [i, j] = *blocked;
      Obstruction ob;
      ob.order = j - i;
      ob.i = i;
      ob.j = j;
      ob.witness = defining_sum(cx, sys, i, j);
      ob.classes = reg.solve_coboundary(ob.witness).classes;
      res.obstruction = std::move(ob);
      return res;
    }
  }
  return res;
}

bool MasseyValue::vanishes() const { return is_zero(defining_class); }

MasseyValue massey_value(const Complex& cx, ClassRegistry& reg, const DefiningSystem& sys) {
  if (!sys.complete()) throw ScenarioError("IncompleteSystem", "defining system has open slots");
  const std::size_t r = sys.length();
  MasseyValue v;
  v.src = sys.modules.front();
  v.tgt = sys.modules.back();
  if (r < 3) throw ScenarioError("BadChain", "a Massey product needs at least two classes");
  v.witness = defining_sum(cx, sys, 0, r - 1);
  v.defining_class = reg.solve_coboundary(v.witness).classes;
  v.obstruction_class = v.defining_class;
  if ((r + 1) % 2 == 1)
    for (auto& c : v.obstruction_class) c = -c;
  return v;
}

}  // namespace ncdef
