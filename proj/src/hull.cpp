#include "ncdef/hull.hpp"

#include <algorithm>

#include "ncdef/errors.hpp"

namespace ncdef {

namespace {

// out += coef * (a . b)
void add_cup(Cochain& out, const Cochain& a, const Cochain& b, const Scalar& coef, std::size_t n) {
  for (std::size_t x = 0; x < n; ++x) {
    if (a.values[x].is_zero()) continue;
    const Matrix ax = a.values[x] * coef;
    for (std::size_t y = 0; y < n; ++y) {
      if (b.values[y].is_zero()) continue;
      out.values[x * n + y] += ax * b.values[y];
    }
  }
}

Vector unit_vector(std::size_t len, std::size_t k, const Field& f) {
  Vector v = zero_vector(len, f);
  v[k] = f.one();
  return v;
}

std::string relation_name(std::size_t i, std::size_t j, std::size_t l, std::size_t count) {
  std::string s = "f" + std::to_string(i + 1) + std::to_string(j + 1);
  if (count > 1) s += "_" + std::to_string(l + 1);
  return s;
}

std::vector<std::size_t> count_by_degree(const std::vector<std::size_t>& words, const PathTable& t,
                                         std::size_t top) {
  std::vector<std::size_t> dims(top + 1, 0);
  for (auto w : words) ++dims[t.path(w).degree()];
  return dims;
}

}  // namespace

std::string arrow_name(std::size_t i, std::size_t j, std::size_t l, std::size_t count) {
  std::string s = "t" + std::to_string(i + 1) + std::to_string(j + 1);
  if (count > 1) s += "_" + std::to_string(l + 1);
  return s;
}

std::size_t ProCouple::dim_block(std::size_t i, std::size_t j) const {
  const PathTable t = table();
  std::size_t c = 0;
  for (auto w : level.normal)
    if (t.path(w).source == i && t.path(w).target == j) ++c;
  return c;
}

std::size_t ProCouple::dim() const { return level.normal.size(); }

HullEngine::HullEngine(const Complex& cx) : cx_(&cx), reg_(cx) {
  const std::size_t r = cx.size();
  quiver_.points = r;
  dims_.assign(r, std::vector<std::size_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const std::size_t d = cx.ext1(i, j).reps.size();
      dims_[i][j] = d;
      for (std::size_t l = 0; l < d; ++l) quiver_.arrows.push_back(Arrow{arrow_name(i, j, l, d), i, j});
    }
}

HullLevel HullEngine::tangent_level() {
  const Complex& cx = *cx_;
  const std::size_t r = cx.size();
  HullLevel level;
  level.n = 2;
  for (std::size_t i = 0; i < r; ++i) {
    Cochain rho = cx.zero(1, i, i);
    for (std::size_t b = 0; b < cx.algebra().dim(); ++b) rho.values[b] = cx.rho(i, b);
    level.normal.push_back(i);
    level.action.emplace(i, std::move(rho));
  }
  std::size_t idx = r;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (const auto& rep : cx.ext1(i, j).reps) {
        level.normal.push_back(idx);
        level.action.emplace(idx, rep);
        ++idx;
      }
  level.graded_dims = {r, quiver_.arrows.size()};
  return level;
}

HullLevel HullEngine::obstruction_step(const HullLevel& level) {
  const Complex& cx = *cx_;
  const Field& f = cx.field();
  const std::size_t n = level.n;
  if (n > cap_)
    throw ScenarioError("DegreeCapExceeded", "hull step at degree " + std::to_string(n) + " exceeds the cap");
  const std::size_t adim = cx.algebra().dim();
  const PathTable t(quiver_, n);
  const std::size_t len = t.size();

  std::vector<Poly> old;
  for (const auto& rel : level.relations) old.push_back(rel.poly);
  const Subspace proper = ideal_span(t, old, f, true);

  // basis of T_{<=n} / proper: normal words, old relations, degree-n words
  struct QEntry {
    Poly poly;
    std::size_t src, tgt;
  };
  std::vector<QEntry> q;
  std::vector<std::ptrdiff_t> q_of_gen;
  SpanSolver basis(len, f);
  for (std::size_t k = 0; k < proper.dim(); ++k) {
    basis.add(proper.basis().row(k));
    q_of_gen.push_back(-1);
  }
  std::vector<bool> is_normal(len, false);
  for (auto w : level.normal) {
    is_normal[w] = true;
    if (!basis.add(unit_vector(len, w, f)))
      throw InvariantBreach("NormalWordsDependent", "normal words are dependent modulo the ideal");
    q_of_gen.push_back(-1);
  }
  for (const auto& rel : level.relations) {
    const bool fresh = basis.add(poly_to_vector(rel.poly, len, f));
    q_of_gen.push_back(fresh ? static_cast<std::ptrdiff_t>(q.size()) : -1);
    if (fresh) q.push_back({rel.poly, rel.src, rel.tgt});
  }
  for (std::size_t w = t.degree_begin(n); w < t.degree_end(n); ++w) {
    const bool fresh = basis.add(unit_vector(len, w, f));
    q_of_gen.push_back(fresh ? static_cast<std::ptrdiff_t>(q.size()) : -1);
    if (fresh) q.push_back({Poly{{w, f.one()}}, t.path(w).source, t.path(w).target});
  }
  if (basis.rank() != len) throw InvariantBreach("QuotientBasis", "hull quotient basis does not span");

  std::vector<std::size_t> positive;
  for (auto w : level.normal)
    if (t.path(w).degree() > 0) positive.push_back(w);

  // defects c_q
  std::vector<std::optional<Cochain>> defect(q.size());
  for (auto u : positive)
    for (auto v : positive) {
      auto uv = t.concat(u, v);
      if (!uv || is_normal[*uv]) continue;
      auto coeffs = basis.express(unit_vector(len, *uv, f));
      if (!coeffs) throw InvariantBreach("QuotientBasis", "word outside the spanned space");
      for (std::size_t g = 0; g < coeffs->size(); ++g) {
        if ((*coeffs)[g].is_zero() || q_of_gen[g] < 0) continue;
        const auto qi = static_cast<std::size_t>(q_of_gen[g]);
        if (!defect[qi]) defect[qi] = cx.zero(2, q[qi].src, q[qi].tgt);
        add_cup(*defect[qi], level.action.at(u), level.action.at(v), (*coeffs)[g], adim);
      }
    }

  std::vector<Vector> obstruction(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (!defect[k]) continue;
    if (!cx.is_cocycle(*defect[k]))
      throw InvariantBreach("DefectNotCocycle", "a hull defect is not a 2-cocycle");
    obstruction[k] = reg_.solve_coboundary(*defect[k]).classes;
  }

  HullLevel next;
  next.n = n + 1;
  std::vector<Vector> rel_rows;
  for (std::size_t i = 0; i < cx.size(); ++i)
    for (std::size_t k = 0; k < cx.size(); ++k) {
      const std::size_t count = reg_.count(i, k);
      for (std::size_t l = 0; l < count; ++l) {
        Poly p;
        for (std::size_t e = 0; e < q.size(); ++e) {
          if (q[e].src != i || q[e].tgt != k || obstruction[e].size() <= l) continue;
          const Scalar& c = obstruction[e][l];
          if (c.is_zero()) continue;
          for (const auto& [w, a] : q[e].poly) poly_add(p, w, c * a);
        }
        if (p.empty()) continue;
        rel_rows.push_back(poly_to_vector(p, len, f));
        next.relations.push_back(HullRelation{i, k, l, relation_name(i, k, l, count), std::move(p)});
      }
    }
  Subspace ideal = proper;
  if (!rel_rows.empty()) ideal = proper.sum(Subspace::span(rel_rows, len, f));
  next.normal = normal_words(ideal);
  {
    std::vector<std::size_t> low;
    for (auto w : next.normal)
      if (t.path(w).degree() < n) low.push_back(w);
    if (low != level.normal)
      throw InvariantBreach("NormalWordsChanged", "relations changed the normal words below the top degree");
  }

  // lift the action to the new top-degree normal words
  std::vector<std::size_t> fresh_words;
  for (auto w : next.normal)
    if (t.path(w).degree() == n) fresh_words.push_back(w);
  std::map<std::size_t, Cochain> lift;
  for (auto w : fresh_words) lift.emplace(w, cx.zero(2, t.path(w).source, t.path(w).target));
  if (!fresh_words.empty()) {
    for (auto u : positive)
      for (auto v : positive) {
        auto uv = t.concat(u, v);
        if (!uv) continue;
        const Vector red = ideal.residual(unit_vector(len, *uv, f));
        for (auto w : fresh_words)
          if (!red[w].is_zero()) add_cup(lift.at(w), level.action.at(u), level.action.at(v), red[w], adim);
      }
  }
  next.action = level.action;
  for (auto& [w, c] : lift) {
    auto sol = reg_.solve(c, false);
    if (!sol || !is_zero(sol->classes))
      throw InvariantBreach("LiftObstructed", "defect of normal word " + t.render(w) + " is not a coboundary");
    next.action.emplace(w, -f.one() * sol->primitive);
  }
  next.graded_dims = count_by_degree(next.normal, t, n);
  for (const auto& rel : next.relations) next.rendered.push_back(rel.name + " = " + render_poly(rel.poly, t));
  return next;
}

ProCouple HullEngine::run(std::size_t degree_cap) {
  if (degree_cap < 1) throw ScenarioError("BadOption", "degree_cap must be at least 1");
  cap_ = degree_cap;
  ProCouple pro;
  pro.quiver = quiver_;
  pro.ext1_dims = dims_;
  pro.degree_cap = degree_cap;
  HullLevel level = tangent_level();
  pro.history.push_back({2, {}, level.graded_dims});
  while (true) {
    if (level.graded_dims.back() == 0) {
      pro.stabilized = true;
      break;
    }
    if (level.n > degree_cap) break;
    level = obstruction_step(level);
    pro.history.push_back({level.n, level.rendered, level.graded_dims});
  }
  pro.top_degree = level.n - 1;
  pro.level = std::move(level);
  for (std::size_t i = 0; i < cx_->size(); ++i)
    for (std::size_t j = 0; j < cx_->size(); ++j)
      for (std::size_t l = 0; l < reg_.count(i, j); ++l) pro.class_names.push_back(reg_.class_name(i, j, l));
  if (!cx_->algebra().support_cap()) {
    for (const auto& k : kernel_chain(*cx_, pro)) pro.kernel_chain.push_back(k.dim());
  }
  return pro;
}

ProCouple run_hull(const Complex& cx, std::size_t degree_cap) {
  HullEngine engine(cx);
  return engine.run(degree_cap);
}

std::vector<Subspace> kernel_chain(const Complex& cx, const ProCouple& pro) {
  const Algebra& a = cx.algebra();
  const Field& f = a.field();
  const PathTable t = pro.table();
  std::size_t top = 0;
  for (auto w : pro.level.normal) top = std::max(top, t.path(w).degree());
  std::vector<Subspace> chain;
  std::vector<Vector> rows(a.dim());
  for (std::size_t d = 0; d <= top; ++d) {
    for (auto w : pro.level.normal) {
      if (t.path(w).degree() != d) continue;
      const Cochain& psi = pro.level.action.at(w);
      for (std::size_t b = 0; b < a.dim(); ++b) {
        const auto& data = psi.values[b].data();
        rows[b].insert(rows[b].end(), data.begin(), data.end());
      }
    }
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    Matrix m = Matrix::from_rows(rows, cols, f);
    chain.push_back(cols == 0 ? Subspace::full(a.dim(), f) : kernel(m.transpose()));
  }
  return chain;
}

}  // namespace ncdef
