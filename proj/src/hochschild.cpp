#include "ncdef/hochschild.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "ncdef/errors.hpp"

namespace ncdef {

void Conventions::check() const {
  if (ext1_column_order != "generators-first" && ext1_column_order != "basis")
    throw ScenarioError("BadConventions", "ext1_column_order must be generators-first or basis");
  if (cochain_column_order != "degree-descending" && cochain_column_order != "basis")
    throw ScenarioError("BadConventions", "cochain_column_order must be degree-descending or basis");
  if (massey_sign != "obstruction" && massey_sign != "defining")
    throw ScenarioError("BadConventions", "massey_sign must be obstruction or defining");
}

bool Cochain::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const Matrix& m) { return m.is_zero(); });
}

Cochain& Cochain::operator+=(const Cochain& o) {
  if (o.degree != degree || o.src != src || o.tgt != tgt || o.values.size() != values.size())
    throw std::invalid_argument("adding cochains of different shape");
  for (std::size_t k = 0; k < values.size(); ++k) values[k] += o.values[k];
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
  if (o.degree != degree || o.src != src || o.tgt != tgt || o.values.size() != values.size())
    throw std::invalid_argument("subtracting cochains of different shape");
  for (std::size_t k = 0; k < values.size(); ++k) values[k] -= o.values[k];
  return *this;
}

Cochain& Cochain::operator*=(const Scalar& c) {
  for (auto& m : values) m *= c;
  return *this;
}

bool operator==(const Cochain& a, const Cochain& b) {
  return a.degree == b.degree && a.src == b.src && a.tgt == b.tgt && a.values == b.values;
}

Complex::Complex(Algebra a, std::vector<ModuleRep> family, Conventions conv)
    : a_(std::move(a)), family_(std::move(family)), conv_(std::move(conv)) {
  conv_.check();
  const std::size_t n = a_.dim();
  pair_index_.assign(n * n, -1);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (a_.valid_pair(x, y)) {
        pair_index_[x * n + y] = static_cast<std::ptrdiff_t>(pairs_.size());
        pairs_.emplace_back(x, y);
      }
  for (const auto& m : family_)
    if (m.action.size() != n) throw ScenarioError("BadModule", m.name + ": action table size mismatch");
}

Cochain Complex::zero(std::size_t degree, std::size_t i, std::size_t j) const {
  std::size_t count = 1;
  for (std::size_t k = 0; k < degree; ++k) count *= a_.dim();
  return Cochain{degree, i, j, std::vector<Matrix>(count, Matrix(mdim(i), mdim(j), field()))};
}

Cochain Complex::d0(std::size_t i, std::size_t j, const Matrix& phi) const {
  Cochain out = zero(1, i, j);
  for (std::size_t b = 0; b < a_.dim(); ++b) out.values[b] = rho(i, b) * phi - phi * rho(j, b);
  return out;
}

Cochain Complex::d1(const Cochain& psi) const {
  if (psi.degree != 1) throw std::invalid_argument("d1 expects a 1-cochain");
  const std::size_t n = a_.dim();
  Cochain out = zero(2, psi.src, psi.tgt);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      Matrix& v = out.values[x * n + y];
      if (!psi.values[y].is_zero()) v += rho(psi.src, x) * psi.values[y];
      for (const auto& [k, c] : a_.product(x, y))
        if (!psi.values[k].is_zero()) v -= psi.values[k] * c;
      if (!psi.values[x].is_zero()) v += psi.values[x] * rho(psi.tgt, y);
    }
  return out;
}

namespace {

Matrix d2_entry(const Complex& cx, const Cochain& c, std::size_t x, std::size_t y, std::size_t z) {
  const Algebra& a = cx.algebra();
  const std::size_t n = a.dim();
  Matrix v(cx.mdim(c.src), cx.mdim(c.tgt), cx.field());
  if (!c.values[y * n + z].is_zero()) v += cx.rho(c.src, x) * c.values[y * n + z];
  for (const auto& [k, s] : a.product(x, y))
    if (!c.values[k * n + z].is_zero()) v -= c.values[k * n + z] * s;
  for (const auto& [k, s] : a.product(y, z))
    if (!c.values[x * n + k].is_zero()) v += c.values[x * n + k] * s;
  if (!c.values[x * n + y].is_zero()) v -= c.values[x * n + y] * cx.rho(c.tgt, z);
  return v;
}

}  // namespace

Cochain Complex::d2(const Cochain& c) const {
  if (c.degree != 2) throw std::invalid_argument("d2 expects a 2-cochain");
  const std::size_t n = a_.dim();
  Cochain out = zero(3, c.src, c.tgt);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) out.values[(x * n + y) * n + z] = d2_entry(*this, c, x, y, z);
  return out;
}

bool Complex::is_cocycle(const Cochain& c) const {
  if (c.degree != 2) throw std::invalid_argument("is_cocycle expects a 2-cochain");
  const std::size_t n = a_.dim();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!a_.valid_pair(x, y)) continue;
      for (std::size_t z = 0; z < n; ++z) {
        if (!a_.valid_triple(x, y, z)) continue;
        if (!d2_entry(*this, c, x, y, z).is_zero()) return false;
      }
    }
  return true;
}

bool Complex::is_derivation(const Cochain& psi) const { return ncdef::is_zero(coords(d1(psi))); }

Cochain Complex::cup(const Cochain& alpha, const Cochain& beta) const {
  if (alpha.tgt != beta.src)
    throw ScenarioError("EndpointMismatch", "cup: target of the first factor differs from the source of the second");
  const std::size_t n = a_.dim();
  const std::size_t deg = alpha.degree + beta.degree;
  if (deg > 3) throw std::invalid_argument("cup: degree above 3 is not supported");
  Cochain out = zero(deg, alpha.src, beta.tgt);
  const std::size_t na = alpha.values.size(), nb = beta.values.size();
  for (std::size_t x = 0; x < na; ++x) {
    if (alpha.values[x].is_zero()) continue;
    for (std::size_t y = 0; y < nb; ++y) {
      if (beta.values[y].is_zero()) continue;
      out.values[x * nb + y] = alpha.values[x] * beta.values[y];
    }
  }
  (void)n;
  return out;
}

std::size_t Complex::coord_length(std::size_t degree, std::size_t i, std::size_t j) const {
  const std::size_t block = mdim(i) * mdim(j);
  if (degree == 1) return a_.dim() * block;
  if (degree == 2) return pairs_.size() * block;
  throw std::invalid_argument("coordinates exist for degrees 1 and 2 only");
}

Vector Complex::coords(const Cochain& c) const {
  const std::size_t block = mdim(c.src) * mdim(c.tgt);
  Vector v;
  v.reserve(coord_length(c.degree, c.src, c.tgt));
  auto push = [&](const Matrix& m) {
    const auto& d = m.data();
    v.insert(v.end(), d.begin(), d.end());
  };
  if (c.degree == 1) {
    for (const auto& m : c.values) push(m);
  } else if (c.degree == 2) {
    const std::size_t n = a_.dim();
    for (const auto& [x, y] : pairs_) push(c.values[x * n + y]);
  } else {
    throw std::invalid_argument("coordinates exist for degrees 1 and 2 only");
  }
  (void)block;
  return v;
}

Cochain Complex::from_coords(std::size_t degree, std::size_t i, std::size_t j, std::span<const Scalar> v) const {
  if (v.size() != coord_length(degree, i, j)) throw std::invalid_argument("coordinate length mismatch");
  Cochain c = zero(degree, i, j);
  const std::size_t di = mdim(i), dj = mdim(j), block = di * dj;
  const std::size_t n = a_.dim();
  const std::size_t slots = degree == 1 ? n : pairs_.size();
  for (std::size_t s = 0; s < slots; ++s) {
    const std::size_t target = degree == 1 ? s : pairs_[s].first * n + pairs_[s].second;
    c.values[target] = unflatten(v.subspan(s * block, block), di, dj, field());
  }
  return c;
}

const std::vector<std::size_t>& Complex::primitive_order(std::size_t i, std::size_t j) const {
  auto key = std::make_pair(i, j);
  auto it = order_.find(key);
  if (it != order_.end()) return it->second;
  const std::size_t block = mdim(i) * mdim(j);
  std::vector<std::size_t> order(a_.dim() * block);
  std::iota(order.begin(), order.end(), 0);
  if (conv_.cochain_column_order == "degree-descending") {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) {
      return a_.degree(u / block) > a_.degree(v / block);
    });
  }
  return order_.emplace(key, std::move(order)).first->second;
}

const Complex::Ext1& Complex::ext1(std::size_t i, std::size_t j) const {
  auto key = std::make_pair(i, j);
  auto it = ext_.find(key);
  if (it != ext_.end()) return *it->second;

  const Field& f = field();
  const std::size_t di = mdim(i), dj = mdim(j), block = di * dj;
  const std::size_t len1 = coord_length(1, i, j), len2 = coord_length(2, i, j);

  // D1 as a len2 x len1 matrix, column by column
  Matrix d1m(len2, len1, f);
  Cochain unit = zero(1, i, j);
  for (std::size_t u = 0; u < len1; ++u) {
    const std::size_t b = u / block, p = (u % block) / dj, q = u % dj;
    unit.values[b](p, q) = f.one();
    const Vector col = coords(d1(unit));
    unit.values[b](p, q) = f.zero();
    for (std::size_t r = 0; r < len2; ++r)
      if (!col[r].is_zero()) d1m(r, u) = col[r];
  }
  Subspace der = kernel(d1m);

  auto e = std::make_unique<Ext1>();
  e->i = i;
  e->j = j;
  e->owner = this;
  e->perm.resize(len1);
  std::iota(e->perm.begin(), e->perm.end(), 0);
  if (conv_.ext1_column_order == "generators-first") {
    auto rank_of = [&](std::size_t u) {
      const std::size_t d = a_.degree(u / block);
      return d == 1 ? 0 : (d == 0 ? 1 : 2);
    };
    std::stable_sort(e->perm.begin(), e->perm.end(),
                     [&](std::size_t u, std::size_t v) { return rank_of(u) < rank_of(v); });
  }
  auto permute = [&](std::span<const Scalar> v) {
    Vector w(len1, f.zero());
    for (std::size_t pos = 0; pos < len1; ++pos) w[pos] = v[e->perm[pos]];
    return w;
  };

  std::vector<Vector> der_rows, inner_rows;
  for (std::size_t r = 0; r < der.dim(); ++r) der_rows.push_back(permute(der.basis().row(r)));
  for (std::size_t p = 0; p < di; ++p)
    for (std::size_t q = 0; q < dj; ++q) {
      Matrix phi(di, dj, f);
      phi(p, q) = f.one();
      Vector v = coords(d0(i, j, phi));
      if (!ncdef::is_zero(v)) inner_rows.push_back(permute(v));
    }
  Subspace der_p = der_rows.empty() ? Subspace(len1, f) : Subspace::span(der_rows, len1, f);
  Subspace inner_p = inner_rows.empty() ? Subspace(len1, f) : Subspace::span(inner_rows, len1, f);
  try {
    e->quotient = quotient_basis(inner_p, der_p);
  } catch (const NotASubspace&) {
    throw InvariantBreach("InnerNotDerivation", "inner derivations fail the derivation equations");
  }
  e->derivations = der;
  for (std::size_t r = 0; r < e->quotient.complement.rows(); ++r) {
    Vector v(len1, f.zero());
    const auto row = e->quotient.complement.row(r);
    for (std::size_t pos = 0; pos < len1; ++pos) v[e->perm[pos]] = row[pos];
    e->reps.push_back(from_coords(1, i, j, v));
  }
  return *ext_.emplace(key, std::move(e)).first->second;
}

Vector Complex::Ext1::coordinates(const Cochain& psi) const {
  const Vector v = owner->coords(psi);
  if (!derivations.contains(v)) throw InvariantBreach("NotADerivation", "cochain is not a derivation");
  Vector w(v.size(), owner->field().zero());
  for (std::size_t pos = 0; pos < v.size(); ++pos) w[pos] = v[perm[pos]];
  return quotient.project(w).second;
}

ClassRegistry::Slot& ClassRegistry::slot(std::size_t i, std::size_t j) {
  auto key = std::make_pair(i, j);
  auto it = slots_.find(key);
  if (it != slots_.end()) return it->second;
  const Complex& cx = *cx_;
  const Field& f = cx.field();
  const std::size_t dj = cx.mdim(j), block = cx.mdim(i) * dj;
  Slot s;
  s.solver = SpanSolver(cx.coord_length(2, i, j), f);
  Cochain unit = cx.zero(1, i, j);
  for (std::size_t u : cx.primitive_order(i, j)) {
    const std::size_t b = u / block, p = (u % block) / dj, q = u % dj;
    unit.values[b](p, q) = f.one();
    s.solver.add(cx.coords(cx.d1(unit)));
    unit.values[b](p, q) = f.zero();
    s.unit_of_generator.push_back(u);
  }
  s.units = s.unit_of_generator.size();
  return slots_.emplace(key, std::move(s)).first->second;
}

std::optional<ClassRegistry::Solution> ClassRegistry::solve(const Cochain& c, bool register_new) {
  if (c.degree != 2) throw std::invalid_argument("solve_coboundary expects a 2-cochain");
  const Complex& cx = *cx_;
  if (!cx.is_cocycle(c)) throw InvariantBreach("NotACocycle", "2-cochain is not a cocycle");
  Slot& s = slot(c.src, c.tgt);
  const Field& f = cx.field();
  const Vector v = cx.coords(c);
  auto coeffs = s.solver.express(v);
  Solution sol;
  sol.primitive = cx.zero(1, c.src, c.tgt);
  if (!coeffs) {
    if (!register_new) return std::nullopt;
    s.solver.add(v);
    s.reps.push_back(c);
    sol.classes = zero_vector(s.reps.size(), f);
    sol.classes.back() = f.one();
    sol.registered = true;
    return sol;
  }
  const std::size_t dj = cx.mdim(c.tgt), block = cx.mdim(c.src) * dj;
  for (std::size_t g = 0; g < s.units && g < coeffs->size(); ++g) {
    const Scalar& k = (*coeffs)[g];
    if (k.is_zero()) continue;
    const std::size_t u = s.unit_of_generator[g];
    sol.primitive.values[u / block]((u % block) / dj, u % dj) += k;
  }
  sol.classes = zero_vector(s.reps.size(), f);
  for (std::size_t l = 0; l < s.reps.size(); ++l)
    if (s.units + l < coeffs->size()) sol.classes[l] = (*coeffs)[s.units + l];
  return sol;
}

std::size_t ClassRegistry::count(std::size_t i, std::size_t j) const {
  auto it = slots_.find({i, j});
  return it == slots_.end() ? 0 : it->second.reps.size();
}

const std::vector<Cochain>& ClassRegistry::reps(std::size_t i, std::size_t j) const {
  static const std::vector<Cochain> none;
  auto it = slots_.find({i, j});
  return it == slots_.end() ? none : it->second.reps;
}

std::string ClassRegistry::class_name(std::size_t i, std::size_t j, std::size_t l) const {
  std::string base = "s" + std::to_string(i + 1) + std::to_string(j + 1);
  if (count(i, j) > 1) base += "_" + std::to_string(l + 1);
  return base;
}

std::size_t ClassRegistry::total() const {
  std::size_t t = 0;
  for (const auto& [k, s] : slots_) t += s.reps.size();
  return t;
}

}  // namespace ncdef
