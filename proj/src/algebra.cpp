#include "ncdef/algebra.hpp"

#include <sstream>

#include "ncdef/errors.hpp"

namespace ncdef {

Algebra::Algebra(Field field, std::vector<std::string> names, Vector unit, std::vector<SparseVec> table)
    : field_(std::move(field)), names_(std::move(names)), unit_(std::move(unit)), table_(std::move(table)) {
  if (unit_.size() != names_.size() || table_.size() != names_.size() * names_.size())
    throw ScenarioError("BadAlgebra", "structure table does not match the basis size");
}

Algebra Algebra::from_dense(Field field, std::vector<std::string> names, Vector unit,
                            const std::vector<std::vector<Vector>>& c) {
  const std::size_t n = names.size();
  std::vector<SparseVec> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!c[i][j][k].is_zero()) table[i * n + j].emplace_back(k, c[i][j][k]);
  return Algebra(std::move(field), std::move(names), std::move(unit), std::move(table));
}

Scalar Algebra::coefficient(std::size_t a, std::size_t b, std::size_t k) const {
  for (const auto& [idx, c] : product(a, b))
    if (idx == k) return c;
  return field_.zero();
}

Vector Algebra::multiply(std::span<const Scalar> x, std::span<const Scalar> y) const {
  Vector out = zero_vector(dim(), field_);
  for (std::size_t a = 0; a < dim(); ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t b = 0; b < dim(); ++b) {
      if (y[b].is_zero()) continue;
      const Scalar xy = x[a] * y[b];
      for (const auto& [k, c] : product(a, b)) out[k] += xy * c;
    }
  }
  return out;
}

Vector Algebra::basis_vector(std::size_t i) const {
  Vector v = zero_vector(dim(), field_);
  v[i] = field_.one();
  return v;
}

void Algebra::set_grading(std::vector<std::size_t> degrees, std::size_t cap) {
  if (degrees.size() != dim()) throw std::invalid_argument("grading size mismatch");
  degrees_ = std::move(degrees);
  cap_ = cap;
}

void validate(const Algebra& a) {
  const std::size_t n = a.dim();
  const Field& f = a.field();
  for (std::size_t i = 0; i < n; ++i) {
    const Vector bi = a.basis_vector(i);
    if (a.multiply(a.unit(), bi) != bi || a.multiply(bi, a.unit()) != bi)
      throw ScenarioError("BadUnit", "unit is not two-sided on basis element " + a.name(i));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector ij = zero_vector(n, f);
      for (const auto& [k, c] : a.product(i, j)) ij[k] += c;
      for (std::size_t l = 0; l < n; ++l) {
        Vector left = zero_vector(n, f), right = zero_vector(n, f);
        for (std::size_t k = 0; k < n; ++k) {
          if (ij[k].is_zero()) continue;
          for (const auto& [m, c] : a.product(k, l)) left[m] += ij[k] * c;
        }
        for (const auto& [k, c] : a.product(j, l))
          for (const auto& [m, d] : a.product(i, k)) right[m] += c * d;
        if (left != right) {
          std::ostringstream os;
          os << "NotAssociative(" << a.name(i) << "," << a.name(j) << "," << a.name(l) << ")";
          throw ScenarioError("NotAssociative", os.str());
        }
      }
    }
}

Matrix act(const ModuleRep& m, std::span<const Scalar> a, const Field& f) {
  Matrix out(m.dim, m.dim, f);
  for (std::size_t b = 0; b < a.size(); ++b)
    if (!a[b].is_zero()) out += m.action[b] * a[b];
  return out;
}

void validate_module(const Algebra& a, const ModuleRep& m) {
  const Field& f = a.field();
  if (m.action.size() != a.dim())
    throw ScenarioError("BadModule", m.name + ": expected one action matrix per basis element");
  for (const auto& x : m.action)
    if (x.rows() != m.dim || x.cols() != m.dim)
      throw ScenarioError("BadModule", m.name + ": action matrix has the wrong shape");
  if (act(m, a.unit(), f) != Matrix::identity(m.dim, f))
    throw ScenarioError("BadModule", m.name + ": the unit does not act as the identity");
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (!a.valid_pair(i, j)) continue;
      Matrix rhs(m.dim, m.dim, f);
      for (const auto& [k, c] : a.product(i, j)) rhs += m.action[k] * c;
      if (m.action[i] * m.action[j] != rhs)
        throw ScenarioError("BadModule", m.name + ": action is not multiplicative on (" + a.name(i) +
                                             "," + a.name(j) + ")");
    }
}

ModuleRep regular_module(const Algebra& a) {
  ModuleRep m{"A_A", a.dim(), {}};
  for (std::size_t b = 0; b < a.dim(); ++b) {
    Matrix x(a.dim(), a.dim(), a.field());
    for (std::size_t r = 0; r < a.dim(); ++r)
      for (const auto& [k, c] : a.product(r, b)) x(r, k) += c;
    m.action.push_back(std::move(x));
  }
  return m;
}

Vector flatten(const Matrix& m) { return m.data(); }

Matrix unflatten(std::span<const Scalar> v, std::size_t rows, std::size_t cols, const Field& f) {
  Matrix m(rows, cols, f);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = v[r * cols + c];
  return m;
}

bool is_two_sided_ideal(const Algebra& a, const Subspace& s) {
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const auto v = s.basis().row(i);
    for (std::size_t b = 0; b < a.dim(); ++b) {
      const Vector e = a.basis_vector(b);
      if (!s.contains(a.multiply(v, e)) || !s.contains(a.multiply(e, v))) return false;
    }
  }
  return true;
}

std::optional<std::size_t> nilpotency_index(const Algebra& a, const Subspace& s) {
  Subspace power = s;
  std::size_t k = 1;
  while (power.dim() > 0) {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < power.dim(); ++i)
      for (std::size_t j = 0; j < s.dim(); ++j) {
        Vector p = a.multiply(power.basis().row(i), s.basis().row(j));
        if (!is_zero(p)) rows.push_back(std::move(p));
      }
    Subspace next = rows.empty() ? Subspace(a.dim(), a.field()) : Subspace::span(rows, a.dim(), a.field());
    if (next.dim() == power.dim()) return std::nullopt;
    power = std::move(next);
    ++k;
  }
  return k;
}

Subspace radical(const Algebra& a, const std::vector<ModuleRep>& family) {
  std::size_t cols = 0;
  for (const auto& m : family) cols += m.dim * m.dim;
  Matrix rho(a.dim(), cols, a.field());
  for (std::size_t b = 0; b < a.dim(); ++b) {
    std::size_t off = 0;
    for (const auto& m : family) {
      const Vector v = flatten(m.action[b]);
      for (std::size_t k = 0; k < v.size(); ++k) rho(b, off + k) = v[k];
      off += v.size();
    }
  }
  Subspace rad = kernel(rho.transpose());
  if (!nilpotency_index(a, rad))
    throw HypothesisViolation("NotNilpotent",
                              "ker(rho) is not nilpotent; the declared family is not the complete simple family");
  return rad;
}

Subspace commutant(const ModuleRep& m, const Field& f) {
  const std::size_t d = m.dim;
  Matrix eq(0, d * d, f);
  for (const auto& x : m.action) {
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        Vector row = zero_vector(d * d, f);
        for (std::size_t k = 0; k < d; ++k) {
          row[k * d + c] += x(r, k);
          row[r * d + k] -= x(k, c);
        }
        if (!is_zero(row)) eq.append_row(row);
      }
  }
  if (eq.rows() == 0) return Subspace::full(d * d, f);
  return kernel(eq);
}

Algebra end_algebra(const ModuleRep& m, const Field& f) {
  const Subspace c = commutant(m, f);
  const std::size_t n = c.dim(), d = m.dim;
  std::vector<Matrix> mats;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    mats.push_back(unflatten(c.basis().row(i), d, d, f));
    names.push_back("phi" + std::to_string(i + 1));
  }
  std::vector<SparseVec> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto coords = c.coordinates(flatten(mats[i] * mats[j]));
      if (!coords) throw InvariantBreach("EndNotClosed", "commutant is not closed under products");
      for (std::size_t k = 0; k < n; ++k)
        if (!(*coords)[k].is_zero()) table[i * n + j].emplace_back(k, (*coords)[k]);
    }
  auto unit = c.coordinates(flatten(Matrix::identity(d, f)));
  if (!unit) throw InvariantBreach("EndNotClosed", "identity is not in the commutant");
  return Algebra(f, std::move(names), std::move(*unit), std::move(table));
}

std::string to_string(SimplicityCertificate::Verdict v) {
  switch (v) {
    case SimplicityCertificate::Verdict::SplitSimple: return "SplitSimple";
    case SimplicityCertificate::Verdict::SpinChecked: return "SpinChecked";
    case SimplicityCertificate::Verdict::Reducible: return "Reducible";
    case SimplicityCertificate::Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Subspace spin(const Algebra& a, const ModuleRep& m, std::span<const Scalar> v) {
  const Field& f = a.field();
  SpanSolver span(m.dim, f);
  std::vector<Vector> queue{Vector(v.begin(), v.end())};
  std::vector<Vector> kept;
  while (!queue.empty()) {
    Vector w = std::move(queue.back());
    queue.pop_back();
    if (!span.add(w)) continue;
    for (std::size_t b = 0; b < a.dim(); ++b) queue.push_back(std::span<const Scalar>(w) * m.action[b]);
    kept.push_back(std::move(w));
  }
  if (kept.empty()) return Subspace(m.dim, f);
  return Subspace::span(kept, m.dim, f);
}

SimplicityCertificate simplicity_certificate(const Algebra& a, const ModuleRep& m) {
  const Field& f = a.field();
  const std::size_t d = m.dim;
  SimplicityCertificate cert;
  Matrix images(0, d * d, f);
  for (const auto& x : m.action) images.append_row(flatten(x));
  cert.image_dim = images.rows() ? rank(images) : 0;
  cert.end_dim = commutant(m, f).dim();
  if (cert.image_dim == d * d) {
    cert.verdict = SimplicityCertificate::Verdict::SplitSimple;
    return cert;
  }
  std::vector<Vector> tests;
  for (std::size_t i = 0; i < d; ++i) {
    Vector e = zero_vector(d, f);
    e[i] = f.one();
    tests.push_back(e);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      Vector e = zero_vector(d, f);
      e[i] = f.one();
      e[j] = f.one();
      tests.push_back(e);
    }
  for (const auto& t : tests) {
    Subspace s = spin(a, m, t);
    if (s.dim() > 0 && s.dim() < d) {
      cert.verdict = SimplicityCertificate::Verdict::Reducible;
      cert.witness = std::move(s);
      return cert;
    }
  }
  cert.verdict = cert.end_dim > 1 ? SimplicityCertificate::Verdict::SpinChecked
                                  : SimplicityCertificate::Verdict::Inconclusive;
  return cert;
}

// ---------------------------------------------------------------------------

PresentedAlgebra::PresentedAlgebra(const Field& field, const MatricPresentation& p)
    : field_(field), table_(p.quiver, p.degree_cap) {
  for (const auto& arrow : p.quiver.arrows)
    if (arrow.source >= p.quiver.points || arrow.target >= p.quiver.points)
      throw ScenarioError("BadQuiver", "arrow " + arrow.name + " has an endpoint outside the quiver");
  PathTable scratch = table_;
  const std::size_t limit = table_.size();
  for (const auto& text : p.relations) {
    Poly g = parse_poly(text, scratch, field_);
    Poly kept;
    for (const auto& [idx, c] : g) {
      if (scratch.path(idx).degree() < 2)
        throw ScenarioError("BadRelation", "relation '" + text + "' has a term of degree < 2");
      if (idx < limit) kept.emplace(idx, c);
    }
    relations_.push_back(std::move(kept));
  }
  ideal_ = ideal_span(table_, relations_, field_);
  basis_paths_ = normal_words(ideal_);
  path_basis_.assign(table_.size(), -1);
  for (std::size_t i = 0; i < basis_paths_.size(); ++i)
    path_basis_[basis_paths_[i]] = static_cast<std::ptrdiff_t>(i);

  const std::size_t n = basis_paths_.size();
  std::vector<std::string> names;
  std::vector<std::size_t> degrees;
  for (auto idx : basis_paths_) {
    names.push_back(table_.render(idx));
    degrees.push_back(table_.path(idx).degree());
  }
  std::vector<SparseVec> prod(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto w = table_.concat(basis_paths_[i], basis_paths_[j]);
      if (!w) continue;
      const Vector c = coordinates(normal_form(table_.path(*w)));
      for (std::size_t k = 0; k < n; ++k)
        if (!c[k].is_zero()) prod[i * n + j].emplace_back(k, c[k]);
    }
  Vector unit = zero_vector(n, field_);
  for (std::size_t pt = 0; pt < table_.quiver().points; ++pt)
    unit[static_cast<std::size_t>(path_basis_[pt])] = field_.one();
  algebra_ = Algebra(field_, std::move(names), std::move(unit), std::move(prod));
  algebra_.set_grading(std::move(degrees), table_.max_degree());
}

std::optional<std::size_t> PresentedAlgebra::basis_of_path(std::size_t path) const {
  if (path >= path_basis_.size() || path_basis_[path] < 0) return std::nullopt;
  return static_cast<std::size_t>(path_basis_[path]);
}

Poly PresentedAlgebra::normal_form(const Path& word) const {
  if (word.degree() > table_.max_degree())
    throw ScenarioError("DegreeCapExceeded", "word of degree " + std::to_string(word.degree()) +
                                                 " exceeds the degree cap " +
                                                 std::to_string(table_.max_degree()));
  auto idx = table_.index(word);
  if (!idx) throw ScenarioError("BadWord", "word is not a path of the quiver");
  Poly p;
  p.emplace(*idx, field_.one());
  return normal_form(p);
}

Poly PresentedAlgebra::normal_form(const Poly& p) const {
  return vector_to_poly(ideal_.residual(poly_to_vector(p, table_.size(), field_)));
}

Vector PresentedAlgebra::coordinates(const Poly& p) const {
  const Poly nf = normal_form(p);
  Vector v = zero_vector(basis_paths_.size(), field_);
  for (const auto& [idx, c] : nf) v[static_cast<std::size_t>(path_basis_[idx])] = c;
  return v;
}

ModuleRep PresentedAlgebra::module(std::string name, std::size_t dim, const std::vector<Matrix>& points,
                                   const std::vector<Matrix>& arrows) const {
  const Quiver& q = table_.quiver();
  const Field& f = field_;
  if (points.size() != q.points || arrows.size() != q.arrows.size())
    throw ScenarioError("BadModule", name + ": need one matrix per point and per arrow");
  for (const auto& x : points)
    if (x.rows() != dim || x.cols() != dim) throw ScenarioError("BadModule", name + ": wrong matrix shape");
  for (const auto& x : arrows)
    if (x.rows() != dim || x.cols() != dim) throw ScenarioError("BadModule", name + ": wrong matrix shape");
  Matrix total(dim, dim, f);
  for (std::size_t i = 0; i < q.points; ++i) {
    total += points[i];
    for (std::size_t j = 0; j < q.points; ++j) {
      const Matrix expect = i == j ? points[i] : Matrix(dim, dim, f);
      if (points[i] * points[j] != expect)
        throw ScenarioError("BadModule", name + ": point idempotents are not orthogonal idempotents");
    }
  }
  if (total != Matrix::identity(dim, f))
    throw ScenarioError("BadModule", name + ": point idempotents do not sum to the identity");
  for (std::size_t a = 0; a < q.arrows.size(); ++a)
    if (points[q.arrows[a].source] * arrows[a] * points[q.arrows[a].target] != arrows[a])
      throw ScenarioError("BadModule", name + ": arrow " + q.arrows[a].name + " ignores its endpoints");

  auto word_action = [&](std::size_t path) {
    const Path& p = table_.path(path);
    if (p.arrows.empty()) return points[p.source];
    Matrix x = arrows[p.arrows.front()];
    for (std::size_t k = 1; k < p.arrows.size(); ++k) x = x * arrows[p.arrows[k]];
    return x;
  };
  for (std::size_t r = 0; r < relations_.size(); ++r) {
    Matrix x(dim, dim, f);
    for (const auto& [idx, c] : relations_[r]) x += word_action(idx) * c;
    if (!x.is_zero())
      throw ScenarioError("BadModule", name + ": relation " + std::to_string(r + 1) + " does not act as 0");
  }
  // words of length cap + 1 must act as zero
  std::vector<Matrix> layer;
  for (std::size_t a = 0; a < arrows.size(); ++a) layer.push_back(arrows[a]);
  for (std::size_t d = 1; d <= table_.max_degree() && !layer.empty(); ++d) {
    Matrix rows(0, dim * dim, f);
    for (const auto& x : layer)
      for (const auto& y : arrows) rows.append_row(flatten(x * y));
    std::vector<Matrix> next;
    if (rows.rows() > 0) {
      Subspace s = Subspace::span(rows);
      for (std::size_t i = 0; i < s.dim(); ++i) next.push_back(unflatten(s.basis().row(i), dim, dim, f));
    }
    layer = std::move(next);
  }
  if (!layer.empty())
    throw ScenarioError("BadModule", name + ": words longer than the degree cap act nontrivially");

  ModuleRep m{std::move(name), dim, {}};
  for (auto idx : basis_paths_) m.action.push_back(word_action(idx));
  return m;
}

}  // namespace ncdef
