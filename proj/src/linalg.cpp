#include "ncdef/linalg.hpp"

#include <sstream>

namespace ncdef {

Vector zero_vector(std::size_t n, const Field& f) { return Vector(n, f.zero()); }

bool is_zero(std::span<const Scalar> v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

void axpy(Vector& y, const Scalar& c, std::span<const Scalar> x) {
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += c * x[i];
}

Matrix::Matrix(std::size_t rows, std::size_t cols, const Field& field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, field.zero()) {}

Matrix Matrix::identity(std::size_t n, const Field& field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols, const Field& field) {
  Matrix m(rows.size(), cols, field);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vector Matrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return {s.begin(), s.end()};
}

bool Matrix::is_zero() const { return ncdef::is_zero(data_); }

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, field_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix b(nr, nc, field_);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

void Matrix::append_row(std::span<const Scalar> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw std::invalid_argument("append_row: width mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c);
    os << "]";
  }
  os << "]";
  return os.str();
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!o.data_[i].is_zero()) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!o.data_[i].is_zero()) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& c) {
  for (auto& x : data_) x *= c;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in *");
  Matrix p(a.rows_, b.cols_, a.field_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) p(i, j) += aik * b(k, j);
    }
  return p;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.data_.size(); ++i)
    if (a.data_[i] != b.data_[i]) return false;
  return true;
}

Vector operator*(std::span<const Scalar> v, const Matrix& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("vector-matrix shape mismatch");
  Vector out = zero_vector(m.cols(), m.field());
  for (std::size_t k = 0; k < v.size(); ++k) axpy(out, v[k], m.row(k));
  return out;
}

RrefResult rref(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t r = lead_row;
    while (r < m.rows() && m(r, c).is_zero()) ++r;
    if (r == m.rows()) continue;
    if (r != lead_row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(lead_row, j));
    const Scalar inv = m(lead_row, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(lead_row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead_row || m(i, c).is_zero()) continue;
      const Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(lead_row, j).is_zero()) m(i, j) -= f * m(lead_row, j);
    }
    pivots.push_back(c);
    ++lead_row;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Subspace::Subspace(std::size_t ambient_dim, const Field& field)
    : ambient_(ambient_dim), basis_(0, ambient_dim, field) {}

Subspace Subspace::span(const Matrix& rows) {
  auto [red, piv] = rref(rows);
  Subspace s(rows.cols(), rows.field());
  s.basis_ = red.block(0, 0, piv.size(), rows.cols());
  s.pivots_ = std::move(piv);
  return s;
}

Subspace Subspace::span(const std::vector<Vector>& rows, std::size_t ambient_dim, const Field& field) {
  return span(Matrix::from_rows(rows, ambient_dim, field));
}

Subspace Subspace::full(std::size_t ambient_dim, const Field& field) {
  return span(Matrix::identity(ambient_dim, field));
}

Vector Subspace::residual(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw std::invalid_argument("subspace ambient mismatch");
  Vector r(v.begin(), v.end());
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Scalar c = r[pivots_[i]];
    if (!c.is_zero()) axpy(r, -c, basis_.row(i));
  }
  return r;
}

bool Subspace::contains(std::span<const Scalar> v) const { return ncdef::is_zero(residual(v)); }

bool Subspace::contains(const Subspace& other) const {
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

std::optional<Vector> Subspace::coordinates(std::span<const Scalar> v) const {
  Vector coords;
  coords.reserve(pivots_.size());
  for (auto p : pivots_) coords.push_back(v[p]);
  Vector recon = zero_vector(ambient_, field());
  for (std::size_t i = 0; i < pivots_.size(); ++i) axpy(recon, coords[i], basis_.row(i));
  for (std::size_t j = 0; j < ambient_; ++j)
    if (recon[j] != v[j]) return std::nullopt;
  return coords;
}

Subspace Subspace::sum(const Subspace& other) const {
  Matrix m = basis_;
  for (std::size_t i = 0; i < other.dim(); ++i) m.append_row(other.basis_.row(i));
  if (m.rows() == 0) return Subspace(ambient_, field());
  return span(m);
}

Subspace Subspace::intersect(const Subspace& other) const {
  // x*B1 = y*B2  <=>  [x y] * [B1; -B2] = 0
  const std::size_t d1 = dim(), d2 = other.dim();
  if (d1 == 0 || d2 == 0) return Subspace(ambient_, field());
  Matrix stacked(d1 + d2, ambient_, field());
  stacked.set_block(0, 0, basis_);
  stacked.set_block(d1, 0, other.basis_ * (-field().one()));
  // left kernel of stacked = kernel of its transpose
  Subspace lk = kernel(stacked.transpose());
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < lk.dim(); ++i) {
    auto row = lk.basis().row(i);
    Vector x(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(d1));
    rows.push_back(std::span<const Scalar>(x) * basis_);
  }
  if (rows.empty()) return Subspace(ambient_, field());
  return span(rows, ambient_, field());
}

Subspace kernel(const Matrix& m) {
  auto [red, piv] = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vector> rows;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v = zero_vector(n, m.field());
    v[f] = m.field().one();
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -red(i, f);
    rows.push_back(std::move(v));
  }
  if (rows.empty()) return Subspace(n, m.field());
  return Subspace::span(rows, n, m.field());
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
  const std::size_t n = a.cols(), k = b.cols();
  Matrix aug(a.rows(), n + k, a.field());
  aug.set_block(0, 0, a);
  aug.set_block(0, n, b);
  auto [red, piv] = rref(aug);
  Matrix x(n, k, a.field());
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] >= n) return std::nullopt;
    for (std::size_t j = 0; j < k; ++j) x(piv[i], j) = red(i, n + j);
  }
  return x;
}

std::pair<Vector, Vector> QuotientBasis::project(std::span<const Scalar> v) const {
  // v = s + sum c_i complement_i, complement pivots are disjoint from sub's.
  std::vector<std::size_t> cpiv;
  for (std::size_t i = 0; i < complement.rows(); ++i) {
    std::size_t p = 0;
    while (complement(i, p).is_zero()) ++p;
    cpiv.push_back(p);
  }
  Vector r = sub.residual(v);
  Vector coords;
  for (std::size_t i = 0; i < cpiv.size(); ++i) {
    coords.push_back(r[cpiv[i]]);
  }
  Vector s(v.begin(), v.end());
  for (std::size_t i = 0; i < cpiv.size(); ++i) axpy(s, -coords[i], complement.row(i));
  return {s, coords};
}

QuotientBasis quotient_basis(const Subspace& sub, const Subspace& ambient) {
  if (!ambient.contains(sub)) throw NotASubspace("quotient_basis: sub is not contained in ambient");
  std::vector<Vector> residues;
  for (std::size_t i = 0; i < ambient.dim(); ++i) {
    Vector r = sub.residual(ambient.basis().row(i));
    if (!is_zero(r)) residues.push_back(std::move(r));
  }
  QuotientBasis q{sub, Matrix(0, ambient.ambient_dim(), ambient.field())};
  if (!residues.empty()) {
    // residues vanish at sub's pivots; their RREF keeps that property
    q.complement = Subspace::span(residues, ambient.ambient_dim(), ambient.field()).basis();
  }
  return q;
}

bool SpanSolver::add(std::span<const Scalar> v) {
  if (v.size() != length_) throw std::invalid_argument("SpanSolver: length mismatch");
  if (by_lead_.empty()) by_lead_.assign(length_, -1);
  const std::size_t g = generators_++;
  Vector x(v.begin(), v.end());
  Vector combo = zero_vector(generators_, field_);
  combo[g] = field_.one();
  for (std::size_t pos = 0; pos < length_; ++pos) {
    if (x[pos].is_zero()) continue;
    const auto bi = by_lead_[pos];
    if (bi < 0) {
      const Scalar inv = x[pos].inverse();
      for (std::size_t j = pos; j < length_; ++j)
        if (!x[j].is_zero()) x[j] *= inv;
      for (auto& c : combo) c *= inv;
      by_lead_[pos] = static_cast<std::ptrdiff_t>(basis_.size());
      basis_.push_back({pos, std::move(x), std::move(combo)});
      return true;
    }
    const auto& e = basis_[static_cast<std::size_t>(bi)];
    const Scalar c = x[pos];
    axpy(x, -c, e.vec);
    for (std::size_t j = 0; j < e.combo.size(); ++j)
      if (!e.combo[j].is_zero()) combo[j] -= c * e.combo[j];
  }
  return false;
}

Vector SpanSolver::residual(std::span<const Scalar> v) const {
  Vector x(v.begin(), v.end());
  if (by_lead_.empty()) return x;
  for (std::size_t pos = 0; pos < length_; ++pos) {
    if (x[pos].is_zero()) continue;
    const auto bi = by_lead_[pos];
    if (bi < 0) continue;
    const Scalar c = x[pos];
    axpy(x, -c, basis_[static_cast<std::size_t>(bi)].vec);
  }
  return x;
}

std::optional<Vector> SpanSolver::express(std::span<const Scalar> v) const {
  if (v.size() != length_) throw std::invalid_argument("SpanSolver: length mismatch");
  Vector x(v.begin(), v.end());
  Vector coeffs = zero_vector(generators_, field_);
  for (std::size_t pos = 0; pos < length_; ++pos) {
    if (x[pos].is_zero()) continue;
    const auto bi = by_lead_.empty() ? -1 : by_lead_[pos];
    if (bi < 0) return std::nullopt;
    const auto& e = basis_[static_cast<std::size_t>(bi)];
    const Scalar c = x[pos];
    axpy(x, -c, e.vec);
    for (std::size_t j = 0; j < e.combo.size(); ++j)
      if (!e.combo[j].is_zero()) coeffs[j] += c * e.combo[j];
  }
  return coeffs;
}

}  // namespace ncdef
