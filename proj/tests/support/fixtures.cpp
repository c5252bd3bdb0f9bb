#include "fixtures.hpp"

#include <map>

namespace fx {

namespace {

Algebra dense(const Field& f, std::vector<std::string> names, Vector unit, const std::vector<std::vector<Vector>>& c) {
  Algebra a = Algebra::from_dense(f, std::move(names), std::move(unit), c);
  validate(a);
  return a;
}

std::vector<std::vector<Vector>> zeros(std::size_t n, const Field& f) {
  return std::vector<std::vector<Vector>>(n, std::vector<Vector>(n, zero_vector(n, f)));
}

ModuleRep character(const std::string& name, const Algebra& a, const Vector& values) {
  ModuleRep m{name, 1, {}};
  for (std::size_t b = 0; b < a.dim(); ++b) {
    Matrix x(1, 1, a.field());
    x(0, 0) = values[b];
    m.action.push_back(std::move(x));
  }
  return m;
}

}  // namespace

Field rational() { return Field{FieldSpec::rational()}; }
Field prime(std::uint64_t p) { return Field{FieldSpec::prime(p)}; }

Matrix scalar1(const Field& f, long v) {
  Matrix m(1, 1, f);
  m(0, 0) = f.from_int(v);
  return m;
}

Instance truncated_poly(const Field& f, std::size_t n) {
  std::vector<std::string> names{"1"};
  for (std::size_t k = 1; k < n; ++k) names.push_back(k == 1 ? "x" : "x^" + std::to_string(k));
  auto c = zeros(n, f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) c[i][j][i + j] = f.one();
  Vector unit = zero_vector(n, f);
  unit[0] = f.one();
  Algebra a = dense(f, names, unit, c);
  Vector chi = zero_vector(n, f);
  chi[0] = f.one();
  return {"k[x]/(x^" + std::to_string(n) + ")", a, {character("k", a, chi)}};
}

Instance upper_triangular(const Field& f, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      idx.emplace_back(i, j);
      names.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  const std::size_t d = idx.size();
  auto c = zeros(d, f);
  Vector unit = zero_vector(d, f);
  for (std::size_t x = 0; x < d; ++x) {
    if (idx[x].first == idx[x].second) unit[x] = f.one();
    for (std::size_t y = 0; y < d; ++y)
      if (idx[x].second == idx[y].first)
        for (std::size_t z = 0; z < d; ++z)
          if (idx[z] == std::make_pair(idx[x].first, idx[y].second)) c[x][y][z] = f.one();
  }
  Algebra a = dense(f, names, unit, c);
  Instance in{"UT" + std::to_string(n), a, {}};
  for (std::size_t k = 0; k < n; ++k) {
    Vector chi = zero_vector(d, f);
    for (std::size_t x = 0; x < d; ++x)
      if (idx[x] == std::make_pair(k, k)) chi[x] = f.one();
    in.family.push_back(character("S" + std::to_string(k + 1), a, chi));
  }
  return in;
}

Instance split_semisimple(const Field& f, std::size_t r) {
  std::vector<std::string> names;
  auto c = zeros(r, f);
  Vector unit = zero_vector(r, f);
  for (std::size_t i = 0; i < r; ++i) {
    names.push_back("e" + std::to_string(i + 1));
    c[i][i][i] = f.one();
    unit[i] = f.one();
  }
  Algebra a = dense(f, names, unit, c);
  Instance in{"k^" + std::to_string(r), a, {}};
  for (std::size_t k = 0; k < r; ++k) {
    Vector chi = zero_vector(r, f);
    chi[k] = f.one();
    in.family.push_back(character("S" + std::to_string(k + 1), a, chi));
  }
  return in;
}

Instance cyclic_group(const Field& f, std::size_t n, const std::vector<long>& roots) {
  std::vector<std::string> names;
  auto c = zeros(n, f);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("g" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) c[i][j][(i + j) % n] = f.one();
  }
  Vector unit = zero_vector(n, f);
  unit[0] = f.one();
  Algebra a = dense(f, names, unit, c);
  Instance in{"k[Z" + std::to_string(n) + "]", a, {}};
  for (long w : roots) {
    Vector chi = zero_vector(n, f);
    Scalar p = f.one();
    for (std::size_t i = 0; i < n; ++i) {
      chi[i] = p;
      p *= f.from_int(w);
    }
    in.family.push_back(character("chi" + std::to_string(w), a, chi));
  }
  return in;
}

Instance z3_rational() {
  const Field f = rational();
  Instance in = cyclic_group(f, 3, {1});
  Matrix x(2, 2, f);
  x(0, 1) = f.one();
  x(1, 0) = f.from_int(-1);
  x(1, 1) = f.from_int(-1);
  in.family.push_back(ModuleRep{"N", 2, {Matrix::identity(2, f), x, x * x}});
  in.label = "Q[Z3]";
  return in;
}

Instance product_partial(const Field& f) {
  auto c = zeros(3, f);
  c[0][0][0] = f.one();
  c[0][1][1] = f.one();
  c[1][0][1] = f.one();
  c[2][2][2] = f.one();
  Vector unit = zero_vector(3, f);
  unit[0] = f.one();
  unit[2] = f.one();
  Algebra a = dense(f, {"a", "ax", "b"}, unit, c);
  Vector chi = zero_vector(3, f);
  chi[2] = f.one();
  return {"k[x]/(x^2) x k partial", a, {character("S", a, chi)}};
}

Matrix random_matrix(std::size_t r, std::size_t c, const Field& f, std::mt19937_64& rng, long range) {
  std::uniform_int_distribution<long> d(-range, range);
  Matrix m(r, c, f);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(d(rng));
  return m;
}

Matrix random_invertible(std::size_t n, const Field& f, std::mt19937_64& rng) {
  while (true) {
    Matrix m = random_matrix(n, n, f, rng, 2);
    if (rank(m) == n) return m;
  }
}

Instance rebase(const Instance& in, std::mt19937_64& rng) {
  const Algebra& a = in.algebra;
  const Field& f = a.field();
  const std::size_t n = a.dim();
  const Matrix p = random_invertible(n, f, rng);
  const Matrix q = *solve(p, Matrix::identity(n, f));  // P^{-1}
  auto c = zeros(n, f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector old = zero_vector(n, f);
      for (std::size_t x = 0; x < n; ++x) {
        if (p(i, x).is_zero()) continue;
        for (std::size_t y = 0; y < n; ++y) {
          if (p(j, y).is_zero()) continue;
          for (const auto& [k, v] : a.product(x, y)) old[k] += p(i, x) * p(j, y) * v;
        }
      }
      c[i][j] = std::span<const Scalar>(old) * q;
    }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i + 1));
  Instance out{in.label + " (rebased)", dense(f, names, std::span<const Scalar>(a.unit()) * q, c), {}};
  for (const auto& m : in.family) {
    ModuleRep r{m.name, m.dim, {}};
    for (std::size_t i = 0; i < n; ++i) {
      Matrix x(m.dim, m.dim, f);
      for (std::size_t j = 0; j < n; ++j)
        if (!p(i, j).is_zero()) x += m.action[j] * p(i, j);
      r.action.push_back(std::move(x));
    }
    out.family.push_back(std::move(r));
  }
  return out;
}

Cochain random_cochain(const Complex& cx, std::size_t degree, std::size_t i, std::size_t j, std::mt19937_64& rng) {
  Cochain c = cx.zero(degree, i, j);
  for (auto& v : c.values) v = random_matrix(cx.mdim(i), cx.mdim(j), cx.field(), rng);
  return c;
}

std::vector<Instance> battery(const Field& f) {
  std::vector<Instance> out;
  for (std::size_t n = 2; n <= 4; ++n) out.push_back(truncated_poly(f, n));
  out.push_back(upper_triangular(f, 2));
  out.push_back(upper_triangular(f, 3));
  for (std::size_t r = 1; r <= 3; ++r) out.push_back(split_semisimple(f, r));
  const std::uint64_t p = f.spec.characteristic();
  if (p == 3) {
    out.push_back(cyclic_group(f, 3, {1}));
  } else if (p != 0 && (p - 1) % 3 == 0) {
    for (long w = 2; w < static_cast<long>(p); ++w)
      if ((w * w * w) % static_cast<long>(p) == 1) {
        out.push_back(cyclic_group(f, 3, {1, w, (w * w) % static_cast<long>(p)}));
        break;
      }
  }
  return out;
}

// ---- brute-force oracle for the closed-form hull -------------------------

namespace {

constexpr std::int64_t kP = 1000003;

std::int64_t inv(std::int64_t a) {
  std::int64_t r = 1, e = kP - 2;
  a %= kP;
  while (e) {
    if (e & 1) r = r * a % kP;
    a = a * a % kP;
    e >>= 1;
  }
  return r;
}

}  // namespace

std::vector<std::size_t> closed_form_graded_dims(std::size_t cap) {
  // arrows: a = t11(1), b = t11(2) loops at 1; c = t12(1), d = t12(2) from 1
  // to 2; e = t22 loop at 2
  const std::vector<int> src{1, 1, 1, 1, 2}, tgt{1, 1, 2, 2, 2};
  struct Word {
    int s, t;
    std::vector<int> w;
  };
  std::vector<Word> words{{1, 1, {}}, {2, 2, {}}};
  for (std::size_t d = 1; d <= cap; ++d) {
    const std::size_t n = words.size();
    for (std::size_t k = 0; k < n; ++k) {
      if (words[k].w.size() != d - 1) continue;
      for (int x = 0; x < 5; ++x)
        if (src[x] == words[k].t) {
          Word nw = words[k];
          nw.w.push_back(x);
          nw.t = tgt[x];
          words.push_back(nw);
        }
    }
  }
  std::map<std::pair<int, std::vector<int>>, std::size_t> index;
  for (std::size_t k = 0; k < words.size(); ++k) index[{words[k].s, words[k].w}] = k;

  using Term = std::pair<std::int64_t, std::vector<int>>;
  // ab - ba and f12 = ad - bc - 2de - ce^2
  const std::vector<std::pair<int, std::vector<Term>>> gens{
      {1, {{1, {0, 1}}, {-1, {1, 0}}}},
      {1, {{1, {0, 3}}, {-1, {1, 2}}, {-2, {3, 4}}, {-1, {2, 4, 4}}}}};

  std::vector<std::size_t> quotient(cap + 1);
  for (std::size_t top = 0; top <= cap; ++top) {
    std::vector<std::size_t> cols;
    std::map<std::size_t, std::size_t> col_of;
    for (std::size_t k = 0; k < words.size(); ++k)
      if (words[k].w.size() <= top) {
        col_of[k] = cols.size();
        cols.push_back(k);
      }
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& u : words)
      for (const auto& v : words)
        for (const auto& [gs, terms] : gens) {
          if (u.t != gs) continue;
          std::vector<std::int64_t> row(cols.size(), 0);
          bool any = false;
          for (const auto& [coef, body] : terms) {
            if (v.s != tgt[body.back()]) continue;
            if (u.w.size() + body.size() + v.w.size() > top) continue;
            std::vector<int> w = u.w;
            w.insert(w.end(), body.begin(), body.end());
            w.insert(w.end(), v.w.begin(), v.w.end());
            auto& slot = row[col_of.at(index.at({u.s, w}))];
            slot = ((slot + coef) % kP + kP) % kP;
            any = true;
          }
          if (any) rows.push_back(std::move(row));
        }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols.size() && rank < rows.size(); ++c) {
      std::size_t piv = rank;
      while (piv < rows.size() && rows[piv][c] == 0) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[piv], rows[rank]);
      const std::int64_t iv = inv(rows[rank][c]);
      for (auto& x : rows[rank]) x = x * iv % kP;
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (r != rank && rows[r][c] != 0) {
          const std::int64_t m = rows[r][c];
          for (std::size_t k = c; k < cols.size(); ++k) rows[r][k] = ((rows[r][k] - m * rows[rank][k]) % kP + kP) % kP;
        }
      ++rank;
    }
    quotient[top] = cols.size() - rank;
  }
  std::vector<std::size_t> graded(cap + 1);
  for (std::size_t d = 0; d <= cap; ++d) graded[d] = quotient[d] - (d ? quotient[d - 1] : 0);
  return graded;
}

}  // namespace fx

namespace fx {

Instance worked_example(std::size_t cap) {
  const Field f = rational();
  MatricPresentation p;
  p.quiver.points = 2;
  p.quiver.arrows = {{"x", 0, 0}, {"y", 0, 0}, {"u", 0, 1}, {"v", 0, 1}, {"z", 1, 1}};
  p.relations = {"y*u - x*v + 2*v*z + u*z^2", "x*y - y*x"};
  p.degree_cap = cap;
  const PresentedAlgebra pa(f, p);
  const Matrix one = scalar1(f, 1), zero = scalar1(f, 0);
  const std::vector<Matrix> arrows(5, zero);
  return {"worked-example", pa.algebra(),
          {pa.module("M1", 1, {one, zero}, arrows), pa.module("M2", 1, {zero, one}, arrows)}};
}

}  // namespace fx
