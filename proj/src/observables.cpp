#include "ncdef/observables.hpp"

#include <map>
#include <numeric>

#include "ncdef/errors.hpp"

namespace ncdef {

std::size_t ObservablesAlg::block_dim(std::size_t i, std::size_t j) const {
  std::size_t c = 0;
  for (const auto& l : labels)
    if (l.src == i && l.tgt == j) ++c;
  return c;
}

ObservablesAlg assemble(const ProCouple& pro, const std::vector<std::size_t>& module_dims, const Field& f) {
  const PathTable t = pro.table();
  std::vector<Poly> rels;
  for (const auto& r : pro.level.relations) rels.push_back(r.poly);
  const Subspace ideal = ideal_span(t, rels, f);

  ObservablesAlg obs;
  obs.dims = module_dims;
  obs.truncated = !pro.stabilized;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> index;
  for (auto w : pro.level.normal) {
    const Path& p = t.path(w);
    for (std::size_t a = 0; a < module_dims[p.source]; ++a)
      for (std::size_t b = 0; b < module_dims[p.target]; ++b) {
        index[{w, a, b}] = obs.labels.size();
        obs.labels.push_back(Label{w, p.source, p.target, a, b, p.degree()});
      }
  }
  const std::size_t n = obs.labels.size();
  std::vector<std::string> names;
  for (const auto& l : obs.labels)
    names.push_back(t.render(l.word) + "@E" + std::to_string(l.p + 1) + std::to_string(l.q + 1));

  std::map<std::pair<std::size_t, std::size_t>, Poly> nf;
  auto word_product = [&](std::size_t u, std::size_t v) -> const Poly& {
    auto key = std::make_pair(u, v);
    auto it = nf.find(key);
    if (it != nf.end()) return it->second;
    Poly out;
    if (auto uv = t.concat(u, v)) {
      Vector e = zero_vector(t.size(), f);
      e[*uv] = f.one();
      out = vector_to_poly(ideal.residual(e));
    }
    return nf.emplace(key, std::move(out)).first->second;
  };

  std::vector<SparseVec> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const Label& lx = obs.labels[x];
      const Label& ly = obs.labels[y];
      if (lx.tgt != ly.src || lx.q != ly.p) continue;
      for (const auto& [w, c] : word_product(lx.word, ly.word)) {
        auto it = index.find({w, lx.p, ly.q});
        if (it == index.end()) throw InvariantBreach("NotNormal", "reduced word is not a normal word");
        table[x * n + y].emplace_back(it->second, c);
      }
    }
  Vector unit = zero_vector(n, f);
  for (std::size_t i = 0; i < module_dims.size(); ++i)
    for (std::size_t a = 0; a < module_dims[i]; ++a) unit[index.at({i, a, a})] = f.one();
  obs.algebra = Algebra(f, std::move(names), std::move(unit), std::move(table));

  std::vector<std::size_t> offset;
  std::size_t cols = 0;
  for (auto d : module_dims) {
    offset.push_back(cols);
    cols += d * d;
  }
  obs.projection = Matrix(n, cols, f);
  for (std::size_t x = 0; x < n; ++x) {
    const Label& l = obs.labels[x];
    if (l.degree == 0) obs.projection(x, offset[l.src] + l.p * module_dims[l.src] + l.q) = f.one();
  }
  return obs;
}

VersalMorphism versal_morphism(const Complex& cx, const ProCouple& pro, const ObservablesAlg& obs) {
  const Algebra& a = cx.algebra();
  if (a.support_cap())
    throw HypothesisViolation("TruncatedAlgebra", "the versal morphism needs a finite-dimensional algebra");
  const Field& f = a.field();
  const std::size_t n = obs.labels.size();
  VersalMorphism vm;
  vm.eta = Matrix(a.dim(), n, f);
  for (std::size_t b = 0; b < a.dim(); ++b)
    for (std::size_t x = 0; x < n; ++x) {
      const Label& l = obs.labels[x];
      vm.eta(b, x) = pro.level.action.at(l.word).values[b](l.p, l.q);
    }
  for (std::size_t x = 0; x < a.dim(); ++x)
    for (std::size_t y = 0; y < a.dim(); ++y) {
      Vector rhs = zero_vector(n, f);
      for (const auto& [k, c] : a.product(x, y)) axpy(rhs, c, vm.eta.row(k));
      if (obs.algebra.multiply(vm.eta.row(x), vm.eta.row(y)) != rhs)
        throw InvariantBreach("NotAHomomorphism",
                              "eta(" + a.name(x) + ") eta(" + a.name(y) + ") differs from eta of the product");
    }
  // eta followed by the projection recovers rho
  const Matrix proj = vm.eta * obs.projection;
  for (std::size_t b = 0; b < a.dim(); ++b) {
    Vector expect;
    for (std::size_t i = 0; i < cx.size(); ++i) {
      const auto& d = cx.rho(i, b).data();
      expect.insert(expect.end(), d.begin(), d.end());
    }
    if (proj.row_vector(b) != expect)
      throw InvariantBreach("ProjectionMismatch", "eta does not lift rho on " + a.name(b));
  }
  vm.kernel = kernel(vm.eta.transpose());
  vm.image = a.dim() ? Subspace::span(vm.eta) : Subspace(n, f);
  return vm;
}

namespace {

std::string full_descriptor(std::size_t i, std::size_t j, std::size_t words, std::size_t di, std::size_t dj) {
  const std::string ij = std::to_string(i + 1) + std::to_string(j + 1);
  if (i == j && words == 1) return di == 1 ? "k" : "M" + std::to_string(di) + "(k)";
  std::string s = "H" + ij;
  if (di * dj > 1) s += "⊗Hom(M" + std::to_string(i + 1) + ",M" + std::to_string(j + 1) + ")";
  return s;
}

}  // namespace

StandardForm standard_form(const ProCouple& pro, const ObservablesAlg& obs, const VersalMorphism& eta) {
  const Field& f = obs.algebra.field();
  const std::size_t r = obs.dims.size();
  StandardForm sf;
  std::vector<std::size_t> field_blocks;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<std::size_t> cols;
      for (std::size_t x = 0; x < obs.labels.size(); ++x)
        if (obs.labels[x].src == i && obs.labels[x].tgt == j) cols.push_back(x);
      BlockForm bf;
      bf.i = i;
      bf.j = j;
      bf.full_dim = cols.size();
      std::vector<Vector> rows;
      for (std::size_t k = 0; k < eta.image.dim(); ++k) {
        Vector v;
        for (auto c : cols) v.push_back(eta.image.basis()(k, c));
        if (!is_zero(v)) rows.push_back(std::move(v));
      }
      Subspace s = rows.empty() ? Subspace(cols.size(), f) : Subspace::span(rows, cols.size(), f);
      bf.dim = s.dim();
      bf.basis = s.basis();
      const std::size_t words = pro.dim_block(i, j);
      const std::size_t di = obs.dims[i], dj = obs.dims[j];
      if (bf.dim == 0) {
        bf.descriptor = "0";
      } else if (bf.dim == bf.full_dim) {
        bf.descriptor = full_descriptor(i, j, words, di, dj);
      } else {
        bf.descriptor = "sub(" + std::to_string(bf.dim) + "/" + std::to_string(bf.full_dim) + ")";
        if (i == j && words == 1) {
          // image inside End_k(M_i): a commutative algebra equal to its own
          // centralizer is End_A(M_i), a field since M_i is simple
          ModuleRep m{"", di, {}};
          for (std::size_t k = 0; k < s.dim(); ++k) m.action.push_back(unflatten(s.basis().row(k), di, di, f));
          bool commutative = true;
          for (const auto& x : m.action)
            for (const auto& y : m.action)
              if (x * y != y * x) commutative = false;
          if (commutative && commutant(m, f).dim() == s.dim()) {
            bf.descriptor = "K";
            field_blocks.push_back(sf.blocks.size());
          }
        }
      }
      sf.blocks.push_back(std::move(bf));
    }
  if (field_blocks.size() > 1)
    for (auto b : field_blocks) sf.blocks[b].descriptor = "K" + std::to_string(sf.blocks[b].i + 1);

  bool diagonal = true, all_k = true;
  for (const auto& b : sf.blocks) {
    if (b.i != b.j && b.dim != 0) diagonal = false;
    if (b.i == b.j && b.descriptor != "k") all_k = false;
  }
  auto at = [&](std::size_t i, std::size_t j) -> const std::string& { return sf.blocks[i * r + j].descriptor; };
  if (r == 1) {
    sf.summary = at(0, 0);
  } else if (diagonal && all_k) {
    sf.summary = "k^" + std::to_string(r);
  } else if (diagonal) {
    sf.summary = "diag(";
    for (std::size_t i = 0; i < r; ++i) sf.summary += (i ? ", " : "") + at(i, i);
    sf.summary += ")";
  } else {
    sf.summary = "[";
    for (std::size_t i = 0; i < r; ++i) {
      sf.summary += i ? ", [" : "[";
      for (std::size_t j = 0; j < r; ++j) sf.summary += (j ? ", " : "") + at(i, j);
      sf.summary += "]";
    }
    sf.summary += "]";
  }
  return sf;
}

std::string BurnsideReport::verdict() const {
  if (eta_injective && eta_surjective) return "isomorphism";
  if (eta_injective) return "injective";
  return "not injective";
}

BurnsideReport burnside_report(const Complex& cx, const ProCouple& pro) {
  const Algebra& a = cx.algebra();
  const Field& f = a.field();
  BurnsideReport rep;
  std::vector<std::size_t> dims;
  std::size_t ends = 0;
  for (const auto& m : cx.family()) {
    auto cert = simplicity_certificate(a, m);
    rep.end_dims.push_back(cert.end_dim);
    rep.certificates.push_back(to_string(cert.verdict));
    dims.push_back(m.dim);
    ends += m.dim * m.dim;
  }
  const ObservablesAlg obs = assemble(pro, dims, f);
  const VersalMorphism vm = versal_morphism(cx, pro, obs);
  rep.stabilized = pro.stabilized;
  rep.dim_A = a.dim();
  rep.dim_O = obs.labels.size();
  rep.ker_dim = vm.kernel.dim();
  rep.im_dim = vm.image.dim();
  rep.eta_injective = rep.ker_dim == 0;
  rep.eta_surjective = rep.im_dim == rep.dim_O;

  const Subspace rad = radical(a, cx.family());
  rep.rad_dim = rad.dim();
  Matrix rho(a.dim(), ends, f);
  for (std::size_t b = 0; b < a.dim(); ++b) {
    std::size_t off = 0;
    for (std::size_t i = 0; i < cx.size(); ++i) {
      const auto& d = cx.rho(i, b).data();
      for (std::size_t k = 0; k < d.size(); ++k) rho(b, off + k) = d[k];
      off += d.size();
    }
  }
  rep.classical_surjective = rank(rho) == ends;
  rep.gr0_iso = rep.classical_surjective && a.dim() - rad.dim() == ends;

  std::vector<Vector> sq;
  for (std::size_t x = 0; x < rad.dim(); ++x)
    for (std::size_t y = 0; y < rad.dim(); ++y) {
      Vector p = a.multiply(rad.basis().row(x), rad.basis().row(y));
      if (!is_zero(p)) sq.push_back(std::move(p));
    }
  const std::size_t sq_dim = sq.empty() ? 0 : Subspace::span(sq, a.dim(), f).dim();
  rep.gr1_A = rad.dim() - sq_dim;
  std::vector<std::size_t> deg1;
  for (std::size_t x = 0; x < obs.labels.size(); ++x)
    if (obs.labels[x].degree == 1) deg1.push_back(x);
  rep.gr1_O = deg1.size();
  if (rad.dim() > 0 && !deg1.empty()) {
    Matrix m(rad.dim(), deg1.size(), f);
    const Matrix img = rad.basis() * vm.eta;
    for (std::size_t x = 0; x < rad.dim(); ++x)
      for (std::size_t c = 0; c < deg1.size(); ++c) m(x, c) = img(x, deg1[c]);
    rep.gr1_rank = rank(m);
  }
  rep.gr1_iso = rep.gr1_A == rep.gr1_O && rep.gr1_rank == rep.gr1_O;
  rep.standard = standard_form(pro, obs, vm);
  return rep;
}

std::vector<ModuleRep> family_over_observables(const ObservablesAlg& obs) {
  const Field& f = obs.algebra.field();
  std::vector<ModuleRep> out;
  for (std::size_t i = 0; i < obs.dims.size(); ++i) {
    ModuleRep m{"M" + std::to_string(i + 1), obs.dims[i], {}};
    for (const auto& l : obs.labels) {
      Matrix x(obs.dims[i], obs.dims[i], f);
      if (l.degree == 0 && l.src == i) x(l.p, l.q) = f.one();
      m.action.push_back(std::move(x));
    }
    out.push_back(std::move(m));
  }
  return out;
}

ClosureReport closure_check(const Complex& cx, std::size_t degree_cap) {
  const Algebra& a = cx.algebra();
  std::vector<std::size_t> dims;
  for (const auto& m : cx.family()) {
    const auto cert = simplicity_certificate(a, m);
    if (cert.end_dim != 1)
      throw HypothesisViolation("HypothesisViolated", "End_A(" + m.name + ") has dimension " +
                                                          std::to_string(cert.end_dim) +
                                                          "; closure needs End_A(M_i) = k for every member");
    dims.push_back(m.dim);
  }
  ClosureReport rep;
  const ProCouple pro = run_hull(cx, degree_cap);
  rep.graded_dims_A = pro.graded_dims();
  const ObservablesAlg obs = assemble(pro, dims, a.field());
  const Algebra& b = obs.algebra;
  validate(b);
  rep.dim_B = b.dim();
  std::vector<ModuleRep> fam = family_over_observables(obs);
  for (const auto& m : fam) {
    validate_module(b, m);
    const auto cert = simplicity_certificate(b, m);
    rep.certificates.push_back(to_string(cert.verdict));
    if (cert.verdict != SimplicityCertificate::Verdict::SplitSimple)
      throw InvariantBreach("ClosureFamily", m.name + " is not split simple over O(M)");
  }
  radical(b, fam);  // the family is the complete simple family of B
  const Complex cb(b, fam, cx.conventions());
  const ProCouple pro_b = run_hull(cb, degree_cap);
  rep.graded_dims_B = pro_b.graded_dims();
  rep.stabilized = pro.stabilized && pro_b.stabilized;
  const ObservablesAlg obs_b = assemble(pro_b, dims, a.field());
  const VersalMorphism vm = versal_morphism(cb, pro_b, obs_b);
  rep.ker_dim = vm.kernel.dim();
  rep.im_dim = vm.image.dim();
  rep.eta_bijective = rep.ker_dim == 0 && rep.im_dim == obs_b.labels.size();
  return rep;
}

}  // namespace ncdef
