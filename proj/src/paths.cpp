#include "ncdef/paths.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "ncdef/errors.hpp"

namespace ncdef {

std::optional<std::size_t> Quiver::arrow_index(std::string_view name) const {
  for (std::size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return i;
  return std::nullopt;
}

PathTable::PathTable(Quiver quiver, std::size_t max_degree) : quiver_(std::move(quiver)) {
  degree_start_.push_back(0);
  for (std::size_t p = 0; p < quiver_.points; ++p) {
    lookup_[{p, {}}] = paths_.size();
    paths_.push_back(Path{p, p, {}});
  }
  degree_start_.push_back(paths_.size());
  max_degree_ = 0;
  extend_to(max_degree);
}

void PathTable::extend_to(std::size_t max_degree) {
  while (max_degree_ < max_degree) {
    const std::size_t d = max_degree_ + 1;
    if (d == 1) {
      for (std::size_t a = 0; a < quiver_.arrows.size(); ++a) {
        Path p{quiver_.arrows[a].source, quiver_.arrows[a].target, {a}};
        lookup_[{p.source, p.arrows}] = paths_.size();
        paths_.push_back(std::move(p));
      }
    } else {
      const std::size_t b = degree_start_[d - 1], e = degree_start_[d];
      for (std::size_t idx = b; idx < e; ++idx) {
        const Path prefix = paths_[idx];  // copy: paths_ grows below
        for (std::size_t a = 0; a < quiver_.arrows.size(); ++a) {
          if (quiver_.arrows[a].source != prefix.target) continue;
          Path p{prefix.source, quiver_.arrows[a].target, prefix.arrows};
          p.arrows.push_back(a);
          lookup_[{p.source, p.arrows}] = paths_.size();
          paths_.push_back(std::move(p));
        }
      }
    }
    degree_start_.push_back(paths_.size());
    max_degree_ = d;
  }
}

std::optional<std::size_t> PathTable::index(const Path& p) const {
  auto it = lookup_.find({p.source, p.arrows});
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> PathTable::concat(std::size_t a, std::size_t b) const {
  const Path& pa = paths_[a];
  const Path& pb = paths_[b];
  if (pa.target != pb.source) return std::nullopt;
  if (pa.degree() + pb.degree() > max_degree_) return std::nullopt;
  if (pa.degree() == 0) return b;
  if (pb.degree() == 0) return a;
  Path p{pa.source, pb.target, pa.arrows};
  p.arrows.insert(p.arrows.end(), pb.arrows.begin(), pb.arrows.end());
  return index(p);
}

std::string PathTable::render(std::size_t idx) const {
  const Path& p = paths_[idx];
  if (p.arrows.empty()) return "e" + std::to_string(p.source + 1);
  std::string out;
  for (std::size_t i = 0; i < p.arrows.size();) {
    std::size_t j = i;
    while (j < p.arrows.size() && p.arrows[j] == p.arrows[i]) ++j;
    if (!out.empty()) out += '*';
    out += quiver_.arrows[p.arrows[i]].name;
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

void poly_add(Poly& p, std::size_t path, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = p.emplace(path, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

Vector poly_to_vector(const Poly& p, std::size_t length, const Field& f) {
  Vector v = zero_vector(length, f);
  for (const auto& [idx, c] : p) {
    if (idx >= length) throw std::out_of_range("poly term outside the truncated path space");
    v[idx] = c;
  }
  return v;
}

Poly vector_to_poly(std::span<const Scalar> v) {
  Poly p;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) p.emplace(i, v[i]);
  return p;
}

std::size_t poly_min_degree(const Poly& p, const PathTable& t) {
  if (p.empty()) throw std::invalid_argument("degree of the zero polynomial");
  return t.path(p.begin()->first).degree();
}

std::string render_poly(const Poly& p, const PathTable& t) {
  if (p.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [idx, c] : p) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs.erase(0, 1);
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    const std::string word = t.render(idx);
    if (cs == "1") {
      out += word;
    } else {
      out += cs + "*" + word;
    }
  }
  return out;
}

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  return out;
}

bool numeric(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != '/') return false;
  return true;
}

}  // namespace

Poly parse_poly(std::string_view text, PathTable& table, const Field& f) {
  const std::string s = strip(text);
  if (s.empty()) throw ScenarioError("BadRelation", "empty relation");
  const Quiver& q = table.quiver();

  // split into signed terms
  std::vector<std::pair<bool, std::string>> terms;
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  std::string cur;
  for (; i < s.size(); ++i) {
    const char ch = s[i];
    if ((ch == '+' || ch == '-') && !cur.empty() && cur.back() != '^' && cur.back() != '*') {
      terms.emplace_back(neg, cur);
      neg = ch == '-';
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (cur.empty()) throw ScenarioError("BadRelation", "dangling sign in '" + s + "'");
  terms.emplace_back(neg, cur);

  Poly out;
  std::optional<std::size_t> src, tgt;
  for (const auto& [negative, term] : terms) {
    Scalar coeff = f.one();
    std::vector<std::size_t> arrows;
    std::optional<std::size_t> idem;
    std::stringstream ss(term);
    std::string factor;
    bool first = true;
    while (std::getline(ss, factor, '*')) {
      if (factor.empty()) throw ScenarioError("BadRelation", "empty factor in '" + term + "'");
      if (first && numeric(factor)) {
        coeff = f.parse(factor);
        first = false;
        continue;
      }
      first = false;
      std::size_t power = 1;
      std::string name = factor;
      if (auto caret = factor.find('^'); caret != std::string::npos) {
        name = factor.substr(0, caret);
        const std::string pw = factor.substr(caret + 1);
        if (pw.empty() || !numeric(pw) || pw.find('/') != std::string::npos)
          throw ScenarioError("BadRelation", "bad exponent in '" + factor + "'");
        power = std::stoul(pw);
      }
      auto a = q.arrow_index(name);
      if (!a) {
        if (name.size() > 1 && name[0] == 'e' && numeric(name.substr(1))) {
          const auto pt = std::stoul(name.substr(1));
          if (pt == 0 || pt > q.points) throw ScenarioError("BadRelation", "unknown point " + name);
          if (idem && *idem != pt - 1) {
            coeff = f.zero();
          }
          idem = pt - 1;
          continue;
        }
        throw ScenarioError("BadRelation", "unknown generator '" + name + "'");
      }
      for (std::size_t k = 0; k < power; ++k) arrows.push_back(*a);
    }
    if (arrows.empty() && !idem)
      throw ScenarioError("BadRelation", "constant term '" + term + "' in relation");
    Path p;
    if (arrows.empty()) {
      p = Path{*idem, *idem, {}};
    } else {
      p.source = q.arrows[arrows.front()].source;
      p.target = q.arrows[arrows.back()].target;
      for (std::size_t k = 1; k < arrows.size(); ++k)
        if (q.arrows[arrows[k - 1]].target != q.arrows[arrows[k]].source)
          throw ScenarioError("BadRelation", "term '" + term + "' is not a path");
      if (idem && *idem != p.source && *idem != p.target) coeff = f.zero();
      p.arrows = arrows;
    }
    if (src && (*src != p.source || *tgt != p.target))
      throw ScenarioError("BadRelation", "relation '" + s + "' mixes endpoints");
    src = p.source;
    tgt = p.target;
    table.extend_to(std::max(table.max_degree(), p.degree()));
    const auto idx = table.index(p);
    if (negative) coeff = -coeff;
    poly_add(out, *idx, coeff);
  }
  return out;
}

Subspace ideal_span(const PathTable& table, const std::vector<Poly>& gens, const Field& f,
                    bool proper_multiples_only) {
  const std::size_t n = table.size();
  std::vector<Vector> rows;
  for (const auto& g : gens) {
    if (g.empty()) continue;
    const std::size_t gdeg = poly_min_degree(g, table);
    if (gdeg > table.max_degree()) continue;
    const Path& any = table.path(g.begin()->first);
    const std::size_t room = table.max_degree() - gdeg;
    for (std::size_t u = 0; u < table.degree_end(room); ++u) {
      const Path& pu = table.path(u);
      if (pu.target != any.source) continue;
      const std::size_t left = room - pu.degree();
      for (std::size_t v = 0; v < table.degree_end(left); ++v) {
        const Path& pv = table.path(v);
        if (pv.source != any.target) continue;
        if (proper_multiples_only && pu.degree() + pv.degree() == 0) continue;
        Vector row = zero_vector(n, f);
        bool any_term = false;
        for (const auto& [w, c] : g) {
          auto uw = table.concat(u, w);
          if (!uw) continue;
          auto uwv = table.concat(*uw, v);
          if (!uwv) continue;
          row[*uwv] += c;
          any_term = true;
        }
        if (any_term && !is_zero(row)) rows.push_back(std::move(row));
      }
    }
  }
  if (rows.empty()) return Subspace(n, f);
  return Subspace::span(rows, n, f);
}

std::vector<std::size_t> normal_words(const Subspace& ideal) {
  std::vector<bool> piv(ideal.ambient_dim(), false);
  for (auto p : ideal.pivots()) piv[p] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < piv.size(); ++i)
    if (!piv[i]) out.push_back(i);
  return out;
}

}  // namespace ncdef
