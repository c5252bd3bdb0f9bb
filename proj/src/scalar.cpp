#include "ncdef/scalar.hpp"

#include <ostream>
#include <stdexcept>

namespace ncdef {

namespace {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t reduce_mpz(const mpz_class& z, std::uint64_t p) {
  mpz_class m = z % static_cast<unsigned long>(p);
  if (m < 0) m += static_cast<unsigned long>(p);
  return m.get_ui();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  // p prime: a^(p-2)
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

}  // namespace

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (1ULL << 31) || !is_prime_u64(p))
    throw std::invalid_argument("field modulus " + std::to_string(p) + " is not a supported prime");
  FieldSpec f;
  f.kind_ = Kind::prime;
  f.p_ = p;
  return f;
}

std::string FieldSpec::describe() const {
  return is_prime() ? "GF(" + std::to_string(p_) + ")" : "Q";
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long v) const {
  if (spec.is_prime()) {
    return Scalar::residue(reduce_mpz(mpz_class(v), spec.characteristic()), spec.characteristic());
  }
  return Scalar(v);
}

Scalar Field::from_rational(const mpq_class& q) const {
  if (!spec.is_prime()) return Scalar(q);
  const auto p = spec.characteristic();
  const auto num = reduce_mpz(q.get_num(), p);
  const auto den = reduce_mpz(q.get_den(), p);
  if (den == 0) throw std::invalid_argument("denominator vanishes in " + spec.describe());
  return Scalar::residue(num * inv_mod(den, p) % p, p);
}

Scalar Field::parse(std::string_view text) const {
  std::string s(text);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0)
    throw std::invalid_argument("cannot parse scalar '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  q.canonicalize();
  return from_rational(q);
}

Scalar Scalar::residue(std::uint64_t r, std::uint64_t p) {
  Scalar s;
  s.p_ = p;
  s.r_ = r % p;
  return s;
}

void Scalar::bind(std::uint64_t p) {
  if (p_ == p || p == 0) return;
  if (p_ != 0) throw std::logic_error("mixing scalars from different prime fields");
  const auto num = reduce_mpz(q_.get_num(), p);
  const auto den = reduce_mpz(q_.get_den(), p);
  if (den == 0) throw std::domain_error("rational with denominator divisible by the characteristic");
  r_ = num * inv_mod(den, p) % p;
  p_ = p;
  q_ = 0;
}

mpq_class Scalar::to_rational() const {
  if (p_) return mpq_class(static_cast<unsigned long>(r_));
  return q_;
}

std::string Scalar::str() const {
  if (p_) {
    const auto half = p_ / 2;
    if (r_ > half) return "-" + std::to_string(p_ - r_);
    return std::to_string(r_);
  }
  return q_.get_str();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (p_) return residue(inv_mod(r_, p_), p_);
  return Scalar(mpq_class(1) / q_);
}

Scalar Scalar::operator-() const {
  if (p_) return residue(r_ == 0 ? 0 : p_ - r_, p_);
  return Scalar(mpq_class(-q_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.p_ != p_) {
    if (p_ == 0) {
      bind(o.p_);
    } else {
      Scalar t = o;
      t.bind(p_);
      return *this += t;
    }
  }
  if (p_) {
    r_ += o.r_;
    if (r_ >= p_) r_ -= p_;
  } else {
    q_ += o.q_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (o.p_ != p_) {
    if (p_ == 0) {
      bind(o.p_);
    } else {
      Scalar t = o;
      t.bind(p_);
      return *this *= t;
    }
  }
  if (p_) {
    r_ = r_ * o.r_ % p_;
  } else {
    q_ *= o.q_;
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ == b.p_) return a.p_ ? a.r_ == b.r_ : a.q_ == b.q_;
  Scalar x = a, y = b;
  const auto p = a.p_ ? a.p_ : b.p_;
  x.bind(p);
  y.bind(p);
  return x.r_ == y.r_;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace ncdef
