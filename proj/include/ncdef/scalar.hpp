#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ncdef {

/// The base field: either the rationals or a prime field GF(p).
class FieldSpec {
 public:
  enum class Kind { rational, prime };

  FieldSpec() = default;
  static FieldSpec rational() { return FieldSpec{}; }
  /// Throws std::invalid_argument unless p is prime and fits in 31 bits.
  static FieldSpec prime(std::uint64_t p);

  Kind kind() const { return kind_; }
  std::uint64_t characteristic() const { return p_; }
  bool is_prime() const { return kind_ == Kind::prime; }

  std::string describe() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  Kind kind_ = Kind::rational;
  std::uint64_t p_ = 0;
};

class Scalar;

/// Element factory bound to a field.
struct Field {
  FieldSpec spec;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long v) const;
  /// Parses "3", "-2", "3/2". Denominators must be invertible in the field.
  Scalar parse(std::string_view text) const;
  Scalar from_rational(const mpq_class& q) const;
};

/// Exact field element. Prime-field residues are stored as machine words in
/// [0, p); rationals as canonical GMP fractions. A residue and a rational
/// combine by mapping the rational into GF(p).
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  static Scalar residue(std::uint64_t r, std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return p_ ? r_ == 0 : sgn(q_) == 0; }
  bool is_one() const { return p_ ? r_ == 1 : q_ == 1; }
  /// Rational value (prime-field residues are returned as integers in [0,p)).
  mpq_class to_rational() const;
  /// Representative used in text output: prime residues are printed in the
  /// symmetric range (-p/2, p/2], rationals as "a" or "a/b".
  std::string str() const;

  Scalar inverse() const;  // throws std::domain_error on zero
  Scalar operator-() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  void bind(std::uint64_t p);

  std::uint64_t p_ = 0;
  std::uint64_t r_ = 0;
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace ncdef
