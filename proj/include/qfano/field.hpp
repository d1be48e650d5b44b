#ifndef QFANO_FIELD_HPP
#define QFANO_FIELD_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "qfano/errors.hpp"

namespace qfano {

// Coefficient field descriptor: the rationals, or a prime field F_p with a
// word-size prime p.  Word-size means p < 2^31 so products fit in uint64_t.
class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field prime(std::uint64_t p);

  bool is_rationals() const { return p_ == 0; }
  bool is_prime_field() const { return p_ != 0; }
  // 0 for the rationals, p for F_p.
  std::uint64_t characteristic() const { return p_; }

  std::string to_string() const;          // "QQ" or "Fp:<p>"
  static Field from_string(const std::string& s);

  bool operator==(const Field&) const = default;

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

// An element of a Field.  Rational values are exact (GMP); prime-field values
// are canonical residues in [0, p).
class FieldElem {
 public:
  FieldElem() : field_(Field::rationals()), v_(mpq_class(0)) {}

  static FieldElem zero(const Field& f);
  static FieldElem one(const Field& f);
  static FieldElem from_int(const Field& f, long n);
  static FieldElem from_mpq(const Field& f, const mpq_class& q);
  // Parses "123" or "-4/7"; reduces into F_p when applicable.
  static FieldElem from_string(const Field& f, const std::string& s);
  static FieldElem residue(const Field& f, std::uint64_t r);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  FieldElem operator-() const;
  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;  // throws on zero divisor
  FieldElem inverse() const;
  FieldElem pow(std::uint64_t e) const;

  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  // Only valid for the matching field kind.
  const mpq_class& rational() const;
  std::uint64_t residue() const;

  // Reduce a rational value into F_p; throws if p divides the denominator.
  FieldElem reduce_mod(const Field& fp) const;

  std::string to_string() const;

 private:
  FieldElem(const Field& f, mpq_class q) : field_(f), v_(std::move(q)) {}
  FieldElem(const Field& f, std::uint64_t r) : field_(f), v_(r) {}
  void check_same(const FieldElem& o) const;

  Field field_;
  std::variant<mpq_class, std::uint64_t> v_;
};

// Deterministic Miller-Rabin, valid for all inputs < 2^64.
bool is_prime_u64(std::uint64_t n);

// Uniform integer in [0, n) by rejection on raw engine output.  We avoid
// std::uniform_int_distribution because its algorithm is
// implementation-defined and reports must be reproducible byte-for-byte.
std::uint64_t uniform_u64(std::mt19937_64& rng, std::uint64_t n);

// Random prime in [lo, hi), uniform over the primes hit by rejection.
std::uint64_t random_prime(std::mt19937_64& rng, std::uint64_t lo,
                           std::uint64_t hi);

// Square root in F_p (Tonelli-Shanks); nullopt when a is a non-residue.
std::optional<FieldElem> sqrt_mod(const FieldElem& a);

}  // namespace qfano

#endif
