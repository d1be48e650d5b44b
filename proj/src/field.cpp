#include "qfano/field.hpp"

#include <array>

namespace qfano {
namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a == 0) throw precondition_error("division by zero in F_p");
  // p is prime, so Fermat works and avoids signed extended-gcd bookkeeping.
  return powmod(a, p - 2, p);
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p < 2 || p >= (1ull << 31) || !is_prime_u64(p))
    throw precondition_error("field modulus must be a prime below 2^31: " +
                             std::to_string(p));
  return Field(p);
}

std::string Field::to_string() const {
  return is_rationals() ? "QQ" : "Fp:" + std::to_string(p_);
}

Field Field::from_string(const std::string& s) {
  if (s == "QQ") return rationals();
  if (s.rfind("Fp:", 0) == 0) {
    try {
      std::size_t pos = 0;
      unsigned long long p = std::stoull(s.substr(3), &pos);
      if (pos == s.size() - 3) return prime(p);
    } catch (const std::exception&) {
    }
  }
  throw input_error("unrecognized field descriptor: \"" + s +
                    "\" (expected \"QQ\" or \"Fp:<prime>\")");
}

FieldElem FieldElem::zero(const Field& f) {
  return f.is_rationals() ? FieldElem(f, mpq_class(0))
                          : FieldElem(f, std::uint64_t{0});
}

FieldElem FieldElem::one(const Field& f) {
  return f.is_rationals() ? FieldElem(f, mpq_class(1))
                          : FieldElem(f, std::uint64_t{1});
}

FieldElem FieldElem::from_int(const Field& f, long n) {
  if (f.is_rationals()) return FieldElem(f, mpq_class(n));
  std::uint64_t p = f.characteristic();
  long r = n % static_cast<long>(p);
  if (r < 0) r += static_cast<long>(p);
  return FieldElem(f, static_cast<std::uint64_t>(r));
}

FieldElem FieldElem::from_mpq(const Field& f, const mpq_class& q) {
  if (f.is_rationals()) {
    mpq_class c = q;
    c.canonicalize();
    return FieldElem(f, c);
  }
  std::uint64_t p = f.characteristic();
  mpz_class num = q.get_num() % p;
  mpz_class den = q.get_den() % p;
  if (den == 0)
    throw precondition_error("denominator divisible by the characteristic " +
                             std::to_string(p));
  std::uint64_t n = num.get_ui();
  if (q.get_num() < 0 && n != 0) n = p - n;
  return FieldElem(f, mulmod(n, invmod(den.get_ui(), p), p));
}

FieldElem FieldElem::from_string(const Field& f, const std::string& s) {
  try {
    mpq_class q(s);
    q.canonicalize();
    if (q.get_den() == 0) throw precondition_error("zero denominator: " + s);
    return from_mpq(f, q);
  } catch (const std::invalid_argument&) {
    throw input_error("not a rational literal: \"" + s + "\"");
  }
}

FieldElem FieldElem::residue(const Field& f, std::uint64_t r) {
  if (!f.is_prime_field())
    throw precondition_error("residue constructor needs a prime field");
  return FieldElem(f, r % f.characteristic());
}

bool FieldElem::is_zero() const {
  if (field_.is_rationals()) return std::get<mpq_class>(v_) == 0;
  return std::get<std::uint64_t>(v_) == 0;
}

bool FieldElem::is_one() const {
  if (field_.is_rationals()) return std::get<mpq_class>(v_) == 1;
  return std::get<std::uint64_t>(v_) == 1;
}

void FieldElem::check_same(const FieldElem& o) const {
  if (!(field_ == o.field_))
    throw ring_mismatch("field elements from different fields: " +
                        field_.to_string() + " vs " + o.field_.to_string());
}

FieldElem FieldElem::operator-() const {
  if (field_.is_rationals())
    return FieldElem(field_, mpq_class(-std::get<mpq_class>(v_)));
  std::uint64_t r = std::get<std::uint64_t>(v_);
  return FieldElem(field_, r == 0 ? 0 : field_.characteristic() - r);
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same(o);
  if (field_.is_rationals())
    return FieldElem(field_,
                     mpq_class(std::get<mpq_class>(v_) + std::get<mpq_class>(o.v_)));
  std::uint64_t p = field_.characteristic();
  std::uint64_t s = std::get<std::uint64_t>(v_) + std::get<std::uint64_t>(o.v_);
  if (s >= p) s -= p;
  return FieldElem(field_, s);
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  return *this + (-o);
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same(o);
  if (field_.is_rationals())
    return FieldElem(field_,
                     mpq_class(std::get<mpq_class>(v_) * std::get<mpq_class>(o.v_)));
  return FieldElem(field_, mulmod(std::get<std::uint64_t>(v_),
                                  std::get<std::uint64_t>(o.v_),
                                  field_.characteristic()));
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
  return *this * o.inverse();
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw precondition_error("inverse of zero");
  if (field_.is_rationals())
    return FieldElem(field_, mpq_class(1 / std::get<mpq_class>(v_)));
  return FieldElem(field_, invmod(std::get<std::uint64_t>(v_),
                                  field_.characteristic()));
}

FieldElem FieldElem::pow(std::uint64_t e) const {
  FieldElem r = one(field_);
  FieldElem b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool FieldElem::operator==(const FieldElem& o) const {
  if (!(field_ == o.field_)) return false;
  if (field_.is_rationals())
    return std::get<mpq_class>(v_) == std::get<mpq_class>(o.v_);
  return std::get<std::uint64_t>(v_) == std::get<std::uint64_t>(o.v_);
}

const mpq_class& FieldElem::rational() const {
  if (!field_.is_rationals())
    throw precondition_error("rational() on a prime-field element");
  return std::get<mpq_class>(v_);
}

std::uint64_t FieldElem::residue() const {
  if (!field_.is_prime_field())
    throw precondition_error("residue() on a rational element");
  return std::get<std::uint64_t>(v_);
}

FieldElem FieldElem::reduce_mod(const Field& fp) const {
  if (!field_.is_rationals())
    throw precondition_error("reduce_mod expects a rational element");
  return from_mpq(fp, std::get<mpq_class>(v_));
}

std::string FieldElem::to_string() const {
  if (field_.is_rationals()) return std::get<mpq_class>(v_).get_str();
  return std::to_string(std::get<std::uint64_t>(v_));
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses decide primality for every n < 3.3 * 10^24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t uniform_u64(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw precondition_error("uniform_u64 on empty range");
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

std::uint64_t random_prime(std::mt19937_64& rng, std::uint64_t lo,
                           std::uint64_t hi) {
  if (lo >= hi) throw precondition_error("random_prime: empty range");
  for (int tries = 0; tries < 100000; ++tries) {
    std::uint64_t x = lo + uniform_u64(rng, hi - lo);
    if (x > 2) x |= 1;
    if (x >= lo && x < hi && is_prime_u64(x)) return x;
  }
  throw error("random_prime: no prime found in range");
}

std::optional<FieldElem> sqrt_mod(const FieldElem& a) {
  const Field& f = a.field();
  if (!f.is_prime_field())
    throw precondition_error("sqrt_mod needs a prime-field element");
  std::uint64_t p = f.characteristic();
  std::uint64_t n = a.residue();
  if (n == 0) return FieldElem::zero(f);
  if (p == 2) return FieldElem::residue(f, n);
  if (powmod(n, (p - 1) / 2, p) != 1) return std::nullopt;  // non-residue
  if (p % 4 == 3)
    return FieldElem::residue(f, powmod(n, (p + 1) / 4, p));
  // Tonelli-Shanks for p = 1 mod 4.
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s;
  std::uint64_t c = powmod(z, q, p);
  std::uint64_t t = powmod(n, q, p);
  std::uint64_t r = powmod(n, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
      if (i == m) return std::nullopt;  // unreachable for residues
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return FieldElem::residue(f, r);
}

}  // namespace qfano
