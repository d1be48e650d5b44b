#include "qfano/polynomial.hpp"

#include <algorithm>

namespace qfano {

Polynomial Polynomial::zero(RingPtr ring) {
  Polynomial p;
  p.ring_ = std::move(ring);
  return p;
}

Polynomial Polynomial::constant(RingPtr ring, const FieldElem& c) {
  Polynomial p = zero(std::move(ring));
  if (!c.is_zero()) p.terms_.push_back({Monomial(p.ring_->arity()), c});
  return p;
}

Polynomial Polynomial::constant(RingPtr ring, long n) {
  FieldElem c = FieldElem::from_int(ring->field(), n);
  return constant(std::move(ring), c);
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i) {
  if (i >= ring->arity()) throw precondition_error("variable index out of range");
  Monomial m(ring->arity());
  m[i] = 1;
  FieldElem one = FieldElem::one(ring->field());
  return monomial(std::move(ring), m, one);
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m,
                                const FieldElem& c) {
  if (m.arity() != ring->arity())
    throw precondition_error("monomial arity does not match ring");
  Polynomial p = zero(std::move(ring));
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, const std::vector<Term>& terms) {
  auto cmp = [&ring](const Monomial& a, const Monomial& b) {
    return ring->compare(a, b) > 0;  // descending
  };
  std::map<Monomial, FieldElem, decltype(cmp)> acc(cmp);
  for (const auto& t : terms) {
    if (t.mono.arity() != ring->arity())
      throw precondition_error("term arity does not match ring");
    auto it = acc.find(t.mono);
    if (it == acc.end())
      acc.emplace(t.mono, t.coeff);
    else
      it->second += t.coeff;
  }
  Polynomial p = zero(ring);
  for (auto& [m, c] : acc)
    if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

const Polynomial::Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw precondition_error("leading term of zero");
  return terms_.front();
}

std::uint64_t Polynomial::weighted_degree() const {
  if (terms_.empty()) throw precondition_error("degree of zero polynomial");
  return ring_->weighted_degree(terms_.front().mono);
}

std::uint32_t Polynomial::degree_in(std::size_t i) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[i]);
  return d;
}

FieldElem Polynomial::coefficient_of(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.mono == m) return t.coeff;
  return FieldElem::zero(ring_->field());
}

void Polynomial::assert_compatible(const Polynomial& o) const {
  if (ring_ == o.ring_) return;
  if (ring_ && o.ring_ && ring_->same_structure(*o.ring_)) return;
  throw ring_mismatch("polynomials from different rings");
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  assert_compatible(o);
  Polynomial r = zero(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = ring_->compare(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      FieldElem s = terms_[i].coeff + o.terms_[j].coeff;
      if (!s.is_zero()) r.terms_.push_back({terms_[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return *this + (-o);
}

Polynomial Polynomial::mul_term(const Monomial& m, const FieldElem& c) const {
  Polynomial r = zero(ring_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;  // multiplying by a fixed monomial preserves the ordering
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  assert_compatible(o);
  if (is_zero() || o.is_zero()) return zero(ring_);
  // Accumulate into an ordered map; operand sizes here stay small enough
  // that the simple approach beats cleverness.
  auto cmp = [this](const Monomial& a, const Monomial& b) {
    return ring_->compare(a, b) > 0;
  };
  std::map<Monomial, FieldElem, decltype(cmp)> acc(cmp);
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      Monomial m = a.mono * b.mono;
      FieldElem c = a.coeff * b.coeff;
      auto it = acc.find(m);
      if (it == acc.end())
        acc.emplace(std::move(m), std::move(c));
      else
        it->second += c;
    }
  }
  Polynomial r = zero(ring_);
  for (auto& [m, c] : acc)
    if (!c.is_zero()) r.terms_.push_back({m, c});
  return r;
}

Polynomial Polynomial::operator*(const FieldElem& c) const {
  if (c.is_zero()) return zero(ring_);
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = t.coeff * c;
  return r;
}

Polynomial Polynomial::pow(std::uint32_t e) const {
  Polynomial r = constant(ring_, 1);
  Polynomial b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (!(ring_ == o.ring_) &&
      !(ring_ && o.ring_ && ring_->same_structure(*o.ring_)))
    return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].mono != o.terms_[i].mono ||
        terms_[i].coeff != o.terms_[i].coeff)
      return false;
  }
  return true;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return *this * leading_coefficient().inverse();
}

Polynomial::Homogeneity Polynomial::homogeneity() const {
  if (terms_.empty()) return {Homogeneity::Kind::any, 0};
  std::uint64_t d = ring_->weighted_degree(terms_[0].mono);
  for (const auto& t : terms_)
    if (ring_->weighted_degree(t.mono) != d)
      return {Homogeneity::Kind::inhomogeneous, 0};
  return {Homogeneity::Kind::of_degree, d};
}

bool Polynomial::is_homogeneous() const {
  return homogeneity().kind != Homogeneity::Kind::inhomogeneous;
}

Polynomial Polynomial::derivative(std::size_t i) const {
  if (i >= ring_->arity()) throw precondition_error("derivative index out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono[i] == 0) continue;
    FieldElem k = FieldElem::from_int(ring_->field(), static_cast<long>(t.mono[i]));
    if (k.is_zero()) continue;  // exponent divisible by the characteristic
    Monomial m = t.mono;
    m[i] -= 1;
    out.push_back({std::move(m), t.coeff * k});
  }
  return from_terms(ring_, out);
}

Polynomial Polynomial::substitute(const std::map<std::string, Polynomial>& assignment,
                                  RingPtr target) const {
  for (const auto& [name, value] : assignment) {
    if (!ring_->index_of(name))
      throw precondition_error("substituted variable not in source ring: " + name);
    if (!(value.ring() == target) && !value.ring()->same_structure(*target))
      throw ring_mismatch("substitution image not in the target ring: " + name);
  }
  // Resolve source variables to their images lazily, so variables that never
  // occur in this polynomial need no counterpart in the target ring.
  std::vector<std::optional<Polynomial>> image(ring_->arity());
  auto image_of = [&](std::size_t i) -> const Polynomial& {
    if (!image[i]) {
      auto it = assignment.find(ring_->name(i));
      if (it != assignment.end()) {
        image[i] = it->second;
      } else {
        auto j = target->index_of(ring_->name(i));
        if (!j)
          throw precondition_error("variable " + ring_->name(i) +
                                   " has no image in the target ring");
        image[i] = Polynomial::variable(target, *j);
      }
    }
    return *image[i];
  };
  Polynomial acc = Polynomial::zero(target);
  std::vector<std::map<std::uint32_t, Polynomial>> powers(ring_->arity());
  auto power_of = [&](std::size_t i, std::uint32_t e) -> const Polynomial& {
    auto [it, fresh] = powers[i].try_emplace(e);
    if (fresh) it->second = image_of(i).pow(e);
    return it->second;
  };
  for (const auto& t : terms_) {
    if (!(t.coeff.field() == target->field()))
      throw ring_mismatch("substitution cannot change the coefficient field");
    Polynomial term = Polynomial::constant(target, t.coeff);
    for (std::size_t i = 0; i < ring_->arity(); ++i)
      if (t.mono[i]) term = term * power_of(i, t.mono[i]);
    acc += term;
  }
  return acc;
}

FieldElem Polynomial::eval(std::span<const FieldElem> point) const {
  if (point.size() != ring_->arity())
    throw precondition_error("evaluation point has wrong arity");
  FieldElem acc = FieldElem::zero(ring_->field());
  for (const auto& t : terms_) {
    FieldElem v = t.coeff;
    for (std::size_t i = 0; i < ring_->arity(); ++i)
      if (t.mono[i]) v = v * point[i].pow(t.mono[i]);
    acc += v;
  }
  return acc;
}

Polynomial Polynomial::reduce_mod(RingPtr fp_ring) const {
  if (!ring_->field().is_rationals())
    throw precondition_error("reduce_mod expects a rational polynomial");
  if (!(fp_ring->names() == ring_->names() && fp_ring->weights() == ring_->weights()))
    throw ring_mismatch("reduce_mod target must share names and weights");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    FieldElem c = t.coeff.reduce_mod(fp_ring->field());
    if (!c.is_zero()) out.push_back({t.mono, c});
  }
  return from_terms(fp_ring, out);
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = t.coeff.to_string();
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c = c.substr(1);
    if (first) {
      if (negative) s += "-";
      first = false;
    } else {
      s += negative ? " - " : " + ";
    }
    std::string m = ring_->monomial_string(t.mono);
    if (m == "1")
      s += c;
    else if (c == "1")
      s += m;
    else
      s += c + "*" + m;
  }
  return s;
}

std::vector<Monomial> monomials_of_weighted_degree(
    const WeightedRing& ring, const std::vector<std::size_t>& vars,
    std::uint64_t degree) {
  for (auto v : vars)
    if (v >= ring.arity()) throw precondition_error("variable index out of range");
  std::vector<Monomial> out;
  Monomial cur(ring.arity());
  // Depth-first over the chosen variables; exponents of all others stay 0.
  auto rec = [&](auto&& self, std::size_t k, std::uint64_t remaining) -> void {
    if (k == vars.size()) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    std::size_t v = vars[k];
    std::uint64_t w = ring.weight(v);
    if (k + 1 == vars.size()) {
      if (remaining % w == 0) {
        cur[v] = static_cast<std::uint32_t>(remaining / w);
        out.push_back(cur);
        cur[v] = 0;
      }
      return;
    }
    for (std::uint64_t e = 0; e * w <= remaining; ++e) {
      cur[v] = static_cast<std::uint32_t>(e);
      self(self, k + 1, remaining - e * w);
    }
    cur[v] = 0;
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), [&ring](const Monomial& a, const Monomial& b) {
    return ring.compare(a, b) > 0;
  });
  return out;
}

namespace {

// Dense univariate gcd over the coefficient field; vectors are coefficient
// lists with index = exponent, trailing zeros trimmed.
using DensePoly = std::vector<FieldElem>;

void trim(DensePoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

DensePoly dense_derivative(const DensePoly& p, const Field& f) {
  DensePoly d;
  for (std::size_t i = 1; i < p.size(); ++i)
    d.push_back(p[i] * FieldElem::from_int(f, static_cast<long>(i)));
  trim(d);
  return d;
}

DensePoly dense_mod(DensePoly a, const DensePoly& b) {
  FieldElem lead_inv = b.back().inverse();
  while (a.size() >= b.size()) {
    FieldElem q = a.back() * lead_inv;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] -= q * b[i];
    trim(a);
    if (a.empty()) break;
  }
  return a;
}

bool gcd_is_constant(DensePoly a, DensePoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    DensePoly r = dense_mod(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() <= 1;
}

}  // namespace

bool binary_form_squarefree(const Polynomial& p) {
  if (p.is_zero())
    throw precondition_error("binary_form_squarefree: zero polynomial");
  if (!p.is_homogeneous())
    throw precondition_error("binary_form_squarefree: form must be homogeneous");
  const auto& ring = *p.ring();
  // Identify the two weight-1 variables carrying the form.
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < ring.arity(); ++i)
    if (p.degree_in(i) > 0) support.push_back(i);
  if (support.size() > 2)
    throw precondition_error("binary_form_squarefree: more than two variables");
  for (auto i : support)
    if (ring.weight(i) != 1)
      throw precondition_error("binary_form_squarefree: variables must have weight 1");
  std::size_t v0, v1;
  if (support.size() == 2) {
    v0 = support[0];
    v1 = support[1];
  } else {
    // Pad with any other weight-1 variable so both charts exist.
    std::vector<std::size_t> w1;
    for (std::size_t i = 0; i < ring.arity(); ++i)
      if (ring.weight(i) == 1) w1.push_back(i);
    if (w1.size() < 2)
      throw precondition_error("binary_form_squarefree: ring has fewer than two weight-1 variables");
    v0 = w1[0];
    v1 = w1[1];
  }

  std::uint64_t d = p.weighted_degree();
  const Field& f = ring.field();
  if (f.is_prime_field() && f.characteristic() <= 2 * d)
    throw precondition_error(
        "binary_form_squarefree: characteristic must exceed twice the degree");
  if (d <= 1) return true;

  // Both dehomogenizations; a repeated projective root shows up as a repeated
  // root of at least one chart (the root at infinity of one chart is the
  // root at zero of the other).
  auto chart = [&](std::size_t keep, std::size_t drop) {
    DensePoly c(static_cast<std::size_t>(d) + 1, FieldElem::zero(f));
    for (const auto& t : p.terms()) c[t.mono[keep]] += t.coeff;
    (void)drop;
    trim(c);
    return c;
  };
  DensePoly a = chart(v0, v1);
  DensePoly b = chart(v1, v0);
  if (a.size() <= 1 || b.size() <= 1) {
    // The form is c*x^d (one chart is constant); squarefree only for d <= 1.
    return false;
  }
  return gcd_is_constant(a, dense_derivative(a, f)) &&
         gcd_is_constant(b, dense_derivative(b, f));
}

Polynomial random_combination(RingPtr ring, const std::vector<Monomial>& monos,
                              std::mt19937_64& rng, long box,
                              bool nonzero_coeffs) {
  std::vector<Polynomial::Term> terms;
  const Field& f = ring->field();
  for (const auto& m : monos) {
    FieldElem c = FieldElem::zero(f);
    for (int guard = 0; guard < 1000; ++guard) {
      if (f.is_rationals()) {
        long v = static_cast<long>(uniform_u64(rng, 2 * box + 1)) - box;
        c = FieldElem::from_int(f, v);
      } else {
        c = FieldElem::residue(f, uniform_u64(rng, f.characteristic()));
      }
      if (!nonzero_coeffs || !c.is_zero()) break;
    }
    if (!c.is_zero()) terms.push_back({m, c});
  }
  return Polynomial::from_terms(std::move(ring), terms);
}

}  // namespace qfano
