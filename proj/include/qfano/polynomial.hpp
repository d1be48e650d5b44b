#ifndef QFANO_POLYNOMIAL_HPP
#define QFANO_POLYNOMIAL_HPP

#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qfano/ring.hpp"

namespace qfano {

// Sparse multivariate polynomial over a WeightedRing.  Terms are kept sorted
// in strictly descending monomial order (leading term first) and never hold a
// zero coefficient.
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    FieldElem coeff;
  };

  Polynomial() = default;

  static Polynomial zero(RingPtr ring);
  static Polynomial constant(RingPtr ring, const FieldElem& c);
  static Polynomial constant(RingPtr ring, long n);
  static Polynomial variable(RingPtr ring, std::size_t i);
  static Polynomial monomial(RingPtr ring, const Monomial& m, const FieldElem& c);
  // Accumulates arbitrary (monomial, coefficient) pairs.
  static Polynomial from_terms(RingPtr ring, const std::vector<Term>& terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t term_count() const { return terms_.size(); }

  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().mono; }
  const FieldElem& leading_coefficient() const { return leading_term().coeff; }

  // Weighted degree of the leading (= highest) term; throws on zero.
  std::uint64_t weighted_degree() const;
  // Largest exponent of variable i across the support.
  std::uint32_t degree_in(std::size_t i) const;
  FieldElem coefficient_of(const Monomial& m) const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const FieldElem& c) const;
  Polynomial mul_term(const Monomial& m, const FieldElem& c) const;
  Polynomial pow(std::uint32_t e) const;

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  // Divide by the leading coefficient.
  Polynomial monic() const;

  // Homogeneity report: every nonzero polynomial either has one weighted
  // degree shared by all terms or is inhomogeneous; the zero polynomial is
  // homogeneous of every degree.
  struct Homogeneity {
    enum class Kind { inhomogeneous, of_degree, any } kind;
    std::uint64_t degree = 0;  // meaningful only for of_degree
  };
  Homogeneity homogeneity() const;
  bool is_homogeneous() const;

  Polynomial derivative(std::size_t i) const;

  // Simultaneous substitution into `target`.  Variables present in the map
  // are replaced by the mapped polynomial (which must live in `target`);
  // variables absent from the map must exist in `target` by name and map to
  // themselves.  With an empty map this embeds along variable names.
  Polynomial substitute(const std::map<std::string, Polynomial>& assignment,
                        RingPtr target) const;

  // Evaluate at a point (one field element per ring variable).
  FieldElem eval(std::span<const FieldElem> point) const;

  // Coefficient-wise reduction of a rational polynomial into F_p.
  Polynomial reduce_mod(RingPtr fp_ring) const;

  // Grammar-compatible rendering; parse(to_string()) reproduces the value.
  std::string to_string() const;

 private:
  friend class PolyBuilder;
  void assert_compatible(const Polynomial& o) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

inline Polynomial operator*(const FieldElem& c, const Polynomial& p) {
  return p * c;
}

// All monomials supported on the given variables whose weighted degree is
// exactly `degree`, sorted descending in the ring order.
std::vector<Monomial> monomials_of_weighted_degree(const WeightedRing& ring,
                                                   const std::vector<std::size_t>& vars,
                                                   std::uint64_t degree);

// Decide whether a nonzero weighted-homogeneous form supported on (at most)
// two weight-1 variables is squarefree over the algebraic closure, via gcds
// of both dehomogenizations with their derivatives.  Requires characteristic
// 0 or p > 2*deg.
bool binary_form_squarefree(const Polynomial& p);

// Uniformly random polynomial supported on the given monomials, coefficients
// drawn from a centered integer box (rationals) or uniform residues (F_p).
Polynomial random_combination(RingPtr ring, const std::vector<Monomial>& monos,
                              std::mt19937_64& rng, long box = 20,
                              bool nonzero_coeffs = false);

}  // namespace qfano

#endif
