#ifndef QFANO_WPS_HPP
#define QFANO_WPS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qfano/polynomial.hpp"

namespace qfano {

// Nonempty subset of coordinate indices, identifying the locally closed
// stratum where exactly those coordinates are nonzero.
struct StratumIndex {
  std::vector<std::size_t> indices;  // sorted, no duplicates

  static StratumIndex of(std::initializer_list<std::size_t> init);
  static StratumIndex from_list(std::vector<std::size_t> init);
  static StratumIndex from_mask(std::uint64_t mask, std::size_t arity);

  std::size_t size() const { return indices.size(); }
  bool contains(std::size_t i) const;
  std::uint64_t mask() const;
  // Rendered with the ring's variable names, e.g. "{x0,z}".
  std::string to_string(const WeightedRing& ring) const;

  bool operator==(const StratumIndex& o) const { return indices == o.indices; }
  bool operator<(const StratumIndex& o) const;
};

// A set of monomials of one common weighted degree, spanning a linear system
// on the ambient space.
class MonomialSet {
 public:
  // Degree is taken from the monomials; an empty set needs it spelled out.
  MonomialSet(RingPtr ring, std::vector<Monomial> monos);
  MonomialSet(RingPtr ring, std::uint64_t degree, std::vector<Monomial> monos);

  // All monomials of the given weighted degree in the chosen variables.
  static MonomialSet of_degree(RingPtr ring, const std::vector<std::size_t>& vars,
                               std::uint64_t degree);

  const RingPtr& ring() const { return ring_; }
  std::uint64_t degree() const { return degree_; }
  const std::vector<Monomial>& monomials() const { return monos_; }
  std::size_t size() const { return monos_.size(); }
  bool empty() const { return monos_.empty(); }
  bool contains(const Monomial& m) const;

  // Set union (degrees must agree) and translation by a fixed monomial.
  MonomialSet united(const MonomialSet& other) const;
  MonomialSet scaled_by(const Monomial& g) const;

  // Random member with a coefficient on every monomial of the set.
  Polynomial general_member(std::mt19937_64& rng, long box = 20) const;

 private:
  void validate_and_sort();

  RingPtr ring_;
  std::uint64_t degree_ = 0;
  std::vector<Monomial> monos_;
};

// One or two weighted-homogeneous equations cutting a subvariety of the
// weighted projective space of the ring.
class VarietySpec {
 public:
  VarietySpec(RingPtr ring, std::vector<Polynomial> equations);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& equations() const { return eqs_; }
  const std::vector<std::uint64_t>& degrees() const { return degs_; }
  bool is_hypersurface() const { return eqs_.size() == 1; }

 private:
  RingPtr ring_;
  std::vector<Polynomial> eqs_;
  std::vector<std::uint64_t> degs_;
};

// Cyclic quotient singularity 1/r(w1,w2,w3) of a threefold point.
struct QuotientSingularity {
  std::uint32_t r = 1;
  std::array<std::uint32_t, 3> weights{};  // residues in [0, r)

  std::string to_string() const;  // "1/4(1,1,3)"
  bool operator==(const QuotientSingularity& o) const {
    return r == o.r && weights == o.weights;
  }
};

// Verdict of the combinatorial quasismoothness test on one stratum.  `rule`
// is the 1-based clause of the criterion that fired, 0 on failure.
struct StratumVerdict {
  bool pass = false;
  int rule = 0;
};

struct GeneralMemberReport {
  std::map<StratumIndex, StratumVerdict> verdicts;
  bool linear_cone = false;

  bool all_pass() const;
  std::vector<StratumIndex> failing() const;
};

// True iff every n-of-(n+1) subset of the weights has gcd 1.
bool is_well_formed(const WeightedRing& ring);

// A linear system is a linear cone when a single variable alone realizes its
// degree (and, for a concrete polynomial, appears with nonzero coefficient).
bool is_linear_cone(const MonomialSet& M);
bool is_linear_cone(const Polynomial& f);

// Combinatorial criteria guaranteeing that a general member of the linear
// system (resp. pencil of systems) is quasismooth along the stratum.  Clause
// 1 asks for a pure power product in the stratum variables; the other
// clauses ask for enough monomials of the shape x_I^m * x_e with distinct
// outside variables e, decided by maximum bipartite matching.
StratumVerdict hypersurface_stratum_criterion(const MonomialSet& M,
                                              const StratumIndex& I);
StratumVerdict ci_stratum_criterion(const MonomialSet& M1, const MonomialSet& M2,
                                    const StratumIndex& I);

// Criterion verdicts for all 2^(n+1)-1 strata, plus the linear-cone flag.
GeneralMemberReport general_member_report(const MonomialSet& M);
GeneralMemberReport general_member_report(const MonomialSet& M1,
                                          const MonomialSet& M2);

// Polynomials cutting out the locus where the affine cone of V fails to be
// smooth: the equations together with all partials (hypersurface) or all 2x2
// minors of the Jacobian (complete intersection).
std::vector<Polynomial> nonquasismooth_system(const VarietySpec& V);

// Quotient type of V at the i-th coordinate point, read off from tangent
// monomials x_i^k * x_j.  Returns nullopt when no such monomial eliminates a
// transverse variable (one per equation, distinct), i.e. when the point is
// not a quasismooth cyclic quotient point of the ambient weight.
std::optional<QuotientSingularity> coordinate_point_quotient_type(
    const VarietySpec& V, std::size_t i);

// Terminality of an isolated cyclic quotient point: some unit rescaling of
// the weights has the form (1, a, r-a) with gcd(a, r) = 1.  Throws when a
// weight shares a factor with r (the singularity is not isolated).
bool is_terminal_quotient(const QuotientSingularity& q);

struct DegreeInfo {
  mpq_class cube;        // self-intersection of the anticanonical class
  long fano_index = 0;   // sum of weights minus sum of equation degrees
};

// Requires a threefold: arity minus number of equations equal to 4.
DegreeInfo anticanonical_degree(const VarietySpec& V);

}  // namespace qfano

#endif
