#ifndef QFANO_GROEBNER_HPP
#define QFANO_GROEBNER_HPP

#include <atomic>
#include <optional>
#include <span>

#include "qfano/polynomial.hpp"

namespace qfano {

struct GbConfig {
  // Upper bound on Buchberger pairs taken from the queue.  Exhausting it is
  // reported as a distinct outcome, never as a wrong answer.
  std::size_t pair_budget = 200000;
  // When set, pairs whose lcm exceeds this weighted degree are skipped.  Only
  // meaningful for homogeneous input: the truncated basis decides membership
  // for elements of weighted degree <= the bound.
  std::optional<std::uint64_t> degree_bound;
  // Re-verify every S-polynomial reduction of the finished basis.
  bool self_check = false;
};

struct GbStats {
  std::size_t pairs_processed = 0;
  std::size_t reductions_to_zero = 0;
  bool truncated = false;
};

// Global accounting used by the acceptance suite to assert that every basis
// built during a run passed its self-check.
struct GbCounters {
  static std::atomic<std::uint64_t> bases_built;
  static std::atomic<std::uint64_t> self_checks_run;
  static std::atomic<std::uint64_t> self_check_failures;
  static void reset();
};

// Reduced Groebner basis: monic, inter-reduced, sorted by decreasing leading
// monomial.  The reduced basis of an ideal is unique for the ring's order.
class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, std::vector<Polynomial> gens,
                std::optional<std::uint64_t> degree_bound);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  bool contains_one() const;
  std::optional<std::uint64_t> degree_bound() const { return degree_bound_; }

  Polynomial normal_form(const Polynomial& p) const;
  bool contains(const Polynomial& p) const;

  // Re-reduce every S-polynomial (all pairs within the degree bound, if any)
  // and confirm each reduces to zero.
  bool self_check() const;

 private:
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::optional<std::uint64_t> degree_bound_;
};

struct GbResult {
  std::optional<GroebnerBasis> basis;  // disengaged iff the budget ran out
  GbStats stats;
  bool budget_exceeded() const { return !basis.has_value(); }
};

// Buchberger with the normal selection strategy (minimal lcm degree first)
// and both classical pair-skipping criteria.
GbResult buchberger(RingPtr ring, std::span<const Polynomial> gens,
                    const GbConfig& cfg = {});

enum class Ternary { yes, no, unknown };

// Is V(gens) empty over the algebraic closure?  unknown = budget exhausted.
Ternary is_empty_affine(RingPtr ring, std::span<const Polynomial> gens,
                        const GbConfig& cfg = {});

// Membership p in <gens>; unknown = budget exhausted.
Ternary ideal_contains(RingPtr ring, std::span<const Polynomial> gens,
                       const Polynomial& p, const GbConfig& cfg = {});

// Rabinowitsch trick: generators of an ideal in ring + one fresh variable
// whose vanishing locus is V(gens) minus the coordinate hyperplanes of the
// given variables.  The weight of the fresh variable is 1.
std::vector<Polynomial> saturate_by_product(RingPtr ring,
                                            std::span<const Polynomial> gens,
                                            const std::vector<std::size_t>& vars,
                                            const std::string& fresh_name = "_t");

// Dimension of the affine variety of the basis ideal: the largest number of
// variables not meeting any leading monomial's support; -1 for the unit
// ideal, arity for the zero ideal.
long krull_dimension(const GroebnerBasis& gb);

// Normal form of p against an arbitrary polynomial list (not necessarily a
// Groebner basis); remainder has no term divisible by any leading monomial.
Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> divisors);

// Exact polynomial division: q with p = q*d, when it exists.
std::optional<Polynomial> try_exact_divide(const Polynomial& p,
                                           const Polynomial& d);

}  // namespace qfano

#endif
