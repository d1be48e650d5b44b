#ifndef QFANO_FAMILY_HPP
#define QFANO_FAMILY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfano/wps.hpp"

namespace qfano {

// The rings this family lives in: the coefficient ring of the defining
// forms, the ambient of the octic hypersurface model, and the ambient of the
// (6,8) intersection models.
RingPtr triplet_ring(const Field& f);        // x0,x1,z with weights 1,1,3
RingPtr hypersurface_ring(const Field& f);   // x0,x1,y0,y1,z / 1,1,2,2,3
RingPtr intersection_ring(const Field& f);   // x0,x1,y,z,s0,s1 / 1,1,2,3,4,4

// Defining data (a6, b6, c8): two sextics and an octic in x0, x1, z.
class Triplet {
 public:
  Triplet(Polynomial a6, Polynomial b6, Polynomial c8);

  static Triplet parse(const std::string& a6, const std::string& b6,
                       const std::string& c8, const Field& f);
  // Record with fields "field" ("QQ" or "Fp:<prime>") and the three forms as
  // expression strings.
  static Triplet from_json_text(const std::string& text);
  std::string to_json_text() const;

  const Polynomial& a6() const { return a6_; }
  const Polynomial& b6() const { return b6_; }
  const Polynomial& c8() const { return c8_; }
  const RingPtr& ring() const;
  const Field& field() const;

  Triplet swapped() const;                    // exchange a6 and b6
  Triplet reduced_mod(std::uint64_t p) const; // coefficientwise reduction

  bool operator==(const Triplet& o) const;

 private:
  Polynomial a6_, b6_, c8_;
};

// The octic hypersurface y0^2 y1^2 + y0 a6 + y1 b6 + c8 in P(1,1,2,2,3).
VarietySpec build_Xprime(const Triplet& t);
// The (6,8) intersections s0 y + s1 y + a6 = s0 s1 - y b6 - c8 = 0 (and the
// a6/b6 swap) in P(1,1,2,3,4,4).
VarietySpec build_X1(const Triplet& t);
VarietySpec build_X2(const Triplet& t);

enum class Verdict { verified, failed, inconclusive };
std::string to_string(Verdict v);

struct QsmOptions {
  int jobs = 0;                      // 0 picks the OpenMP default
  std::uint64_t pair_budget = 200000;
  bool exact = false;                // run over the coefficient field itself
  int primes = 3;                    // reductions in probabilistic mode
  std::uint64_t seed = 0;            // prime selection
  bool self_check = false;           // re-verify every finished basis
  // Explicit reduction primes (distinct, each a prime >= 1009).  When
  // nonempty this list replaces the random draw; it only matters for
  // rational inputs without `exact`.
  std::vector<std::uint64_t> fixed_primes;
};

// Outcome of the quasismoothness scan.  Strata whose entire check ran out of
// budget are inconclusive; a stratum is `failed` only when every prime run
// found a singular cone point on it.
struct QsmReport {
  Verdict overall = Verdict::inconclusive;
  std::map<StratumIndex, Verdict> strata;
  std::vector<std::uint64_t> primes;       // used reductions, draw order
  std::optional<StratumIndex> witness;     // some failed stratum
  bool budget_hit = false;
};

// Checks that the affine cone of V is smooth along every coordinate stratum
// except the one-variable strata of the allowed coordinate points.  Over a
// prime field (or with exact = true) the verdicts are exact; over the
// rationals the equations are reduced modulo `primes` random large primes
// and the per-stratum verdicts must agree.
QsmReport member_qsm_outside(const VarietySpec& V,
                             const std::vector<std::size_t>& allowed,
                             const QsmOptions& opt = {});

// Squarefree-sextic test certifying the exceptional singularity type at the
// corresponding double point: the chosen sextic (which = 'a' or 'b') must
// contain z^2 and, after completing the square in z, leave a squarefree
// binary sextic.  Equivalent to quasismoothness of its zero locus in
// P(1,1,3).  Requires odd characteristic above 13.
bool detect_cAx2_via_sextic(const Triplet& t, char which);

struct ConditionItem {
  Verdict verdict = Verdict::inconclusive;
  std::string evidence;
};

// The four generality requirements on a triplet: the octic model is
// quasismooth outside its two double points (1), both sextics certify those
// points' type (2), both intersection models are quasismooth outside their
// double point (3), and those points have the same type via the local
// identifications (4).
struct ConditionReport {
  std::array<ConditionItem, 4> items;
  bool overall() const;
};

ConditionReport verify_condition(const Triplet& t, const QsmOptions& opt = {});

enum class SampleMode { general, symmetric };

struct SampleResult {
  Triplet triplet;
  int retries = 0;  // discarded draws before the returned one
  ConditionReport report;
};

// Draws coefficients from a fixed small-integer box (uniform residues over a
// prime field), pinning the z^2 coefficients of both sextics to 1, and
// redraws until verify_condition passes.  Throws after `max_retries`
// discarded attempts.
SampleResult sample_triplet(std::uint64_t seed, SampleMode mode,
                            const Field& f = Field::rationals(),
                            const QsmOptions& opt = {}, int max_retries = 5);

// Automorphism data x0,x1 -> linear forms, z -> c*z + h3(x0,x1), together
// with the three scalars relating the transported forms back to the triplet.
struct SymmetryWitness {
  Polynomial x0_image, x1_image, z_image;
  FieldElem alpha, beta, gamma;
};

// Exact check of tau*a6 = alpha*b6, tau*b6 = beta*a6, tau*c8 = gamma*c8 and
// gamma^3 = alpha^2 beta^2.  Malformed witnesses (wrong degrees, singular
// linear part, zero scalars) are input errors.
bool verify_symmetry_witness(const Triplet& t, const SymmetryWitness& w);

// Searches a small family of candidate automorphisms: the identity and the
// x0/x1 swap, each with z -> z or z -> -z, scalars derived by
// proportionality.  A miss is not a proof of asymmetry.
std::optional<SymmetryWitness> find_symmetry_heuristic(const Triplet& t);

// The scalar lambda with b = lambda * a, if one exists (a must be nonzero;
// lambda = 0, i.e. b = 0, does not count).
std::optional<FieldElem> is_proportional(const Polynomial& a,
                                         const Polynomial& b);

}  // namespace qfano

#endif
