#ifndef QFANO_EXCLUSION_HPP
#define QFANO_EXCLUSION_HPP

#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qfano/family.hpp"
#include "qfano/groebner.hpp"

namespace qfano {

// Why the given projective point fails to be a nonsingular point of V:
// nothing when the point lies on V, the affine cone is smooth along its
// orbit, and no two-or-larger cyclic stabilizer fixes it (the gcd of the
// weights of its nonzero coordinates is 1).  Coordinates are a lift, one
// field element per ambient variable, not all zero.
std::optional<std::string> nonsingular_failure(const VarietySpec& V,
                                               std::span<const FieldElem> point);

// Low-degree equations cutting the given nonsingular point out of V.  The
// case analysis follows the coordinate pattern of the point:
//
//   octic model, some xi != 0 (say x0 = xi0 != 0):
//     { xi1*x0 - xi0*x1, xi0^2*y0 - eta0*x0^2,
//       xi0^2*y1 - eta1*x0^2, xi0^3*z - zeta*x0^3 }      max degree 3
//   octic model, x0 = x1 = 0 (say y0 = eta0 != 0):
//     { x0, x1, eta0*y1 - eta1*y0, eta0^3*z^2 - zeta^2*y0^3 }   max degree 6
//   intersection model, some xi != 0:
//     { xi1*x0 - xi0*x1, xi0^2*y - eta*x0^2, xi0^3*z - zeta*x0^3,
//       xi0^4*s0 - sigma0*x0^4, xi0^4*s1 - sigma1*x0^4 } max degree 4
//   intersection model, x0 = x1 = 0, y = eta != 0:
//     { x0, x1, eta^2*s0 - sigma0*y^2, eta^2*s1 - sigma1*y^2 } max degree 4
//
// Throws precondition_error when the point is off the model or singular.
std::vector<Polynomial> isolating_set_for(const VarietySpec& V,
                                          std::span<const FieldElem> point);

struct IsolationOptions {
  GbConfig gb;             // budget for the dimension computations
  std::uint64_t seed = 7;  // coefficients of the fallback linear cut
};

// Result of testing whether a polynomial set isolates a point on V: the
// ideal of V together with the set must cut the affine cone down to
// dimension <= 1 (a cone over finitely many points), and the largest
// weighted degree l in the set must satisfy l <= 4/(A^3) where A^3 is the
// anticanonical degree of V.  Both parts are recorded separately.
struct IsolationCheck {
  std::vector<FieldElem> point;
  std::vector<Polynomial> set;
  std::uint64_t l = 0;       // max weighted degree over the set
  mpq_class bound;           // 4 / (anticanonical cube)
  long cone_dimension = -1;  // Krull dimension of cone(V) cut by the set
  bool degree_ok = false;    // l <= bound
  bool localized = false;    // passed only after the generic linear cut
  bool pass = false;
  bool inconclusive = false;  // basis budget ran out

  std::string to_string() const;  // "pass", "pass (localized)", "fail", ...
};

// Runs the dimension test above.  When the raw intersection has dimension
// >= 2 the test is repeated once with a linear form through the point
// adjoined (cutting away excess components elsewhere); success on the retry
// is reported with `localized` set.
IsolationCheck check_isolation(const VarietySpec& V,
                               std::span<const FieldElem> point,
                               std::span<const Polynomial> set,
                               const IsolationOptions& opt = {});

enum class CurveVerdict { excluded, candidate };
std::string to_string(CurveVerdict v);

// Degree arithmetic excluding a curve as a maximal center.  A curve through
// a quotient point of the model is excluded outright, as is any curve of
// anticanonical degree >= A^3.  On the octic model the degree of a curve
// avoiding the weight-3 point lies in (1/2)Z, so every degree other than
// exactly 1/2 is excluded there; the remaining degree-1/2 case is the
// candidate handled by the multiplicity chain below.
CurveVerdict curve_exclusion_verdict(const VarietySpec& V,
                                     const mpq_class& curve_degree,
                                     bool passes_quotient_point);

// Presence of the special rational curve (x1 = y1 = z = 0) on the octic
// model, and the tangent-form divisibility consequence of quasismoothness.
// The model contains the curve exactly when a6 has no x0^6 term and c8 has
// no x0^8 term.  When it does, write a6 = z^2 + z*f3 + x1*f5 + (x0^6 part);
// `tangent_lemma` then records that f3 and f5 are not both divisible by x1.
// A triplet violating that cannot pass the generality verification: its
// first intersection model has a singular cone point at (1:0:0:0:0:0).
// Decomposing a6 this way requires its z^2 coefficient to be exactly 1;
// violations throw precondition_error (only when the curve is present).
struct SpecialCurveReport {
  bool contains_curve = false;
  std::optional<bool> tangent_lemma;  // engaged only when contains_curve
};
SpecialCurveReport special_curve_conditions(const Triplet& t);

// Self-intersection bookkeeping for a surface section through a degree-1/2
// curve C on the octic model: a mobile class L = A|_S - gamma*C with
// multiplicity gamma > 1 has L^2 = 2 - gamma + self_int*gamma^2.  When
// C^2 <= -3/2 on the section this forces L^2 < -1/2 < 0, impossible for a
// mobile class; `contradiction` records exactly that conjunction.
struct MobileSquare {
  mpq_class L2;
  bool contradiction = false;
};
MobileSquare curve_multiplicity_chain(const mpq_class& gamma,
                                      const mpq_class& self_int);

// Random nonsingular point on a model over an odd prime field.  With
// generic_chart the point is drawn from the x0 = 1 chart; otherwise from
// the x0 = x1 = 0 locus (where the deeper isolating sets apply).  Solves
// the defining equations for the fibre coordinates via square roots, so a
// draw can miss (non-residue discriminant); nullopt after max_attempts.
std::optional<std::vector<FieldElem>> sample_smooth_point(
    const VarietySpec& V, bool generic_chart, std::mt19937_64& rng,
    int max_attempts = 200);

}  // namespace qfano

#endif
