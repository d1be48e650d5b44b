#include "qfano/exclusion.hpp"

#include <algorithm>
#include <numeric>

#include "qfano/errors.hpp"

namespace qfano {

namespace {

enum class ModelShape { octic, intersection };

// The two ambients this module understands, recognized by ring shape.  The
// equations themselves are not inspected here; every consumer validates the
// point or the candidate against the actual equations.
ModelShape detect_model(const VarietySpec& V) {
  static const std::vector<std::uint32_t> octic_w{1, 1, 2, 2, 3};
  static const std::vector<std::uint32_t> inter_w{1, 1, 2, 3, 4, 4};
  if (V.ring()->weights() == octic_w && V.equations().size() == 1)
    return ModelShape::octic;
  if (V.ring()->weights() == inter_w && V.equations().size() == 2)
    return ModelShape::intersection;
  throw input_error(
      "unsupported model: expected the octic hypersurface or the (6,8) "
      "intersection ambient");
}

void validate_point_shape(const VarietySpec& V,
                          std::span<const FieldElem> point) {
  const WeightedRing& R = *V.ring();
  if (point.size() != R.arity())
    throw input_error("point needs one coordinate per ambient variable");
  bool nonzero = false;
  for (const FieldElem& c : point) {
    if (c.field() != R.field())
      throw ring_mismatch("point coordinates live in a different field");
    nonzero = nonzero || !c.is_zero();
  }
  if (!nonzero)
    throw input_error("projective point needs a nonzero coordinate");
}

// Coefficients of f viewed as a univariate polynomial in variable k, all
// other variables evaluated at `point` (whose k-th entry is ignored).
std::vector<FieldElem> coefficients_in(const Polynomial& f, std::size_t k,
                                       std::span<const FieldElem> point) {
  const Field& F = f.ring()->field();
  std::vector<FieldElem> out(f.is_zero() ? 1 : f.degree_in(k) + 1,
                             FieldElem::zero(F));
  for (const auto& t : f.terms()) {
    FieldElem v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) {
      if (i == k || t.mono[i] == 0) continue;
      v *= point[i].pow(t.mono[i]);
    }
    out[t.mono[k]] += v;
  }
  return out;
}

struct QuadraticRoots {
  std::vector<FieldElem> roots;
  bool any_value = false;  // the equation vanished identically
};

// Roots of c2 T^2 + c1 T + c0 over an odd prime field.
QuadraticRoots solve_quadratic(const FieldElem& c2, const FieldElem& c1,
                               const FieldElem& c0) {
  const Field& F = c2.field();
  QuadraticRoots out;
  if (!c2.is_zero()) {
    FieldElem four = FieldElem::from_int(F, 4);
    auto r = sqrt_mod(c1 * c1 - four * c2 * c0);
    if (!r) return out;
    FieldElem two_a = (c2 + c2).inverse();
    out.roots.push_back((-c1 + *r) * two_a);
    out.roots.push_back((-c1 - *r) * two_a);
    return out;
  }
  if (!c1.is_zero()) {
    out.roots.push_back(-c0 / c1);
    return out;
  }
  out.any_value = c0.is_zero();
  return out;
}

Polynomial linear_through_point(const RingPtr& ring,
                                std::span<const FieldElem> point,
                                std::uint64_t seed) {
  Polynomial x0 = Polynomial::variable(ring, 0);
  Polynomial x1 = Polynomial::variable(ring, 1);
  if (!point[0].is_zero() || !point[1].is_zero())
    return (point[1] * x0 - point[0] * x1).monic();
  // Every weight-1 form vanishes at the point; draw a generic one.
  const Field& F = ring->field();
  std::mt19937_64 rng(seed);
  for (;;) {
    FieldElem c0, c1;
    if (F.is_prime_field()) {
      c0 = FieldElem::residue(F, uniform_u64(rng, F.characteristic()));
      c1 = FieldElem::residue(F, uniform_u64(rng, F.characteristic()));
    } else {
      c0 = FieldElem::from_int(F, 1 + long(uniform_u64(rng, 97)));
      c1 = FieldElem::from_int(F, 1 + long(uniform_u64(rng, 97)));
    }
    if (c0.is_zero() && c1.is_zero()) continue;
    return (c0 * x0 + c1 * x1).monic();
  }
}

// z-degree split of a sextic in the coefficient ring x0, x1, z: the pure
// z^2 coefficient is constant, so f = c*z^2 + z*f3 + f6.
void split_sextic(const Polynomial& f, Polynomial& f3, Polynomial& f6) {
  const RingPtr& R = f.ring();
  f3 = Polynomial::zero(R);
  f6 = Polynomial::zero(R);
  for (const auto& t : f.terms()) {
    Monomial m = t.mono;
    if (m[2] == 2) continue;
    if (m[2] == 1) {
      m[2] = 0;
      f3 += Polynomial::monomial(R, m, t.coeff);
    } else {
      f6 += Polynomial::monomial(R, m, t.coeff);
    }
  }
}

}  // namespace

std::optional<std::string> nonsingular_failure(
    const VarietySpec& V, std::span<const FieldElem> point) {
  validate_point_shape(V, point);
  for (const Polynomial& eq : V.equations())
    if (!eq.eval(point).is_zero())
      return "the point does not lie on the model";

  const std::size_t n = V.ring()->arity();
  const char* cone_singular = "the affine cone is singular at the point";
  if (V.is_hypersurface()) {
    bool smooth = false;
    for (std::size_t i = 0; i < n && !smooth; ++i)
      smooth = !V.equations()[0].derivative(i).eval(point).is_zero();
    if (!smooth) return cone_singular;
  } else {
    std::vector<FieldElem> g1, g2;
    for (std::size_t i = 0; i < n; ++i) {
      g1.push_back(V.equations()[0].derivative(i).eval(point));
      g2.push_back(V.equations()[1].derivative(i).eval(point));
    }
    bool rank2 = false;
    for (std::size_t i = 0; i < n && !rank2; ++i)
      for (std::size_t j = i + 1; j < n && !rank2; ++j)
        rank2 = !(g1[i] * g2[j] - g1[j] * g2[i]).is_zero();
    if (!rank2) return cone_singular;
  }

  std::uint64_t g = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!point[i].is_zero()) g = std::gcd(g, std::uint64_t(V.ring()->weight(i)));
  if (g > 1)
    return "the point sits at a mu_" + std::to_string(g) +
           " quotient point of the ambient space";
  return std::nullopt;
}

std::vector<Polynomial> isolating_set_for(const VarietySpec& V,
                                          std::span<const FieldElem> point) {
  if (auto why = nonsingular_failure(V, point))
    throw precondition_error("isolating set: " + *why);
  ModelShape shape = detect_model(V);
  const RingPtr& R = V.ring();
  auto var = [&](std::size_t i) { return Polynomial::variable(R, i); };

  std::vector<Polynomial> gens;
  if (!point[0].is_zero() || !point[1].is_zero()) {
    // Chart of a nonzero weight-1 coordinate x_a: one linear form pinning
    // the other weight-1 coordinate, then one binomial per remaining
    // variable matching it against the right power of x_a.
    std::size_t a = point[0].is_zero() ? 1 : 0;
    std::size_t b = 1 - a;
    const FieldElem& xa = point[a];
    gens.push_back(point[b] * var(a) - xa * var(b));
    for (std::size_t i = 2; i < R->arity(); ++i) {
      std::uint32_t w = R->weight(i);
      gens.push_back(xa.pow(w) * var(i) - point[i] * var(a).pow(w));
    }
  } else if (shape == ModelShape::octic) {
    // x0 = x1 = 0 on the octic model: a nonsingular point has both a
    // nonzero weight-2 coordinate y_a and nonzero z, and is cut out on that
    // locus by one cross form in y0, y1 and one in z^2 against y_a^3.
    std::size_t a = point[2].is_zero() ? 3 : 2;
    std::size_t b = 5 - a;
    const FieldElem& ya = point[a];
    gens.push_back(var(0));
    gens.push_back(var(1));
    gens.push_back(ya * var(b) - point[b] * var(a));
    gens.push_back(ya.pow(3) * var(4) * var(4) -
                   point[4] * point[4] * var(a).pow(3));
  } else {
    // x0 = x1 = 0 on an intersection model forces y != 0 at a nonsingular
    // point of the family's members; z is then determined on the model by
    // the s-coordinates, so two quartic binomials suffice.
    if (point[2].is_zero())
      throw precondition_error(
          "no isolating set is provided for points with x0 = x1 = y = 0");
    const FieldElem& eta = point[2];
    gens.push_back(var(0));
    gens.push_back(var(1));
    gens.push_back(eta * eta * var(4) - point[4] * var(2) * var(2));
    gens.push_back(eta * eta * var(5) - point[5] * var(2) * var(2));
  }
  for (Polynomial& g : gens) g = g.monic();
  return gens;
}

std::string IsolationCheck::to_string() const {
  if (inconclusive) return "inconclusive";
  if (!pass) return "fail";
  return localized ? "pass (localized)" : "pass";
}

IsolationCheck check_isolation(const VarietySpec& V,
                               std::span<const FieldElem> point,
                               std::span<const Polynomial> set,
                               const IsolationOptions& opt) {
  if (auto why = nonsingular_failure(V, point))
    throw precondition_error("isolation check: " + *why);
  if (set.empty()) throw input_error("isolation check needs a nonempty set");
  for (const Polynomial& g : set) {
    if (g.is_zero()) throw input_error("isolating sets must not contain 0");
    if (!g.ring()->same_structure(*V.ring()) ||
        g.ring()->field() != V.ring()->field())
      throw ring_mismatch("isolating set lives in a different ring");
  }

  IsolationCheck out;
  out.point.assign(point.begin(), point.end());
  out.set.assign(set.begin(), set.end());
  for (const Polynomial& g : set)
    out.l = std::max(out.l, g.weighted_degree());
  out.bound = mpq_class(4) / anticanonical_degree(V).cube;
  out.degree_ok = mpq_class(static_cast<unsigned long>(out.l)) <= out.bound;

  std::vector<Polynomial> gens = V.equations();
  gens.insert(gens.end(), set.begin(), set.end());
  GbResult res = buchberger(V.ring(), gens, opt.gb);
  if (res.budget_exceeded()) {
    out.inconclusive = true;
    return out;
  }
  out.cone_dimension = krull_dimension(*res.basis);
  if (out.cone_dimension <= 1) {
    out.pass = out.degree_ok;
    return out;
  }

  // The raw intersection picked up excess components away from the point;
  // cut with a generic hyperplane through the point and retest.  The raw
  // dimension stays on record.
  gens.push_back(linear_through_point(V.ring(), point, opt.seed));
  GbResult cut = buchberger(V.ring(), gens, opt.gb);
  if (cut.budget_exceeded()) {
    out.inconclusive = true;
    return out;
  }
  if (krull_dimension(*cut.basis) <= 1) {
    out.localized = true;
    out.pass = out.degree_ok;
  }
  return out;
}

std::string to_string(CurveVerdict v) {
  return v == CurveVerdict::excluded ? "excluded" : "candidate";
}

CurveVerdict curve_exclusion_verdict(const VarietySpec& V,
                                     const mpq_class& curve_degree,
                                     bool passes_quotient_point) {
  ModelShape shape = detect_model(V);
  if (curve_degree <= 0)
    throw precondition_error("curve degree must be positive");
  if (passes_quotient_point) return CurveVerdict::excluded;
  mpq_class a3 = anticanonical_degree(V).cube;
  if (curve_degree >= a3) return CurveVerdict::excluded;
  if (shape == ModelShape::octic && curve_degree != mpq_class(1, 2))
    return CurveVerdict::excluded;
  return CurveVerdict::candidate;
}

SpecialCurveReport special_curve_conditions(const Triplet& t) {
  const RingPtr& R = t.ring();
  SpecialCurveReport rep;
  Monomial x0_6({6, 0, 0}), x0_8({8, 0, 0});
  rep.contains_curve = t.a6().coefficient_of(x0_6).is_zero() &&
                       t.c8().coefficient_of(x0_8).is_zero();
  if (!rep.contains_curve) return rep;

  if (!t.a6().coefficient_of(Monomial({0, 0, 2})).is_one())
    throw precondition_error(
        "tangent test needs the first sextic normalized with z^2 "
        "coefficient 1");
  Polynomial f3, f6;
  split_sextic(t.a6(), f3, f6);
  // With no x0^6 term every monomial of f6 carries x1, so the quintic
  // cofactor exists exactly.
  Polynomial x1 = Polynomial::variable(R, 1);
  Polynomial f5 = Polynomial::zero(R);
  if (!f6.is_zero()) {
    auto q = try_exact_divide(f6, x1);
    if (!q) throw error("tangent test: quintic cofactor failed to divide");
    f5 = *q;
  }
  auto divisible = [&](const Polynomial& f) {
    return f.is_zero() || try_exact_divide(f, x1).has_value();
  };
  rep.tangent_lemma = !(divisible(f3) && divisible(f5));
  return rep;
}

MobileSquare curve_multiplicity_chain(const mpq_class& gamma,
                                      const mpq_class& self_int) {
  if (gamma <= 1)
    throw precondition_error("the multiplicity chain needs gamma > 1");
  MobileSquare r;
  r.L2 = 2 - gamma + self_int * gamma * gamma;
  r.contradiction =
      self_int <= mpq_class(-3, 2) && r.L2 < mpq_class(-1, 2);
  return r;
}

std::optional<std::vector<FieldElem>> sample_smooth_point(
    const VarietySpec& V, bool generic_chart, std::mt19937_64& rng,
    int max_attempts) {
  ModelShape shape = detect_model(V);
  const Field& F = V.ring()->field();
  if (!F.is_prime_field() || F.characteristic() == 2)
    throw precondition_error("point sampling needs an odd prime field");
  const std::uint64_t p = F.characteristic();
  auto draw = [&] { return FieldElem::residue(F, uniform_u64(rng, p)); };
  auto draw_nonzero = [&] {
    return FieldElem::residue(F, 1 + uniform_u64(rng, p - 1));
  };
  const FieldElem zero = FieldElem::zero(F);
  const FieldElem one = FieldElem::one(F);
  const FieldElem half = FieldElem::from_int(F, 2).inverse();

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<FieldElem> pt;
    if (shape == ModelShape::octic) {
      // Fix everything but z and solve the defining octic as a quadratic
      // in z.  Off the x-locus z is drawn freely only when the fibre is a
      // whole line.
      pt = generic_chart
               ? std::vector<FieldElem>{one, draw(), draw(), draw(), zero}
               : std::vector<FieldElem>{zero, zero, one, draw_nonzero(), zero};
      auto c = coefficients_in(V.equations()[0], 4, pt);
      c.resize(3, zero);
      QuadraticRoots q = solve_quadratic(c[2], c[1], c[0]);
      if (q.any_value)
        pt[4] = draw();
      else if (!q.roots.empty())
        pt[4] = q.roots[uniform_u64(rng, q.roots.size())];
      else
        continue;
    } else {
      // Fix x, y, z and read the two symmetric functions of s0, s1 off the
      // model equations; the s-values are the roots of the corresponding
      // quadratic, available if its discriminant is a square.
      pt = generic_chart
               ? std::vector<FieldElem>{one,  draw(),        draw_nonzero(),
                                        draw(), zero, zero}
               : std::vector<FieldElem>{zero, zero,          one,
                                        draw_nonzero(), zero, zero};
      FieldElem y = pt[2];
      FieldElem s_sum = -(V.equations()[0].eval(pt) / y);
      FieldElem s_prod = -V.equations()[1].eval(pt);
      auto r = sqrt_mod(s_sum * s_sum - FieldElem::from_int(F, 4) * s_prod);
      if (!r) continue;
      pt[4] = (s_sum + *r) * half;
      pt[5] = (s_sum - *r) * half;
    }
    if (!nonsingular_failure(V, pt)) return pt;
  }
  return std::nullopt;
}

}  // namespace qfano
