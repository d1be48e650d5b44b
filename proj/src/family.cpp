#include "qfano/family.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <json.hpp>

#include "qfano/errors.hpp"
#include "qfano/groebner.hpp"
#include "qfano/parallel.hpp"
#include "qfano/parser.hpp"

namespace qfano {

namespace {

Polynomial embed(const Polynomial& p, const RingPtr& target) {
  return p.substitute({}, target);
}

void check_form(const Polynomial& p, std::uint64_t degree, const char* label) {
  auto expected = triplet_ring(p.ring()->field());
  if (!p.ring()->same_structure(*expected))
    throw ring_mismatch(std::string(label) +
                        " must live in the x0,x1,z coefficient ring");
  auto h = p.homogeneity();
  if (h.kind == Polynomial::Homogeneity::Kind::inhomogeneous ||
      (h.kind == Polynomial::Homogeneity::Kind::of_degree && h.degree != degree))
    throw input_error(std::string(label) + " must be homogeneous of degree " +
                      std::to_string(degree));
}

Monomial z_squared() {
  Monomial m(3);
  m[2] = 2;
  return m;
}

// b = lambda * a with both leading terms aligned, checked exactly.
std::optional<FieldElem> ratio_or_nothing(const Polynomial& base,
                                          const Polynomial& image) {
  if (base.is_zero())
    return image.is_zero()
               ? std::optional<FieldElem>(FieldElem::one(image.ring()->field()))
               : std::nullopt;
  return is_proportional(base, image);
}

std::optional<FieldElem> cube_root(const FieldElem& v, const Field& f) {
  if (f.characteristic() == 0) {
    mpq_class q = v.rational();
    mpz_class num = q.get_num(), den = q.get_den(), rn, rd;
    if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), 3) == 0) return std::nullopt;
    if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), 3) == 0) return std::nullopt;
    return FieldElem::from_mpq(f, mpq_class(rn, rd));
  }
  std::uint64_t p = f.characteristic();
  if (p % 3 == 2) {
    // Cubing is a bijection; invert the exponent mod p-1.
    std::uint64_t m = p - 1, inv3 = (2 * m + 1) / 3;  // 3*inv3 = 2(p-1)+1
    FieldElem r = v.pow(inv3);
    if (r * r * r == v) return r;
  }
  // p = 1 mod 3 would need a cube-root algorithm; the heuristic gives up.
  return std::nullopt;
}

Verdict combine_two(Verdict x, Verdict y) {
  if (x == Verdict::failed || y == Verdict::failed) return Verdict::failed;
  if (x == Verdict::verified && y == Verdict::verified) return Verdict::verified;
  return Verdict::inconclusive;
}

}  // namespace

RingPtr triplet_ring(const Field& f) {
  return WeightedRing::make({"x0", "x1", "z"}, {1, 1, 3}, f);
}

RingPtr hypersurface_ring(const Field& f) {
  return WeightedRing::make({"x0", "x1", "y0", "y1", "z"}, {1, 1, 2, 2, 3}, f);
}

RingPtr intersection_ring(const Field& f) {
  return WeightedRing::make({"x0", "x1", "y", "z", "s0", "s1"},
                            {1, 1, 2, 3, 4, 4}, f);
}

Triplet::Triplet(Polynomial a6, Polynomial b6, Polynomial c8)
    : a6_(std::move(a6)), b6_(std::move(b6)), c8_(std::move(c8)) {
  check_form(a6_, 6, "a6");
  check_form(b6_, 6, "b6");
  check_form(c8_, 8, "c8");
  if (!a6_.ring()->same_structure(*b6_.ring()) ||
      !a6_.ring()->same_structure(*c8_.ring()))
    throw ring_mismatch("triplet forms live in different rings");
}

Triplet Triplet::parse(const std::string& a6, const std::string& b6,
                       const std::string& c8, const Field& f) {
  auto R = triplet_ring(f);
  return Triplet(parse_poly(a6, R), parse_poly(b6, R), parse_poly(c8, R));
}

Triplet Triplet::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("triplet record: ") + e.what(),
                      static_cast<std::size_t>(e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!j.is_object())
    throw input_error("triplet record must be a JSON object");
  for (const char* key : {"field", "a6", "b6", "c8"})
    if (!j.contains(key) || !j[key].is_string())
      throw input_error(std::string("triplet record needs a string field \"") +
                        key + "\"");
  Field f = Field::from_string(j["field"].get<std::string>());
  return parse(j["a6"].get<std::string>(), j["b6"].get<std::string>(),
               j["c8"].get<std::string>(), f);
}

std::string Triplet::to_json_text() const {
  nlohmann::json j;
  j["field"] = field().to_string();
  j["a6"] = a6_.to_string();
  j["b6"] = b6_.to_string();
  j["c8"] = c8_.to_string();
  return j.dump(2) + "\n";
}

const RingPtr& Triplet::ring() const { return a6_.ring(); }

const Field& Triplet::field() const { return a6_.ring()->field(); }

Triplet Triplet::swapped() const { return Triplet(b6_, a6_, c8_); }

Triplet Triplet::reduced_mod(std::uint64_t p) const {
  auto Rp = triplet_ring(Field::prime(p));
  return Triplet(a6_.reduce_mod(Rp), b6_.reduce_mod(Rp), c8_.reduce_mod(Rp));
}

bool Triplet::operator==(const Triplet& o) const {
  return a6_ == o.a6_ && b6_ == o.b6_ && c8_ == o.c8_;
}

VarietySpec build_Xprime(const Triplet& t) {
  auto R = hypersurface_ring(t.field());
  Polynomial y0 = Polynomial::variable(R, 2);
  Polynomial y1 = Polynomial::variable(R, 3);
  Polynomial F = y0 * y0 * y1 * y1 + y0 * embed(t.a6(), R) +
                 y1 * embed(t.b6(), R) + embed(t.c8(), R);
  return VarietySpec(R, {F});
}

VarietySpec build_X1(const Triplet& t) {
  auto R = intersection_ring(t.field());
  Polynomial y = Polynomial::variable(R, 2);
  Polynomial s0 = Polynomial::variable(R, 4);
  Polynomial s1 = Polynomial::variable(R, 5);
  Polynomial F1 = s0 * y + s1 * y + embed(t.a6(), R);
  Polynomial F2 = s0 * s1 - y * embed(t.b6(), R) - embed(t.c8(), R);
  return VarietySpec(R, {F1, F2});
}

VarietySpec build_X2(const Triplet& t) { return build_X1(t.swapped()); }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::verified: return "verified";
    case Verdict::failed: return "failed";
    default: return "inconclusive";
  }
}

QsmReport member_qsm_outside(const VarietySpec& V,
                             const std::vector<std::size_t>& allowed,
                             const QsmOptions& opt) {
  const RingPtr& R = V.ring();
  std::size_t n = R->arity();

  std::vector<StratumIndex> strata;
  std::uint64_t total = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask <= total; ++mask) {
    StratumIndex I = StratumIndex::from_mask(mask, n);
    if (I.size() == 1 && std::find(allowed.begin(), allowed.end(),
                                   I.indices[0]) != allowed.end())
      continue;
    strata.push_back(std::move(I));
  }

  QsmReport rep;

  // One column per ground field the scan runs over: the field itself when it
  // is finite or exactness was requested, otherwise several large random
  // prime reductions that must agree.
  std::vector<RingPtr> rings;
  std::vector<std::vector<Polynomial>> systems;
  if (opt.exact || R->field().characteristic() != 0) {
    rings.push_back(R);
    systems.push_back(nonquasismooth_system(V));
  } else if (!opt.fixed_primes.empty()) {
    std::set<std::uint64_t> used;
    for (std::uint64_t p : opt.fixed_primes) {
      if (p < 1009 || !is_prime_u64(p))
        throw input_error("reduction primes must be primes >= 1009");
      if (!used.insert(p).second)
        throw input_error("reduction primes must be distinct");
      auto Rp = R->with_field(Field::prime(p));
      std::vector<Polynomial> eqs;
      for (const Polynomial& e : V.equations()) eqs.push_back(e.reduce_mod(Rp));
      VarietySpec Vp(Rp, std::move(eqs));
      rings.push_back(Rp);
      systems.push_back(nonquasismooth_system(Vp));
      rep.primes.push_back(p);
    }
  } else {
    std::mt19937_64 rng(opt.seed);
    std::set<std::uint64_t> used;
    while (rings.size() < static_cast<std::size_t>(std::max(1, opt.primes))) {
      std::uint64_t p =
          random_prime(rng, 1009, (std::uint64_t{1} << 31) - 1);
      if (!used.insert(p).second) continue;
      try {
        auto Rp = R->with_field(Field::prime(p));
        std::vector<Polynomial> eqs;
        for (const Polynomial& e : V.equations()) eqs.push_back(e.reduce_mod(Rp));
        VarietySpec Vp(Rp, std::move(eqs));
        rings.push_back(Rp);
        systems.push_back(nonquasismooth_system(Vp));
        rep.primes.push_back(p);
      } catch (const error&) {
        // A coefficient denominator vanished or an equation dropped to zero
        // modulo p; draw another prime.
      }
    }
  }

  std::size_t cols = rings.size();
  std::vector<Ternary> outcome(strata.size() * cols, Ternary::unknown);
  GbConfig cfg;
  cfg.pair_budget = opt.pair_budget;
  cfg.self_check = opt.self_check;

  parallel_for(strata.size() * cols, opt.jobs, [&](std::size_t task) {
    std::size_t si = task / cols, ci = task % cols;
    const StratumIndex& I = strata[si];
    const RingPtr& ring = rings[ci];

    // Kill the coordinates outside the stratum and use the cone's scaling
    // action to pin the first stratum coordinate to 1; the remaining stratum
    // coordinates stay nonzero via saturation.
    std::map<std::string, Polynomial> sub;
    for (std::size_t j = 0; j < n; ++j)
      if (!I.contains(j)) sub.emplace(ring->name(j), Polynomial::zero(ring));
    sub.emplace(ring->name(I.indices[0]),
                Polynomial::constant(ring, FieldElem::one(ring->field())));
    std::vector<Polynomial> sys;
    sys.reserve(systems[ci].size());
    for (const Polynomial& g : systems[ci]) sys.push_back(g.substitute(sub, ring));

    std::vector<std::size_t> rest(I.indices.begin() + 1, I.indices.end());
    if (rest.empty()) {
      outcome[task] = is_empty_affine(ring, sys, cfg);
    } else {
      auto sat = saturate_by_product(ring, sys, rest);
      outcome[task] = is_empty_affine(sat[0].ring(), sat, cfg);
    }
  });

  bool any_failed = false, any_open = false;
  for (std::size_t si = 0; si < strata.size(); ++si) {
    bool all_yes = true, all_no = true, any_unknown = false;
    for (std::size_t ci = 0; ci < cols; ++ci) {
      Ternary t = outcome[si * cols + ci];
      all_yes = all_yes && t == Ternary::yes;
      all_no = all_no && t == Ternary::no;
      any_unknown = any_unknown || t == Ternary::unknown;
    }
    Verdict v = all_yes   ? Verdict::verified
                : all_no  ? Verdict::failed
                          : Verdict::inconclusive;
    rep.budget_hit = rep.budget_hit || any_unknown;
    rep.strata.emplace(strata[si], v);
  }
  for (const auto& [I, v] : rep.strata) {
    if (v == Verdict::failed) {
      any_failed = true;
      if (!rep.witness) rep.witness = I;
    }
    if (v == Verdict::inconclusive) any_open = true;
  }
  rep.overall = any_failed  ? Verdict::failed
                : any_open  ? Verdict::inconclusive
                            : Verdict::verified;
  return rep;
}

bool detect_cAx2_via_sextic(const Triplet& t, char which) {
  if (which != 'a' && which != 'b')
    throw input_error("sextic selector must be 'a' or 'b'");
  const Field& f = t.field();
  if (f.characteristic() == 2)
    throw input_error("the square completion needs characteristic != 2");
  const Polynomial& s = which == 'a' ? t.a6() : t.b6();
  const RingPtr& R = t.ring();

  FieldElem c2 = s.coefficient_of(z_squared());
  if (c2.is_zero()) return false;

  // Split s = c2*z^2 + z*f3 + f6 and form the square-completed residual
  // f6/c2 - (f3/c2)^2/4, a binary sextic in x0, x1.
  Polynomial f3 = Polynomial::zero(R), f6 = Polynomial::zero(R);
  for (const auto& term : s.terms()) {
    if (term.mono[2] == 2) continue;
    Monomial m = term.mono;
    if (m[2] == 1) {
      m[2] = 0;
      f3 += Polynomial::monomial(R, m, term.coeff);
    } else {
      f6 += Polynomial::monomial(R, m, term.coeff);
    }
  }
  FieldElem inv = c2.inverse();
  Polynomial g3 = f3 * inv;
  Polynomial residual =
      f6 * inv - g3 * g3 * FieldElem::from_int(f, 4).inverse();
  if (residual.is_zero()) return false;
  return binary_form_squarefree(residual);
}

bool ConditionReport::overall() const {
  for (const auto& item : items)
    if (item.verdict != Verdict::verified) return false;
  return true;
}

ConditionReport verify_condition(const Triplet& t, const QsmOptions& opt) {
  ConditionReport rep;

  {
    QsmReport r = member_qsm_outside(build_Xprime(t), {2, 3}, opt);
    rep.items[0].verdict = r.overall;
    if (r.witness)
      rep.items[0].evidence = "octic model has a singular cone point on " +
                              r.witness->to_string(*build_Xprime(t).ring());
    else if (r.overall == Verdict::verified)
      rep.items[0].evidence = "octic model smooth on all checked strata";
    else
      rep.items[0].evidence = "octic model scan inconclusive";
  }

  {
    auto& item = rep.items[1];
    try {
      bool good_a = detect_cAx2_via_sextic(t, 'a');
      bool good_b = detect_cAx2_via_sextic(t, 'b');
      item.verdict = good_a && good_b ? Verdict::verified : Verdict::failed;
      if (good_a && good_b)
        item.evidence = "both residual binary sextics are squarefree";
      else
        item.evidence = std::string("residual sextic of ") +
                        (good_a ? "b6" : "a6") + " fails the test";
    } catch (const precondition_error&) {
      item.verdict = Verdict::inconclusive;
      item.evidence = "coefficient field too small for the squarefree test";
    }
  }

  {
    QsmReport r1 = member_qsm_outside(build_X1(t), {2}, opt);
    QsmReport r2 = member_qsm_outside(build_X2(t), {2}, opt);
    rep.items[2].verdict = combine_two(r1.overall, r2.overall);
    auto ring = build_X1(t).ring();
    if (r1.witness)
      rep.items[2].evidence =
          "first intersection model singular on " + r1.witness->to_string(*ring);
    else if (r2.witness)
      rep.items[2].evidence = "second intersection model singular on " +
                              r2.witness->to_string(*ring);
    else if (rep.items[2].verdict == Verdict::verified)
      rep.items[2].evidence = "both intersection models smooth on all checked strata";
    else
      rep.items[2].evidence = "intersection model scan inconclusive";
  }

  rep.items[3].verdict = rep.items[1].verdict;
  rep.items[3].evidence =
      "the double points of the intersection models have the same local "
      "models as those of the octic, so the sextic test settles them";
  return rep;
}

SampleResult sample_triplet(std::uint64_t seed, SampleMode mode, const Field& f,
                            const QsmOptions& opt, int max_retries) {
  std::mt19937_64 rng(seed);
  auto R = triplet_ring(f);
  std::vector<std::size_t> all{0, 1, 2};
  auto M6 = monomials_of_weighted_degree(*R, all, 6);
  auto M8 = monomials_of_weighted_degree(*R, all, 8);
  std::vector<Monomial> M6_rest;
  for (const Monomial& m : M6)
    if (!(m == z_squared())) M6_rest.push_back(m);
  Polynomial z2 = Polynomial::monomial(R, z_squared(), FieldElem::one(f));

  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    Polynomial a6 = z2 + random_combination(R, M6_rest, rng);
    Polynomial b6 =
        mode == SampleMode::symmetric ? a6 : z2 + random_combination(R, M6_rest, rng);
    Polynomial c8 = random_combination(R, M8, rng);
    Triplet t(a6, b6, c8);
    QsmOptions o = opt;
    o.seed = rng();
    ConditionReport report = verify_condition(t, o);
    if (report.overall()) return SampleResult{t, attempt, report};
  }
  throw error("triplet sampling exhausted its retry cap");
}

bool verify_symmetry_witness(const Triplet& t, const SymmetryWitness& w) {
  const RingPtr& R = t.ring();
  const Field& f = t.field();
  for (const Polynomial* img : {&w.x0_image, &w.x1_image, &w.z_image})
    if (!img->ring()->same_structure(*R))
      throw ring_mismatch("witness images live in the wrong ring");
  auto degree_ok = [](const Polynomial& p, std::uint64_t d) {
    auto h = p.homogeneity();
    return h.kind == Polynomial::Homogeneity::Kind::of_degree && h.degree == d;
  };
  if (!degree_ok(w.x0_image, 1) || !degree_ok(w.x1_image, 1) ||
      !degree_ok(w.z_image, 3))
    throw input_error("witness images must be forms of degrees 1, 1, 3");

  Monomial mx0(3), mx1(3), mz(3);
  mx0[0] = 1;
  mx1[1] = 1;
  mz[2] = 1;
  FieldElem det = w.x0_image.coefficient_of(mx0) * w.x1_image.coefficient_of(mx1) -
                  w.x0_image.coefficient_of(mx1) * w.x1_image.coefficient_of(mx0);
  if (det.is_zero() || w.z_image.coefficient_of(mz).is_zero())
    throw input_error("witness substitution is not invertible");
  if (w.alpha.is_zero() || w.beta.is_zero() || w.gamma.is_zero())
    throw input_error("witness scalars must be nonzero");

  std::map<std::string, Polynomial> tau{{"x0", w.x0_image},
                                        {"x1", w.x1_image},
                                        {"z", w.z_image}};
  if (!(t.a6().substitute(tau, R) == t.b6() * w.alpha)) return false;
  if (!(t.b6().substitute(tau, R) == t.a6() * w.beta)) return false;
  if (!(t.c8().substitute(tau, R) == t.c8() * w.gamma)) return false;
  FieldElem g3 = w.gamma * w.gamma * w.gamma;
  FieldElem ab = w.alpha * w.alpha * w.beta * w.beta;
  (void)f;
  return g3 == ab;
}

std::optional<SymmetryWitness> find_symmetry_heuristic(const Triplet& t) {
  const RingPtr& R = t.ring();
  const Field& f = t.field();
  Polynomial x0 = Polynomial::variable(R, 0);
  Polynomial x1 = Polynomial::variable(R, 1);
  Polynomial z = Polynomial::variable(R, 2);

  struct Candidate {
    Polynomial i0, i1, iz;
  };
  std::vector<Candidate> taus = {{x0, x1, z},
                                 {x0, x1, -z},
                                 {x1, x0, z},
                                 {x1, x0, -z}};
  for (const Candidate& c : taus) {
    std::map<std::string, Polynomial> tau{{"x0", c.i0}, {"x1", c.i1}, {"z", c.iz}};
    Polynomial A = t.a6().substitute(tau, R);
    Polynomial B = t.b6().substitute(tau, R);
    Polynomial C = t.c8().substitute(tau, R);

    auto alpha = ratio_or_nothing(t.b6(), A);
    if (!alpha || alpha->is_zero()) continue;
    auto beta = ratio_or_nothing(t.a6(), B);
    if (!beta || beta->is_zero()) continue;
    FieldElem want = *alpha * *alpha * *beta * *beta;

    std::optional<FieldElem> gamma;
    if (t.c8().is_zero()) {
      gamma = cube_root(want, f);
    } else {
      gamma = is_proportional(t.c8(), C);
      if (gamma && !(*gamma * *gamma * *gamma == want)) gamma = std::nullopt;
    }
    if (!gamma || gamma->is_zero()) continue;

    SymmetryWitness w{c.i0, c.i1, c.iz, *alpha, *beta, *gamma};
    if (verify_symmetry_witness(t, w)) return w;
  }
  return std::nullopt;
}

std::optional<FieldElem> is_proportional(const Polynomial& a,
                                         const Polynomial& b) {
  if (a.is_zero())
    throw input_error("proportionality base polynomial must be nonzero");
  if (b.is_zero()) return std::nullopt;
  if (!a.ring()->same_structure(*b.ring()))
    throw ring_mismatch("proportionality across different rings");
  if (!(a.leading_monomial() == b.leading_monomial())) return std::nullopt;
  FieldElem lambda = b.leading_coefficient() / a.leading_coefficient();
  if (b == a * lambda) return lambda;
  return std::nullopt;
}

}  // namespace qfano
