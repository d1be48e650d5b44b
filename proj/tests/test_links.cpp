#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qfano/errors.hpp"
#include "qfano/family.hpp"
#include "qfano/groebner.hpp"
#include "qfano/links.hpp"
#include "qfano/parser.hpp"

using namespace qfano;

namespace {

Triplet over_qq(const std::string& a, const std::string& b,
                const std::string& c) {
  return Triplet::parse(a, b, c, Field::rationals());
}

// A triplet exercising every decomposition slot: z-linear parts in both
// sextics, a z^2 and a z^1 part in the octic form.
Triplet busy_triplet(const Field& f = Field::rationals()) {
  return Triplet::parse("z^2 + z*x0^3 + x0^6 + 2*x1^6",
                        "z^2 - z*x1^3 + x0^5*x1 + x1^6",
                        "z^2*x0*x1 + z*x0^5 + x0^8 - 3*x0^4*x1^4", f);
}

Polynomial var(const VarietySpec& V, std::size_t i) {
  return Polynomial::variable(V.ring(), i);
}

// Random normalized triplet with unconstrained lower z-parts.
Triplet random_normalized(const Field& f, std::mt19937_64& rng) {
  auto R = triplet_ring(f);
  std::vector<std::size_t> all{0, 1, 2};
  Monomial z2(3);
  z2[2] = 2;
  std::vector<Monomial> M6_rest;
  for (const Monomial& m : monomials_of_weighted_degree(*R, all, 6))
    if (!(m == z2)) M6_rest.push_back(m);
  auto M8 = monomials_of_weighted_degree(*R, all, 8);
  Polynomial lead = Polynomial::monomial(R, z2, FieldElem::one(f));
  return Triplet(lead + random_combination(R, M6_rest, rng),
                 lead + random_combination(R, M6_rest, rng),
                 random_combination(R, M8, rng));
}

}  // namespace

TEST_CASE("map specifications check their degree bookkeeping") {
  Triplet t = busy_triplet();
  VarietySpec Xp = build_Xprime(t);
  VarietySpec X1 = build_X1(t);

  // One expression per target coordinate.
  CHECK_THROWS_AS(RationalMapSpec("m", Xp, X1, {var(Xp, 0), var(Xp, 1)}),
                  input_error);

  // A degree-2 expression cannot feed a weight-4 coordinate without a
  // denominator to make up the difference.
  CHECK_THROWS_AS(
      RationalMapSpec("m", Xp, X1,
                      {var(Xp, 0), var(Xp, 1), var(Xp, 3), var(Xp, 4),
                       var(Xp, 2), var(Xp, 2) * var(Xp, 3)}),
      input_error);

  // Constant denominators are rejected rather than silently ignored.
  CHECK_THROWS_AS(
      RationalMapSpec("m", Xp, X1,
                      {var(Xp, 0), var(Xp, 1), var(Xp, 3), var(Xp, 4),
                       var(Xp, 2) * var(Xp, 3), var(Xp, 2) * var(Xp, 3)},
                      Polynomial::constant(Xp.ring(), 2)),
      input_error);

  // Zero coordinate expressions have no well-defined degree.
  CHECK_THROWS_AS(
      RationalMapSpec("m", Xp, X1,
                      {var(Xp, 0), var(Xp, 1), var(Xp, 3), var(Xp, 4),
                       Polynomial::zero(Xp.ring()), var(Xp, 2) * var(Xp, 3)}),
      input_error);

  // The four rulings of the octic model divide out y1 or y0 exactly once on
  // one coordinate and nowhere else.
  RationalMapSpec s11 = sigma_map(t, 1, 1);
  CHECK(s11.denominator_powers == std::vector<std::uint64_t>{0, 0, 0, 0, 1, 0});
  RationalMapSpec s12 = sigma_map(t, 1, 2);
  CHECK(s12.denominator_powers == std::vector<std::uint64_t>{0, 0, 0, 0, 0, 1});
  CHECK_THROWS_AS(sigma_map(t, 3, 1), input_error);
}

TEST_CASE("midpoint models have the expected shapes") {
  Triplet t = busy_triplet();

  VarietySpec Z1 = build_Z1(t);
  CHECK(Z1.ring()->weights() == std::vector<std::uint32_t>{1, 1, 2, 3, 4});
  CHECK(Z1.degrees() == std::vector<std::uint64_t>{10});

  VarietySpec Z = build_Z(t);
  CHECK(Z.ring()->weights() == std::vector<std::uint32_t>{1, 1, 3, 4, 4});
  CHECK(Z.degrees() == std::vector<std::uint64_t>{12});

  VarietySpec Zp = build_Zprime(t);
  CHECK(Zp.ring()->weights() == std::vector<std::uint32_t>{1, 1, 2, 2, 5});
  CHECK(Zp.degrees() == std::vector<std::uint64_t>{10});

  // Spot shape of Z1 for the simplest triplet.
  Triplet plain = over_qq("z^2", "z^2", "x0^8");
  auto R1 = z1_ring(Field::rationals());
  CHECK(build_Z1(plain).equations()[0] ==
        parse_poly("s^2*y + s*z^2 + y^2*z^2 + y*x0^8", R1));
  auto Rz = z_ring(Field::rationals());
  CHECK(build_Z(plain).equations()[0] ==
        parse_poly("(s0 + s1)*(s0*s1 - x0^8) + z^4", Rz));
}

TEST_CASE("triplet decomposition reads off the z parts") {
  SexticDecomposition d =
      decompose_triplet(over_qq("z^2 + z*x0^3 + x1^6", "z^2", "0"));
  auto R = triplet_ring(Field::rationals());
  CHECK(d.f3 == parse_poly("x0^3", R));
  CHECK(d.f6 == parse_poly("x1^6", R));
  CHECK(d.g3.is_zero());
  CHECK(d.g6.is_zero());
  CHECK(d.h2.is_zero());
  CHECK(d.h5.is_zero());
  CHECK(d.h8.is_zero());

  SexticDecomposition e = decompose_triplet(busy_triplet());
  CHECK(e.f3 == parse_poly("x0^3", R));
  CHECK(e.g3 == parse_poly("-x1^3", R));
  CHECK(e.h2 == parse_poly("x0*x1", R));
  CHECK(e.h5 == parse_poly("x0^5", R));
  CHECK(e.h8 == parse_poly("x0^8 - 3*x0^4*x1^4", R));

  // Normalization is a precondition, not a silent rescale.
  CHECK_THROWS_AS(decompose_triplet(over_qq("2*z^2", "z^2", "0")),
                  precondition_error);
  CHECK_THROWS_AS(decompose_triplet(over_qq("z^2", "3*z^2 + z*x0^3", "x0^8")),
                  precondition_error);
  CHECK_THROWS_AS(decompose_triplet(over_qq("x0^6", "z^2", "0")),
                  precondition_error);
}

TEST_CASE("pullbacks satisfy the exact link identities") {
  Triplet t = busy_triplet();
  VarietySpec Xp = build_Xprime(t);
  VarietySpec X1 = build_X1(t);
  VarietySpec X2 = build_X2(t);
  auto Ri = X1.ring();
  Polynomial F1 = X1.equations()[0], F2 = X1.equations()[1];
  Polynomial Fp = Xp.equations()[0];
  Polynomial b6 = t.b6().substitute({}, Ri);

  // First ruling: the first equation cancels identically, before any ideal
  // arithmetic; the second returns the octic equation itself (up to sign)
  // once the exact y1 factor is stripped.
  RationalMapSpec s11 = sigma_map(t, 1, 1);
  CHECK(cleared_pullback(s11, F1).is_zero());
  CHECK(cleared_pullback(s11, F2) == -Fp);

  // Interchanging s0 and s1 on the target leaves both pullbacks unchanged
  // because the target equations are symmetric in s0, s1.
  RationalMapSpec s12 = sigma_map(t, 1, 2);
  CHECK(cleared_pullback(s12, F1).is_zero());
  CHECK(cleared_pullback(s12, F2) == -Fp);

  RationalMapSpec s21 = sigma_map(t, 2, 1);
  CHECK(cleared_pullback(s21, X2.equations()[0]).is_zero());
  CHECK(cleared_pullback(s21, X2.equations()[1]) == -Fp);

  // theta multiplies the first equation by b6 and fixes the second.
  RationalMapSpec th = theta_map(t);
  CHECK(cleared_pullback(th, X2.equations()[0]) == b6 * F1);
  CHECK(cleared_pullback(th, X2.equations()[1]) == F2);

  // Projections: the midpoint equations decompose over the source ideals.
  Polynomial s0 = var(X1, 4), s1 = var(X1, 5), y = var(X1, 2);
  CHECK(cleared_pullback(pi_to_Z(t, 1), build_Z(t).equations()[0]) ==
        b6 * F1 + (s0 + s1) * F2);
  CHECK(cleared_pullback(pi1_to_Z1(t), build_Z1(t).equations()[0]) ==
        s1 * F1 - y * F2);
  CHECK(cleared_pullback(piprime_to_Z1(t), build_Z1(t).equations()[0]) ==
        var(Xp, 3) * Fp);

  // The same identities persist over a large prime field.
  Triplet tp = busy_triplet(Field::prime(2147483647));
  RationalMapSpec s11p = sigma_map(tp, 1, 1);
  CHECK(cleared_pullback(s11p, build_X1(tp).equations()[1]) ==
        -build_Xprime(tp).equations()[0]);
}

TEST_CASE("certification accepts the diagram and rejects corruptions") {
  Triplet t = busy_triplet();
  LinkReport rep = verify_link_suite(t);
  CHECK(rep.all_certified());
  CHECK(rep.maps.size() == 10);
  CHECK(rep.involution_identity);
  for (const auto& c : rep.maps) {
    CHECK(c.verdict == MapVerdict::certified);
    CHECK(!c.residual.has_value());
  }
  CHECK(rep.maps[0].map_name == "sigma11");
  CHECK(rep.maps[5].map_name == "theta_inverse");

  // A perturbed coordinate expression must fail with a nonzero residual.
  RationalMapSpec bad = sigma_map(t, 1, 1);
  bad.numerators[5] =
      bad.numerators[5] + parse_poly("x0^4", bad.source.ring());
  MapCertificate cert = certify_map(bad);
  CHECK(cert.verdict == MapVerdict::failed);
  REQUIRE(cert.residual.has_value());
  CHECK(!cert.residual->is_zero());

  // Same control on the theta direction.
  RationalMapSpec badth = theta_map(t);
  badth.numerators[2] =
      badth.numerators[2] + parse_poly("x0^2*z^2*x1^4", badth.source.ring());
  CHECK(certify_map(badth).verdict == MapVerdict::failed);

  // An exhausted pair budget is inconclusive for a two-equation source but
  // irrelevant for a principal source ideal, which needs no pairs at all.
  LinkOptions starved;
  starved.pair_budget = 0;
  CHECK(certify_map(theta_map(t), starved).verdict == MapVerdict::inconclusive);
  CHECK(certify_map(sigma_map(t, 1, 1), starved).verdict ==
        MapVerdict::certified);
}

TEST_CASE("certified maps stay certified after the s interchange") {
  Triplet t = busy_triplet();
  std::vector<RationalMapSpec> maps{sigma_map(t, 2, 1), theta_map(t),
                                    pi_to_Z(t, 1)};
  for (const RationalMapSpec& m : maps) {
    RationalMapSpec swapped = m;
    std::size_t n = swapped.numerators.size();
    std::swap(swapped.numerators[n - 2], swapped.numerators[n - 1]);
    std::swap(swapped.denominator_powers[n - 2],
              swapped.denominator_powers[n - 1]);
    CHECK(certify_map(swapped).verdict == MapVerdict::certified);
  }
}

TEST_CASE("theta round trip lands in the source ideal") {
  Triplet t = busy_triplet();
  VarietySpec X1 = build_X1(t);
  RationalMapSpec forward = theta_map(t);
  RationalMapSpec back = theta_map(t.swapped());
  GbResult gb = buchberger(X1.ring(), X1.equations(), GbConfig{});
  REQUIRE(!gb.budget_exceeded());
  for (const Polynomial& G : X1.equations()) {
    Polynomial composite = cleared_pullback(forward, cleared_pullback(back, G));
    CHECK(gb.basis->normal_form(composite).is_zero());
  }
}

TEST_CASE("theta degenerates to a scaling for proportional sextics") {
  Triplet prop = over_qq("z^2 + x0^6", "3*z^2 + 3*x0^6", "x0^8");
  RationalMapSpec th = theta_map(prop);
  auto Ri = th.source.ring();
  CHECK(th.numerators[2] ==
        prop.a6().substitute({}, Ri) * Polynomial::variable(Ri, 2) *
            FieldElem::from_int(Field::rationals(), 3));
  CHECK(certify_map(th).verdict == MapVerdict::certified);

  CHECK_THROWS_AS(theta_map(over_qq("0", "z^2", "x0^8")), input_error);
}

TEST_CASE("involution identity holds for random normalized triplets") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 60; ++k)
    CHECK(involution_identity_check(random_normalized(Field::rationals(), rng)));
  for (int k = 0; k < 60; ++k)
    CHECK(involution_identity_check(random_normalized(Field::prime(65537), rng)));

  // Degenerate but normalized: both sextics bare squares, no octic form.
  CHECK(involution_identity_check(over_qq("z^2", "z^2", "0")));
  CHECK_THROWS_AS(involution_identity_check(over_qq("2*z^2", "z^2", "0")),
                  precondition_error);
}

TEST_CASE("flop test separates independent from proportional sextics") {
  CHECK(flop_vs_divisorial_test(busy_triplet()) == FlopVerdict::link);
  CHECK(flop_vs_divisorial_test(over_qq("z^2 + x0^6", "7*z^2 + 7*x0^6",
                                        "x0^8")) ==
        FlopVerdict::no_maximal_center);
  CHECK(flop_vs_divisorial_test(over_qq("z^2", "z^2", "x0^8")) ==
        FlopVerdict::no_maximal_center);
  CHECK(flop_vs_divisorial_test(over_qq("0", "z^2", "x0^8")) ==
        FlopVerdict::no_maximal_center);
  CHECK(to_string(FlopVerdict::link) == "link");

  // Geometric cross-check: the locus contracted by the midpoint projections
  // has cone dimension 3 (a surface) exactly in the proportional case and
  // cone dimension 2 (a curve) otherwise.
  auto delta_dim = [](const Triplet& tt) {
    auto R6 = intersection_ring(tt.field());
    Polynomial s0 = Polynomial::variable(R6, 4);
    Polynomial s1 = Polynomial::variable(R6, 5);
    std::vector<Polynomial> gens{s0 + s1, s0 * s1 - tt.c8().substitute({}, R6),
                                 tt.a6().substitute({}, R6),
                                 tt.b6().substitute({}, R6)};
    GbResult g = buchberger(R6, gens, GbConfig{});
    REQUIRE(!g.budget_exceeded());
    return krull_dimension(*g.basis);
  };
  CHECK(delta_dim(busy_triplet()) == 2);
  CHECK(delta_dim(over_qq("z^2 + x0^6", "7*z^2 + 7*x0^6", "x0^8")) == 3);
}

TEST_CASE("link suite certifies sampled members over both fields") {
  SampleResult fp = sample_triplet(42, SampleMode::general, Field::prime(1009));
  LinkReport rp = verify_link_suite(fp.triplet);
  CHECK(rp.all_certified());

  SampleResult qq = sample_triplet(42, SampleMode::general, Field::rationals());
  LinkReport rq = verify_link_suite(qq.triplet);
  CHECK(rq.all_certified());

  // Symmetric members keep the whole diagram intact.
  SampleResult sym = sample_triplet(9, SampleMode::symmetric, Field::prime(1009));
  CHECK(verify_link_suite(sym.triplet).all_certified());
}
