#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "qfano/errors.hpp"
#include "qfano/family.hpp"
#include "qfano/parser.hpp"
#include "qfano/wps.hpp"

using namespace qfano;

namespace {

Triplet over_qq(const std::string& a, const std::string& b,
                const std::string& c) {
  return Triplet::parse(a, b, c, Field::rationals());
}

Triplet over_1009(const std::string& a, const std::string& b,
                  const std::string& c) {
  return Triplet::parse(a, b, c, Field::prime(1009));
}

FieldElem rat(const std::string& s) {
  return FieldElem::from_string(Field::rationals(), s);
}

SymmetryWitness identity_witness(const Triplet& t, const FieldElem& alpha,
                                 const FieldElem& beta, const FieldElem& gamma) {
  const RingPtr& R = t.ring();
  return SymmetryWitness{Polynomial::variable(R, 0), Polynomial::variable(R, 1),
                         Polynomial::variable(R, 2), alpha, beta, gamma};
}

}  // namespace

TEST_CASE("triplet construction validates the input forms") {
  Field q = Field::rationals();
  CHECK_NOTHROW(Triplet::parse("z^2 + x0^6", "z^2 - x1^6", "x0^8", q));
  CHECK_NOTHROW(Triplet::parse("0", "0", "0", q));

  CHECK_THROWS_AS(Triplet::parse("x0^5", "z^2", "x0^8", q), input_error);
  CHECK_THROWS_AS(Triplet::parse("z^2", "z^2", "x0^6", q), input_error);
  CHECK_THROWS_AS(Triplet::parse("z^2 + x0^5", "z^2", "x0^8", q), input_error);
  CHECK_THROWS_AS(Triplet::parse("y0^3", "z^2", "x0^8", q), input_error);

  // Mixed coefficient fields are rejected at construction.
  auto Rq = triplet_ring(q);
  auto Rp = triplet_ring(Field::prime(7));
  CHECK_THROWS_AS(Triplet(parse_poly("z^2", Rq), parse_poly("z^2", Rp),
                          parse_poly("x0^8", Rq)),
                  ring_mismatch);

  Triplet t = over_qq("z^2 + x0^6", "z^2 + x1^6", "x0^8");
  CHECK(t.swapped().a6() == t.b6());
  CHECK(t.swapped().b6() == t.a6());
  CHECK(t.swapped().c8() == t.c8());
  CHECK(t.swapped().swapped() == t);

  Triplet tp = t.reduced_mod(1009);
  CHECK(tp.field().characteristic() == 1009);
  CHECK(tp == over_1009("z^2 + x0^6", "z^2 + x1^6", "x0^8"));
}

TEST_CASE("triplet JSON round trip") {
  Triplet t = over_qq("z^2 + 1/3*x0^6", "z^2 - x0*x1^5", "x0^8 + 7*x0^4*x1^4");
  Triplet back = Triplet::from_json_text(t.to_json_text());
  CHECK(back == t);
  CHECK(back.field().characteristic() == 0);

  Triplet tp = over_1009("z^2", "z^2 + x1^6", "x1^8");
  CHECK(Triplet::from_json_text(tp.to_json_text()) == tp);

  CHECK_THROWS_AS(Triplet::from_json_text("{"), parse_error);
  CHECK_THROWS_AS(Triplet::from_json_text("[1,2]"), input_error);
  CHECK_THROWS_AS(
      Triplet::from_json_text(R"({"field":"QQ","a6":"z^2","b6":"z^2"})"),
      input_error);
  CHECK_THROWS_AS(
      Triplet::from_json_text(
          R"({"field":"QQ","a6":"x0^5","b6":"z^2","c8":"x0^8"})"),
      input_error);
}

TEST_CASE("model builders assemble the expected equations") {
  Triplet t = over_qq("z^2", "z^2", "x0^8");

  VarietySpec Xp = build_Xprime(t);
  REQUIRE(Xp.equations().size() == 1);
  auto Rh = Xp.ring();
  CHECK(Xp.equations()[0] ==
        parse_poly("y0^2*y1^2 + y0*z^2 + y1*z^2 + x0^8", Rh));

  VarietySpec X1 = build_X1(t);
  REQUIRE(X1.equations().size() == 2);
  auto Ri = X1.ring();
  CHECK(X1.equations()[0] == parse_poly("s0*y + s1*y + z^2", Ri));
  CHECK(X1.equations()[1] == parse_poly("s0*s1 - y*z^2 - x0^8", Ri));

  // The second model is the first one built from the swapped triplet.
  Triplet u = over_qq("z^2 + x0^6", "z^2 - x1^6", "x0^8 + x1^8");
  VarietySpec X2 = build_X2(u);
  VarietySpec X1s = build_X1(u.swapped());
  CHECK(X2.equations()[0] == X1s.equations()[0]);
  CHECK(X2.equations()[1] == X1s.equations()[1]);

  // A symmetric triplet makes the two intersection models coincide.
  Triplet sym = over_qq("z^2 + x0^6", "z^2 + x0^6", "x1^8");
  CHECK(build_X1(sym).equations()[0] == build_X2(sym).equations()[0]);
  CHECK(build_X1(sym).equations()[1] == build_X2(sym).equations()[1]);

  auto dp = anticanonical_degree(Xp);
  CHECK(dp.cube == mpq_class(2, 3));
  CHECK(dp.fano_index == 1);
  auto d1 = anticanonical_degree(X1);
  CHECK(d1.cube == mpq_class(1, 2));
  CHECK(d1.fano_index == 1);
}

TEST_CASE("strata scan flags a degenerate member and names a witness") {
  // With c8 = 0 and both sextics equal to z^2 the octic model degenerates to
  // y0^2 y1^2 + (y0 + y1) z^2, which is singular along all six coordinate
  // loci that avoid z; the scan must fail and point at one of them.
  Triplet t = over_1009("z^2", "z^2", "0");
  VarietySpec V = build_Xprime(t);
  QsmReport r = member_qsm_outside(V, {2, 3});

  CHECK(r.overall == Verdict::failed);
  CHECK(r.primes.empty());
  CHECK(r.strata.size() == 29);  // 31 strata minus the two excused points
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->to_string(*V.ring()) == "{x0}");
  CHECK(r.strata.at(*r.witness) == Verdict::failed);
  CHECK(r.strata.at(StratumIndex::of({0, 1})) == Verdict::failed);
  CHECK(r.strata.at(StratumIndex::of({4})) == Verdict::verified);

  // The excused points are skipped as single-variable strata only; mixed
  // strata through them are still checked.
  CHECK(r.strata.count(StratumIndex::of({2})) == 0);
  CHECK(r.strata.count(StratumIndex::of({3})) == 0);
  CHECK(r.strata.count(StratumIndex::of({2, 3})) == 1);
}

TEST_CASE("strata scan is vacuous when every stratum is excused") {
  auto R = WeightedRing::make({"x"}, {1}, Field::prime(1009));
  VarietySpec V(R, {parse_poly("x^2", R)});
  QsmReport r = member_qsm_outside(V, {0});
  CHECK(r.overall == Verdict::verified);
  CHECK(r.strata.empty());
  CHECK(!r.witness.has_value());
}

TEST_CASE("rational scans agree between modular and exact arithmetic") {
  Field q = Field::rationals();

  // A small member that is quasismooth away from the two excused points.
  Triplet good = over_qq("z^2 + x0^6", "z^2 + x1^6", "x0^8 + x1^8");
  QsmOptions exact;
  exact.exact = true;
  QsmReport re = member_qsm_outside(build_Xprime(good), {2, 3}, exact);
  CHECK(re.overall == Verdict::verified);
  CHECK(re.primes.empty());

  QsmOptions two;
  two.primes = 2;
  two.seed = 11;
  QsmReport rm = member_qsm_outside(build_Xprime(good), {2, 3}, two);
  CHECK(rm.overall == Verdict::verified);
  REQUIRE(rm.primes.size() == 2);
  CHECK(rm.primes[0] != rm.primes[1]);
  CHECK(!rm.budget_hit);

  // This member looks plausible but hides a singular point on the dense
  // z = 0 stratum; the modular and exact scans agree on the verdict and on
  // the stratum that carries it.
  Triplet subtle = over_qq("z^2 + x0^6 + x1^6", "z^2 + x0^5*x1 + x0*x1^5",
                           "x0^8 + x1^8 + x0^4*x1^4");
  QsmOptions seeded;
  seeded.seed = 5;
  QsmReport rs = member_qsm_outside(build_Xprime(subtle), {2, 3}, seeded);
  QsmReport rx = member_qsm_outside(build_Xprime(subtle), {2, 3}, exact);
  CHECK(rs.overall == Verdict::failed);
  CHECK(rx.overall == Verdict::failed);
  REQUIRE(rs.witness.has_value());
  REQUIRE(rx.witness.has_value());
  CHECK(rs.witness->to_string(*build_Xprime(subtle).ring()) == "{x0,x1,y0,y1}");
  CHECK(*rs.witness == *rx.witness);
}

TEST_CASE("exhausted pair budget surfaces as inconclusive") {
  Triplet good = over_qq("z^2 + x0^6", "z^2 + x1^6", "x0^8 + x1^8");
  QsmOptions tiny;
  tiny.pair_budget = 2;
  tiny.primes = 1;
  tiny.seed = 3;
  QsmReport r = member_qsm_outside(build_Xprime(good), {2, 3}, tiny);
  CHECK(r.overall == Verdict::inconclusive);
  CHECK(r.budget_hit);
  CHECK(!r.witness.has_value());
}

TEST_CASE("residual sextic detects the double point type") {
  Field q = Field::rationals();

  // z^2 + x0^5 x1 + x0 x1^5 leaves the squarefree residual x0 x1 (x0^4+x1^4).
  Triplet t = over_qq("z^2 + x0^5*x1 + x0*x1^5", "z^2 + x0^6", "0");
  CHECK(detect_cAx2_via_sextic(t, 'a'));
  CHECK(!detect_cAx2_via_sextic(t, 'b'));  // residual x0^6 has a sextuple root

  // No z^2 term at all: the test cannot pass.
  Triplet noz = over_qq("x0^6 + x1^6", "z^2 + x0^5*x1", "0");
  CHECK(!detect_cAx2_via_sextic(noz, 'a'));

  // A perfect square completion leaves the zero residual.
  Triplet sq = over_qq("z^2 + z*x0^3 + 1/4*x0^6", "z^2", "0");
  CHECK(!detect_cAx2_via_sextic(sq, 'a'));

  // Residue fields below the degree bound cannot certify squarefreeness.
  CHECK_THROWS_AS(
      detect_cAx2_via_sextic(Triplet::parse("z^2 + x0^5*x1", "z^2", "0",
                                            Field::prime(5)),
                             'a'),
      precondition_error);
  CHECK_THROWS_AS(
      detect_cAx2_via_sextic(Triplet::parse("z^2 + x0*x1", "z^2", "0",
                                            Field::prime(2)),
                             'a'),
      input_error);
  CHECK_THROWS_AS(detect_cAx2_via_sextic(t, 'q'), input_error);
}

TEST_CASE("double point detection is invariant under coordinate changes") {
  Field q = Field::rationals();
  auto R = triplet_ring(q);
  Triplet t = over_qq("z^2 + z*x0^3 + x0^5*x1 + x0*x1^5", "z^2 + x1^6", "x0^8");
  REQUIRE(detect_cAx2_via_sextic(t, 'a'));

  // Shear z by a cubic and mix the degree-one variables invertibly; the
  // square-completed residual transforms by the linear part alone, so the
  // verdict is unchanged.
  std::map<std::string, Polynomial> tau{
      {"x0", parse_poly("x0 + 2*x1", R)},
      {"x1", parse_poly("x0 - x1", R)},
      {"z", parse_poly("z + x0^2*x1 - 5*x1^3", R)}};
  Triplet moved(t.a6().substitute(tau, R), t.b6().substitute(tau, R),
                t.c8().substitute(tau, R));
  CHECK(detect_cAx2_via_sextic(moved, 'a'));

  Triplet flat = over_qq("z^2 + x0^6", "z^2", "0");
  REQUIRE(!detect_cAx2_via_sextic(flat, 'a'));
  Triplet flat_moved(flat.a6().substitute(tau, R), flat.b6().substitute(tau, R),
                     flat.c8().substitute(tau, R));
  CHECK(!detect_cAx2_via_sextic(flat_moved, 'a'));
}

TEST_CASE("full verification rejects a degenerate triplet item by item") {
  Triplet bad = over_1009("x0^6", "x0^6", "x0^8");
  ConditionReport rep = verify_condition(bad);
  CHECK(!rep.overall());
  CHECK(rep.items[0].verdict == Verdict::failed);
  CHECK(rep.items[1].verdict == Verdict::failed);
  CHECK(rep.items[2].verdict == Verdict::failed);
  CHECK(rep.items[3].verdict == Verdict::failed);
  CHECK(rep.items[0].evidence.find("{x1}") != std::string::npos);
}

TEST_CASE("sampling finds verified members deterministically") {
  Field fp = Field::prime(1009);
  SampleResult a = sample_triplet(42, SampleMode::general, fp);
  SampleResult b = sample_triplet(42, SampleMode::general, fp);
  CHECK(a.triplet == b.triplet);
  CHECK(a.retries == 0);
  CHECK(a.report.overall());
  for (const auto& item : a.report.items)
    CHECK(item.verdict == Verdict::verified);

  // The z^2 coefficients are pinned so the double point test stays in play.
  Monomial z2(3);
  z2[2] = 2;
  CHECK(a.triplet.a6().coefficient_of(z2) == FieldElem::one(fp));
  CHECK(a.triplet.b6().coefficient_of(z2) == FieldElem::one(fp));
  CHECK(!(a.triplet.a6() == a.triplet.b6()));

  // Swapping the sextics swaps the two intersection models but does not
  // change any of the four verdicts.
  ConditionReport swapped = verify_condition(a.triplet.swapped());
  CHECK(swapped.overall());

  SampleResult sym = sample_triplet(9, SampleMode::symmetric, fp);
  CHECK(sym.triplet.a6() == sym.triplet.b6());
  CHECK(sym.report.overall());

  SampleResult rq = sample_triplet(42, SampleMode::general, Field::rationals());
  CHECK(rq.report.overall());
  CHECK(rq.retries == 0);
}

TEST_CASE("symmetry witnesses are checked exactly") {
  Field q = Field::rationals();
  Triplet same = over_qq("z^2 + x0^6 + x1^6", "z^2 + x0^6 + x1^6",
                         "x0^8 + x1^8");
  CHECK(verify_symmetry_witness(same, identity_witness(same, rat("1"), rat("1"),
                                                       rat("1"))));

  // b6 = 2 a6 needs alpha = 1/2 and beta = 2; the reversed scalars fail.
  Triplet twice = over_qq("z^2 + x0^6", "2*z^2 + 2*x0^6", "x0^8 + x1^8");
  CHECK(verify_symmetry_witness(
      twice, identity_witness(twice, rat("1/2"), rat("2"), rat("1"))));
  CHECK(!verify_symmetry_witness(
      twice, identity_witness(twice, rat("2"), rat("1/2"), rat("1"))));

  // Scalars that match the forms but break gamma^3 = alpha^2 beta^2 fail.
  CHECK(!verify_symmetry_witness(
      twice, identity_witness(twice, rat("1/2"), rat("2"), rat("-1"))));

  Triplet asym = over_qq("z^2 + x0^6", "z^2 + x0^5*x1", "x0^8");
  CHECK(!verify_symmetry_witness(asym, identity_witness(asym, rat("1"), rat("1"),
                                                        rat("1"))));

  // The swap of the degree-one variables exchanges mirrored sextics.
  Triplet mirror = over_qq("z^2 + x0^6 + 2*x1^6", "z^2 + 2*x0^6 + x1^6",
                           "x0^8 + x1^8");
  auto R = mirror.ring();
  SymmetryWitness swap{Polynomial::variable(R, 1), Polynomial::variable(R, 0),
                       Polynomial::variable(R, 2), rat("1"), rat("1"), rat("1")};
  CHECK(verify_symmetry_witness(mirror, swap));

  // Malformed witnesses are input errors, not mere failures.
  CHECK_THROWS_AS(
      verify_symmetry_witness(
          same, SymmetryWitness{parse_poly("x0^2", R), parse_poly("x1", R),
                                parse_poly("z", R), rat("1"), rat("1"),
                                rat("1")}),
      input_error);
  CHECK_THROWS_AS(
      verify_symmetry_witness(
          same, SymmetryWitness{parse_poly("x0", R), parse_poly("x0", R),
                                parse_poly("z", R), rat("1"), rat("1"),
                                rat("1")}),
      input_error);
  CHECK_THROWS_AS(
      verify_symmetry_witness(
          same, SymmetryWitness{parse_poly("x0", R), parse_poly("x1", R),
                                parse_poly("x0^3", R), rat("1"), rat("1"),
                                rat("1")}),
      input_error);
  CHECK_THROWS_AS(verify_symmetry_witness(
                      same, identity_witness(same, rat("0"), rat("1"), rat("1"))),
                  input_error);
}

TEST_CASE("heuristic symmetry search covers the proportional cases") {
  Triplet same = over_qq("z^2 + x0^6 + x1^6", "z^2 + x0^6 + x1^6",
                         "x0^8 + x1^8");
  auto w = find_symmetry_heuristic(same);
  REQUIRE(w.has_value());
  CHECK(verify_symmetry_witness(same, *w));
  CHECK(w->alpha == rat("1"));

  // Proportional sextics always carry a witness: the identity with the
  // reciprocal ratios satisfies gamma^3 = alpha^2 beta^2 = 1.
  Triplet prop = over_qq("z^2 + x0^6", "3*z^2 + 3*x0^6", "x0^8 + x1^8");
  auto wp = find_symmetry_heuristic(prop);
  REQUIRE(wp.has_value());
  CHECK(verify_symmetry_witness(prop, *wp));
  CHECK(wp->alpha == rat("1/3"));
  CHECK(wp->beta == rat("3"));
  CHECK(wp->gamma == rat("1"));

  // A vanishing c8 leaves gamma unconstrained; a cube root must be produced.
  Triplet noc = over_qq("z^2 + x0^6", "5*z^2 + 5*x0^6", "0");
  auto wn = find_symmetry_heuristic(noc);
  REQUIRE(wn.has_value());
  CHECK(verify_symmetry_witness(noc, *wn));

  // Mirrored sextics are matched through the variable swap.
  Triplet mirror = over_qq("z^2 + x0^6 + 2*x1^6", "z^2 + 2*x0^6 + x1^6",
                           "x0^8 + x1^8");
  auto wm = find_symmetry_heuristic(mirror);
  REQUIRE(wm.has_value());
  CHECK(verify_symmetry_witness(mirror, *wm));

  // Unrelated sextics admit no witness among the candidate substitutions.
  Triplet generic = over_qq("z^2 + x0^6 + 7*x0^3*x1^3", "z^2 + x0^5*x1 - x1^6",
                            "x0^8");
  CHECK(!find_symmetry_heuristic(generic).has_value());

  // Everything the search returns must pass the exact checker; exercise the
  // contract across a modular field too.
  Field fp = Field::prime(1009);
  Triplet modular = Triplet::parse("z^2 + 11*x0^6", "44*z^2 + 484*x0^6",
                                   "x0^8 + x1^8", fp);
  auto wf = find_symmetry_heuristic(modular);
  REQUIRE(wf.has_value());
  CHECK(verify_symmetry_witness(modular, *wf));
}

TEST_CASE("proportionality helper") {
  auto R = triplet_ring(Field::rationals());
  Polynomial a = parse_poly("z^2 + x0^6", R);
  auto lam = is_proportional(a, parse_poly("3*z^2 + 3*x0^6", R));
  REQUIRE(lam.has_value());
  CHECK(*lam == rat("3"));
  CHECK(!is_proportional(a, parse_poly("z^2 + x1^6", R)).has_value());
  CHECK(!is_proportional(a, parse_poly("z^2 + 2*x0^6", R)).has_value());
  CHECK(!is_proportional(a, Polynomial::zero(R)).has_value());
  CHECK_THROWS_AS(is_proportional(Polynomial::zero(R), a), input_error);
  CHECK_THROWS_AS(
      is_proportional(a, parse_poly("z^2", triplet_ring(Field::prime(7)))),
      ring_mismatch);
}

TEST_CASE("singular point inventory of the built models") {
  Triplet t = over_qq("z^2 + x0^6 + x1^6", "z^2 + x0^5*x1 + x0*x1^5",
                      "x0^8 + x1^8");
  VarietySpec Xp = build_Xprime(t);
  VarietySpec X1 = build_X1(t);
  VarietySpec X2 = build_X2(t);

  // The octic model carries one quotient point at the z vertex; the two
  // excused points have no pure tangent monomial, which is exactly where the
  // residual sextic test takes over.
  auto qz = coordinate_point_quotient_type(Xp, 4);
  REQUIRE(qz.has_value());
  CHECK(qz->to_string() == "1/3(1,1,2)");
  CHECK(is_terminal_quotient(*qz));
  CHECK(!coordinate_point_quotient_type(Xp, 2).has_value());
  CHECK(!coordinate_point_quotient_type(Xp, 3).has_value());
  CHECK(detect_cAx2_via_sextic(t, 'a'));
  CHECK(detect_cAx2_via_sextic(t, 'b'));

  // Each intersection model has two quarter points at the s vertices and an
  // undetermined point at the y vertex.
  for (const VarietySpec* X : {&X1, &X2}) {
    for (std::size_t i : {std::size_t{4}, std::size_t{5}}) {
      auto qs = coordinate_point_quotient_type(*X, i);
      REQUIRE(qs.has_value());
      CHECK(qs->to_string() == "1/4(1,1,3)");
      CHECK(is_terminal_quotient(*qs));
    }
    CHECK(!coordinate_point_quotient_type(*X, 2).has_value());
  }
}
