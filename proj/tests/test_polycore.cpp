#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qfano/parser.hpp"
#include "qfano/polynomial.hpp"

using namespace qfano;

namespace {

RingPtr ring11223(const Field& f = Field::rationals()) {
  return WeightedRing::make({"x0", "x1", "y0", "y1", "z"}, {1, 1, 2, 2, 3}, f);
}

RingPtr ring113(const Field& f = Field::rationals()) {
  return WeightedRing::make({"x0", "x1", "z"}, {1, 1, 3}, f);
}

Monomial mono(std::initializer_list<std::uint32_t> e) {
  return Monomial(std::vector<std::uint32_t>(e));
}

}  // namespace

TEST_CASE("field arithmetic over the rationals") {
  Field q = Field::rationals();
  FieldElem a = FieldElem::from_string(q, "2/3");
  FieldElem b = FieldElem::from_string(q, "-1/6");
  CHECK((a + b).to_string() == "1/2");
  CHECK((a * b).to_string() == "-1/9");
  CHECK((a / b).to_string() == "-4");
  CHECK(a.inverse().to_string() == "3/2");
  CHECK((-a).to_string() == "-2/3");
  CHECK(FieldElem::from_string(q, "4/6") == a);
  CHECK_THROWS_AS(FieldElem::zero(q).inverse(), precondition_error);
}

TEST_CASE("field arithmetic in F_p") {
  Field f7 = Field::prime(7);
  FieldElem a = FieldElem::from_int(f7, 10);   // 3
  FieldElem b = FieldElem::from_int(f7, -1);   // 6
  CHECK(a.residue() == 3);
  CHECK(b.residue() == 6);
  CHECK((a * b).residue() == 4);
  CHECK((a + b).residue() == 2);
  CHECK(a.inverse().residue() == 5);  // 3*5 = 15 = 1 mod 7
  CHECK(FieldElem::from_string(f7, "5/3").residue() == 4);  // 5 * 3^-1
  CHECK_THROWS(Field::prime(6));
  CHECK_THROWS(FieldElem::from_string(f7, "1/7"));
}

TEST_CASE("primality and prime sampling") {
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(1009));
  CHECK(is_prime_u64(2147483647ull));
  CHECK_FALSE(is_prime_u64(1));
  CHECK_FALSE(is_prime_u64(1009 * 1013ull));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    std::uint64_t p = random_prime(rng, 1009, 1ull << 31);
    CHECK(p >= 1009);
    CHECK(p < (1ull << 31));
    CHECK(is_prime_u64(p));
  }
}

TEST_CASE("modular square roots") {
  std::mt19937_64 rng(11);
  for (std::uint64_t p : {1009ull, 7919ull, 2147483647ull}) {
    Field f = Field::prime(p);
    int residues = 0;
    for (int i = 0; i < 50; ++i) {
      FieldElem a = FieldElem::residue(f, uniform_u64(rng, p));
      auto r = sqrt_mod(a);
      if (r) {
        ++residues;
        CHECK(*r * *r == a);
      }
    }
    CHECK(residues > 10);  // about half of all residues are squares
  }
}

TEST_CASE("parser accepts the weighted-degree-8 sample") {
  auto R = ring11223();
  Polynomial p = parse_poly("y0^2*y1^2 + y0*z^2", R);
  CHECK(p.term_count() == 2);
  auto h = p.homogeneity();
  CHECK(h.kind == Polynomial::Homogeneity::Kind::of_degree);
  CHECK(h.degree == 8);
  CHECK(p.coefficient_of(mono({0, 0, 2, 2, 0})).is_one());
  CHECK(p.coefficient_of(mono({0, 0, 1, 0, 2})).is_one());
}

TEST_CASE("parser rejects implicit multiplication and unbound names") {
  auto R = ring11223();
  CHECK_THROWS_AS(parse_poly("x0 x1", R), parse_error);
  CHECK_THROWS_AS(parse_poly("2x0", R), parse_error);
  try {
    parse_poly("x0 + q", R);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(parse_poly("x0 +", R), parse_error);
  CHECK_THROWS_AS(parse_poly("(x0", R), parse_error);
  CHECK_THROWS_AS(parse_poly("x0 / 2", R), parse_error);
  CHECK_THROWS_AS(parse_poly("1/0", R), parse_error);
  CHECK_THROWS_AS(parse_poly("", R), parse_error);
}

TEST_CASE("parser handles rational coefficients, parentheses, and signs") {
  auto R = ring113();
  Polynomial p = parse_poly("-x0^2*x1 + 3/2*(z - x1^3) - 2", R);
  Polynomial q = parse_poly("3/2*z - x0^2*x1 - 3/2*x1^3 - 2", R);
  CHECK(p == q);
  CHECK(parse_poly("x0 - x0", R).is_zero());
  CHECK(parse_poly("5/10*x0", R) == parse_poly("1/2*x0", R));
}

TEST_CASE("print/parse round trip") {
  auto R = ring11223();
  std::mt19937_64 rng(17);
  std::vector<std::size_t> all{0, 1, 2, 3, 4};
  for (int it = 0; it < 60; ++it) {
    auto monos = monomials_of_weighted_degree(*R, all, 4 + uniform_u64(rng, 6));
    Polynomial p = random_combination(R, monos, rng);
    Polynomial q = parse_poly(p.to_string(), R);
    CHECK(p == q);
  }
  Field f = Field::prime(1009);
  auto Rp = ring11223(f);
  for (int it = 0; it < 30; ++it) {
    auto monos = monomials_of_weighted_degree(*Rp, all, 6);
    Polynomial p = random_combination(Rp, monos, rng);
    CHECK(parse_poly(p.to_string(), Rp) == p);
  }
  CHECK(parse_poly("0", R).is_zero());
  CHECK(Polynomial::zero(R).to_string() == "0");
}

TEST_CASE("weighted degree and homogeneity") {
  auto R = ring11223();
  Polynomial p = parse_poly("x0*z + y0*x1^2", R);  // degrees 4 and 4
  CHECK(p.weighted_degree() == 4);
  CHECK(p.is_homogeneous());
  Polynomial q = parse_poly("x0*z + y0", R);
  CHECK(q.homogeneity().kind == Polynomial::Homogeneity::Kind::inhomogeneous);
  CHECK(Polynomial::zero(R).homogeneity().kind ==
        Polynomial::Homogeneity::Kind::any);
}

TEST_CASE("ring laws on random triples") {
  std::mt19937_64 rng(23);
  std::vector<std::size_t> all{0, 1, 2};
  for (const Field& f : {Field::rationals(), Field::prime(101)}) {
    auto R = ring113(f);
    for (int it = 0; it < 100; ++it) {
      auto m4 = monomials_of_weighted_degree(*R, all, 4);
      auto m5 = monomials_of_weighted_degree(*R, all, 5);
      Polynomial a = random_combination(R, m4, rng, 9);
      Polynomial b = random_combination(R, m5, rng, 9);
      Polynomial c = random_combination(R, m4, rng, 9);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a + c) * b == a * b + c * b);
      CHECK((a * b) * c == a * (b * c));
      CHECK((a - a).is_zero());
    }
  }
}

TEST_CASE("derivatives satisfy Leibniz and Euler") {
  std::mt19937_64 rng(29);
  auto R = ring11223();
  std::vector<std::size_t> all{0, 1, 2, 3, 4};
  for (int it = 0; it < 40; ++it) {
    Polynomial a = random_combination(R, monomials_of_weighted_degree(*R, all, 4), rng, 7);
    Polynomial b = random_combination(R, monomials_of_weighted_degree(*R, all, 5), rng, 7);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK((a * b).derivative(i) ==
            a.derivative(i) * b + a * b.derivative(i));
    }
    // Weighted Euler identity: sum_i w_i x_i d_i(f) = deg(f) * f.
    Polynomial acc = Polynomial::zero(R);
    for (std::size_t i = 0; i < 5; ++i)
      acc += Polynomial::variable(R, i) * a.derivative(i) *
             FieldElem::from_int(R->field(), R->weight(i));
    if (!a.is_zero()) CHECK(acc == a * FieldElem::from_int(R->field(), 4));
  }
}

TEST_CASE("derivative drops multiples of the characteristic") {
  auto R2 = WeightedRing::make({"x0", "x1"}, {1, 1}, Field::prime(2));
  Polynomial p = parse_poly("x0^2", R2);
  CHECK(p.derivative(0).is_zero());
  auto R3 = WeightedRing::make({"x0"}, {1}, Field::prime(3));
  CHECK(parse_poly("x0^3 + x0", R3).derivative(0) ==
        Polynomial::constant(R3, 1));
}

TEST_CASE("substitution is a ring homomorphism") {
  std::mt19937_64 rng(31);
  auto S = ring113();
  auto T = ring11223();
  std::map<std::string, Polynomial> phi{
      {"x0", parse_poly("x0 + x1", T)},
      {"x1", parse_poly("x1", T)},
      {"z", parse_poly("z - x0^3", T)},
  };
  std::vector<std::size_t> all{0, 1, 2};
  for (int it = 0; it < 40; ++it) {
    Polynomial a = random_combination(S, monomials_of_weighted_degree(*S, all, 6), rng, 5);
    Polynomial b = random_combination(S, monomials_of_weighted_degree(*S, all, 6), rng, 5);
    CHECK((a * b).substitute(phi, T) ==
          a.substitute(phi, T) * b.substitute(phi, T));
    CHECK((a + b).substitute(phi, T) ==
          a.substitute(phi, T) + b.substitute(phi, T));
  }
  // Empty assignment embeds along names.
  Polynomial a = parse_poly("x0*x1^2*z", S);
  CHECK(a.substitute({}, T) == parse_poly("x0*x1^2*z", T));
}

TEST_CASE("substituting the degree-shift example") {
  auto T = ring11223();
  auto Z = WeightedRing::make({"x0", "x1", "y0", "y1", "t"}, {1, 1, 2, 2, 5},
                              Field::rationals());
  Polynomial tsq = parse_poly("t^2", Z);
  Polynomial image = parse_poly("(y0 + y1)*z", T);
  Polynomial r = tsq.substitute({{"t", image}}, T);
  CHECK(r == parse_poly("y0^2*z^2 + 2*y0*y1*z^2 + y1^2*z^2", T));
  CHECK(r.weighted_degree() == 10);
}

TEST_CASE("evaluation at points") {
  auto R = ring113(Field::prime(13));
  Polynomial p = parse_poly("x0^2*x1 + 2*z", R);
  std::vector<FieldElem> pt{FieldElem::from_int(R->field(), 3),
                            FieldElem::from_int(R->field(), 2),
                            FieldElem::from_int(R->field(), 5)};
  CHECK(p.eval(pt).residue() == (9 * 2 + 10) % 13);
}

TEST_CASE("reduction modulo p") {
  auto R = ring113();
  auto Rp = ring113(Field::prime(5));
  Polynomial p = parse_poly("10*x0^6 + 3*x1^6 + 1/2*z^2", R);
  Polynomial q = p.reduce_mod(Rp);
  // 10 = 0, 3 = 3, 1/2 = 3 mod 5.
  CHECK(q == parse_poly("3*x1^6 + 3*z^2", Rp));
  CHECK_THROWS(parse_poly("1/5*x0", R).reduce_mod(Rp));
}

TEST_CASE("monomial enumeration counts") {
  auto R = ring113();
  auto m6 = monomials_of_weighted_degree(*R, {0, 1, 2}, 6);
  CHECK(m6.size() == 12);
  auto m8 = monomials_of_weighted_degree(*R, {0, 1, 2}, 8);
  CHECK(m8.size() == 18);
  auto m0 = monomials_of_weighted_degree(*R, {0, 1, 2}, 0);
  REQUIRE(m0.size() == 1);
  CHECK(m0[0].is_one());
  // Degree 1 in the z-only list: impossible.
  CHECK(monomials_of_weighted_degree(*R, {2}, 1).empty());
}

TEST_CASE("binary form squarefree tests") {
  auto R = ring113();
  CHECK(binary_form_squarefree(parse_poly("x0^5*x1 + x0*x1^5", R)));
  CHECK_FALSE(binary_form_squarefree(parse_poly("x0^2*(x0 + x1)^4", R)));
  CHECK(binary_form_squarefree(parse_poly("x0", R)));
  CHECK(binary_form_squarefree(parse_poly("x0*x1", R)));
  CHECK_FALSE(binary_form_squarefree(parse_poly("x0^2", R)));
  CHECK(binary_form_squarefree(parse_poly("x0^6 + x1^6", R)));
  CHECK_FALSE(binary_form_squarefree(parse_poly("x0^6 + 2*x0^3*x1^3 + x1^6", R)));
  CHECK_THROWS_AS(binary_form_squarefree(parse_poly("x0*z", R)),
                  precondition_error);
  CHECK_THROWS_AS(binary_form_squarefree(Polynomial::zero(R)),
                  precondition_error);
  // Characteristic guard: p must exceed twice the degree.
  auto R11 = ring113(Field::prime(11));
  CHECK_THROWS_AS(binary_form_squarefree(parse_poly("x0^6 + x1^6", R11)),
                  precondition_error);
  auto R17 = ring113(Field::prime(17));
  CHECK(binary_form_squarefree(parse_poly("x0^6 + x1^6", R17)));
  CHECK_FALSE(binary_form_squarefree(parse_poly("(x0 + x1)^2*x1^4", R17)));
}

TEST_CASE("squarefree agrees under random linear changes of coordinates") {
  std::mt19937_64 rng(37);
  auto R = ring113(Field::prime(10007));
  std::vector<std::size_t> xs{0, 1};
  for (int it = 0; it < 30; ++it) {
    Polynomial f = random_combination(R, monomials_of_weighted_degree(*R, xs, 6), rng);
    if (f.is_zero()) continue;
    // Random invertible substitution x0 -> a x0 + b x1, x1 -> c x0 + d x1.
    FieldElem a = FieldElem::residue(R->field(), 1 + uniform_u64(rng, 10006));
    FieldElem b = FieldElem::residue(R->field(), uniform_u64(rng, 10007));
    FieldElem c = FieldElem::residue(R->field(), uniform_u64(rng, 10007));
    FieldElem d = FieldElem::residue(R->field(), 1 + uniform_u64(rng, 10006));
    if ((a * d - b * c).is_zero()) continue;
    Polynomial X0 = Polynomial::variable(R, 0), X1 = Polynomial::variable(R, 1);
    std::map<std::string, Polynomial> phi{{"x0", X0 * a + X1 * b},
                                          {"x1", X0 * c + X1 * d}};
    CHECK(binary_form_squarefree(f) == binary_form_squarefree(f.substitute(phi, R)));
  }
}

TEST_CASE("ring mismatch is rejected") {
  auto R = ring113();
  auto T = ring11223();
  CHECK_THROWS_AS(parse_poly("x0", R) + parse_poly("x0", T), ring_mismatch);
  auto Rp = ring113(Field::prime(7));
  CHECK_THROWS_AS(parse_poly("x0", R) * parse_poly("x0", Rp), ring_mismatch);
}
