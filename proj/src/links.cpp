#include "qfano/links.hpp"

#include <algorithm>
#include <utility>

#include "qfano/errors.hpp"
#include "qfano/groebner.hpp"
#include "qfano/parallel.hpp"

namespace qfano {

namespace {

Polynomial embed(const Polynomial& p, const RingPtr& target) {
  return p.substitute({}, target);
}

std::uint64_t homogeneous_degree(const Polynomial& p, const char* what) {
  auto h = p.homogeneity();
  if (h.kind != Polynomial::Homogeneity::Kind::of_degree)
    throw input_error(std::string(what) +
                      " must be nonzero and weighted-homogeneous");
  return h.degree;
}

// z^2 coefficient as a polynomial in x0, x1 along with the z^1 and z^0 parts.
struct ZSplit {
  Polynomial q2, q1, q0;
};

ZSplit split_by_z(const Polynomial& p) {
  const RingPtr& R = p.ring();
  ZSplit out{Polynomial::zero(R), Polynomial::zero(R), Polynomial::zero(R)};
  for (const auto& term : p.terms()) {
    Monomial m = term.mono;
    std::uint32_t e = m[2];
    m[2] = 0;
    Polynomial piece = Polynomial::monomial(R, m, term.coeff);
    if (e == 0)
      out.q0 += piece;
    else if (e == 1)
      out.q1 += piece;
    else if (e == 2)
      out.q2 += piece;
    else
      throw input_error("unexpected z power in a triplet form");
  }
  return out;
}

}  // namespace

RingPtr z1_ring(const Field& f) {
  return WeightedRing::make({"x0", "x1", "y", "z", "s"}, {1, 1, 2, 3, 4}, f);
}

RingPtr z_ring(const Field& f) {
  return WeightedRing::make({"x0", "x1", "z", "s0", "s1"}, {1, 1, 3, 4, 4}, f);
}

RingPtr zprime_ring(const Field& f) {
  return WeightedRing::make({"x0", "x1", "y0", "y1", "t"}, {1, 1, 2, 2, 5}, f);
}

RationalMapSpec::RationalMapSpec(std::string name_, VarietySpec source_,
                                 VarietySpec target_,
                                 std::vector<Polynomial> numerators_,
                                 std::optional<Polynomial> denominator_)
    : name(std::move(name_)),
      source(std::move(source_)),
      target(std::move(target_)),
      numerators(std::move(numerators_)),
      denominator(std::move(denominator_)) {
  const RingPtr& S = source.ring();
  const RingPtr& T = target.ring();
  if (numerators.size() != T->arity())
    throw input_error("map " + name + " needs one coordinate expression per "
                      "target variable");

  std::uint64_t ddeg = 0;
  if (denominator) {
    if (!denominator->ring()->same_structure(*S))
      throw ring_mismatch("map " + name + ": denominator not in the source ring");
    ddeg = homogeneous_degree(*denominator, "denominator");
    if (ddeg == 0) throw input_error("map " + name + ": constant denominator");
  }

  denominator_powers.assign(numerators.size(), 0);
  for (std::size_t j = 0; j < numerators.size(); ++j) {
    if (!numerators[j].ring()->same_structure(*S))
      throw ring_mismatch("map " + name + ": coordinate expression not in the "
                          "source ring");
    std::uint64_t ndeg = homogeneous_degree(numerators[j], "coordinate expression");
    std::uint64_t w = T->weight(j);
    if (ndeg == w) continue;
    if (!denominator || ndeg < w || (ndeg - w) % ddeg != 0)
      throw input_error("map " + name + ": coordinate " + T->name(j) +
                        " has degree " + std::to_string(ndeg) +
                        " which cannot match weight " + std::to_string(w));
    denominator_powers[j] = (ndeg - w) / ddeg;
  }
}

Polynomial cleared_pullback(const RationalMapSpec& m,
                            const Polynomial& target_poly) {
  const RingPtr& S = m.source.ring();
  if (!target_poly.ring()->same_structure(*m.target.ring()))
    throw ring_mismatch("map " + m.name + ": pullback input not on the target");

  // Least power of the denominator clearing every substituted monomial.
  std::uint64_t clear = 0;
  for (const auto& term : target_poly.terms()) {
    std::uint64_t need = 0;
    for (std::size_t j = 0; j < m.numerators.size(); ++j)
      need += m.denominator_powers[j] * term.mono[j];
    clear = std::max(clear, need);
  }

  Polynomial acc = Polynomial::zero(S);
  for (const auto& term : target_poly.terms()) {
    std::uint64_t need = 0;
    Polynomial piece = Polynomial::constant(S, term.coeff);
    for (std::size_t j = 0; j < m.numerators.size(); ++j) {
      if (term.mono[j] == 0) continue;
      need += m.denominator_powers[j] * term.mono[j];
      piece = piece * m.numerators[j].pow(term.mono[j]);
    }
    if (clear > need)
      piece = piece * m.denominator->pow(static_cast<std::uint32_t>(clear - need));
    acc += piece;
  }

  if (m.denominator) {
    while (!acc.is_zero()) {
      auto q = try_exact_divide(acc, *m.denominator);
      if (!q) break;
      acc = *q;
    }
  }
  return acc;
}

std::string to_string(MapVerdict v) {
  switch (v) {
    case MapVerdict::certified: return "certified";
    case MapVerdict::failed: return "failed";
    default: return "inconclusive";
  }
}

MapCertificate certify_map(const RationalMapSpec& m, const LinkOptions& opt) {
  MapCertificate cert;
  cert.map_name = m.name;
  GbConfig cfg;
  cfg.pair_budget = opt.pair_budget;
  cfg.self_check = opt.self_check;
  GbResult gb = buchberger(m.source.ring(), m.source.equations(), cfg);
  if (gb.budget_exceeded()) {
    cert.verdict = MapVerdict::inconclusive;
    return cert;
  }
  for (const Polynomial& G : m.target.equations()) {
    Polynomial r = gb.basis->normal_form(cleared_pullback(m, G));
    if (!r.is_zero()) {
      cert.verdict = MapVerdict::failed;
      cert.residual = std::move(r);
      return cert;
    }
  }
  cert.verdict = MapVerdict::certified;
  return cert;
}

VarietySpec build_Z1(const Triplet& t) {
  auto R = z1_ring(t.field());
  Polynomial y = Polynomial::variable(R, 2);
  Polynomial s = Polynomial::variable(R, 4);
  Polynomial F = s * s * y + s * embed(t.a6(), R) + y * y * embed(t.b6(), R) +
                 y * embed(t.c8(), R);
  return VarietySpec(R, {F});
}

VarietySpec build_Z(const Triplet& t) {
  auto R = z_ring(t.field());
  Polynomial s0 = Polynomial::variable(R, 3);
  Polynomial s1 = Polynomial::variable(R, 4);
  Polynomial F = (s0 + s1) * (s0 * s1 - embed(t.c8(), R)) +
                 embed(t.a6(), R) * embed(t.b6(), R);
  return VarietySpec(R, {F});
}

SexticDecomposition decompose_triplet(const Triplet& t) {
  const Field& f = t.field();
  FieldElem one = FieldElem::one(f);
  ZSplit a = split_by_z(t.a6());
  ZSplit b = split_by_z(t.b6());
  ZSplit c = split_by_z(t.c8());
  if (!(a.q2 == Polynomial::constant(t.ring(), one)) ||
      !(b.q2 == Polynomial::constant(t.ring(), one)))
    throw precondition_error(
        "double cover construction needs both z^2 coefficients equal to 1");
  return SexticDecomposition{a.q1, a.q0, b.q1, b.q0, c.q2, c.q1, c.q0};
}

VarietySpec build_Zprime(const Triplet& t) {
  SexticDecomposition d = decompose_triplet(t);
  auto R = zprime_ring(t.field());
  Polynomial y0 = Polynomial::variable(R, 2);
  Polynomial y1 = Polynomial::variable(R, 3);
  Polynomial tv = Polynomial::variable(R, 4);
  Polynomial linear = y0 * embed(d.f3, R) + y1 * embed(d.g3, R) + embed(d.h5, R);
  Polynomial norm = y0 * y0 * y1 * y1 + y0 * embed(d.f6, R) +
                    y1 * embed(d.g6, R) + embed(d.h8, R);
  Polynomial trace = y0 + y1 + embed(d.h2, R);
  return VarietySpec(R, {tv * tv + linear * tv + trace * norm});
}

bool involution_identity_check(const Triplet& t) {
  SexticDecomposition d = decompose_triplet(t);
  VarietySpec Zp = build_Zprime(t);
  VarietySpec Xp = build_Xprime(t);
  const RingPtr& H = Xp.ring();
  Polynomial trace = Polynomial::variable(H, 2) + Polynomial::variable(H, 3) +
                     embed(d.h2, H);
  std::map<std::string, Polynomial> sub{
      {"t", trace * Polynomial::variable(H, 4)}};
  Polynomial lhs = Zp.equations()[0].substitute(sub, H);
  return lhs == trace * Xp.equations()[0];
}

RationalMapSpec sigma_map(const Triplet& t, int i, int j) {
  if ((i != 1 && i != 2) || (j != 1 && j != 2))
    throw input_error("sigma map indices must be 1 or 2");
  VarietySpec Xp = build_Xprime(t);
  const RingPtr& H = Xp.ring();
  Polynomial x0 = Polynomial::variable(H, 0);
  Polynomial x1 = Polynomial::variable(H, 1);
  Polynomial y0 = Polynomial::variable(H, 2);
  Polynomial y1 = Polynomial::variable(H, 3);
  Polynomial z = Polynomial::variable(H, 4);

  // Toward the first model the map factors through y1; toward the second the
  // roles of y0, y1 (and with them the two sextics) are exchanged.
  Polynomial axis = i == 1 ? y1 : y0;
  const Polynomial& sextic = i == 1 ? t.a6() : t.b6();
  Polynomial s0_expr = -(y0 * y1 * axis + embed(sextic, H));
  Polynomial s1_expr = y0 * y1;
  if (j == 2) std::swap(s0_expr, s1_expr);

  VarietySpec target = i == 1 ? build_X1(t) : build_X2(t);
  std::string name = "sigma" + std::to_string(i) + std::to_string(j);
  return RationalMapSpec(std::move(name), std::move(Xp), std::move(target),
                         {x0, x1, axis, z, s0_expr, s1_expr}, axis);
}

RationalMapSpec theta_map(const Triplet& t) {
  if (t.a6().is_zero() || t.b6().is_zero())
    throw input_error("theta map needs both sextics nonzero");
  VarietySpec X1 = build_X1(t);
  const RingPtr& R = X1.ring();
  Polynomial y = Polynomial::variable(R, 2);
  return RationalMapSpec("theta", X1, build_X2(t),
                         {Polynomial::variable(R, 0), Polynomial::variable(R, 1),
                          embed(t.b6(), R) * y, Polynomial::variable(R, 3),
                          Polynomial::variable(R, 4), Polynomial::variable(R, 5)},
                         embed(t.a6(), R));
}

RationalMapSpec pi_to_Z(const Triplet& t, int i) {
  if (i != 1 && i != 2) throw input_error("projection index must be 1 or 2");
  VarietySpec X = i == 1 ? build_X1(t) : build_X2(t);
  const RingPtr& R = X.ring();
  std::vector<Polynomial> coords;
  for (std::size_t v : {0, 1, 3, 4, 5}) coords.push_back(Polynomial::variable(R, v));
  return RationalMapSpec("pi" + std::to_string(i) + "_Z", X, build_Z(t),
                         std::move(coords));
}

RationalMapSpec pi1_to_Z1(const Triplet& t) {
  VarietySpec X1 = build_X1(t);
  const RingPtr& R = X1.ring();
  std::vector<Polynomial> coords;
  for (std::size_t v : {0, 1, 2, 3, 5}) coords.push_back(Polynomial::variable(R, v));
  return RationalMapSpec("pi1_Z1", X1, build_Z1(t), std::move(coords));
}

RationalMapSpec piprime_to_Z1(const Triplet& t) {
  VarietySpec Xp = build_Xprime(t);
  const RingPtr& R = Xp.ring();
  Polynomial y0 = Polynomial::variable(R, 2);
  Polynomial y1 = Polynomial::variable(R, 3);
  return RationalMapSpec("piprime1_Z1", Xp, build_Z1(t),
                         {Polynomial::variable(R, 0), Polynomial::variable(R, 1),
                          y1, Polynomial::variable(R, 4), y0 * y1});
}

bool LinkReport::all_certified() const {
  if (!involution_identity) return false;
  for (const auto& c : maps)
    if (c.verdict != MapVerdict::certified) return false;
  return !maps.empty();
}

LinkReport verify_link_suite(const Triplet& t, const LinkOptions& opt) {
  std::vector<RationalMapSpec> maps;
  maps.push_back(sigma_map(t, 1, 1));
  maps.push_back(sigma_map(t, 1, 2));
  maps.push_back(sigma_map(t, 2, 1));
  maps.push_back(sigma_map(t, 2, 2));
  maps.push_back(theta_map(t));
  RationalMapSpec back = theta_map(t.swapped());
  back.name = "theta_inverse";
  maps.push_back(std::move(back));
  maps.push_back(pi_to_Z(t, 1));
  maps.push_back(pi_to_Z(t, 2));
  maps.push_back(pi1_to_Z1(t));
  maps.push_back(piprime_to_Z1(t));

  LinkReport rep;
  rep.maps.resize(maps.size());
  parallel_for(maps.size(), opt.jobs, [&](std::size_t k) {
    rep.maps[k] = certify_map(maps[k], opt);
  });
  rep.involution_identity = involution_identity_check(t);
  return rep;
}

std::string to_string(FlopVerdict v) {
  return v == FlopVerdict::link ? "link" : "no-maximal-center";
}

FlopVerdict flop_vs_divisorial_test(const Triplet& t) {
  if (t.a6().is_zero() || t.b6().is_zero()) return FlopVerdict::no_maximal_center;
  return is_proportional(t.a6(), t.b6()) ? FlopVerdict::no_maximal_center
                                         : FlopVerdict::link;
}

}  // namespace qfano
