#ifndef QFANO_LINKS_HPP
#define QFANO_LINKS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qfano/family.hpp"
#include "qfano/wps.hpp"

namespace qfano {

// Ambient rings of the midpoint models sitting between the three families.
RingPtr z1_ring(const Field& f);      // x0,x1,y,z,s with weights 1,1,2,3,4
RingPtr z_ring(const Field& f);       // x0,x1,z,s0,s1 with weights 1,1,3,4,4
RingPtr zprime_ring(const Field& f);  // x0,x1,y0,y1,t with weights 1,1,2,2,5

// A rational map between subvarieties of weighted projective spaces, written
// with one numerator per target coordinate and at most one shared denominator.
// The map sends a source point to (N_0 / D^{e_0} : ... : N_n / D^{e_n}) where
// the exponents are forced by degree bookkeeping: deg N_j - e_j deg D must
// equal the j-th target weight.  All our maps preserve anticanonical degree,
// so no overall scaling enters.
struct RationalMapSpec {
  std::string name;
  VarietySpec source;
  VarietySpec target;
  std::vector<Polynomial> numerators;
  std::optional<Polynomial> denominator;
  std::vector<std::uint64_t> denominator_powers;

  RationalMapSpec(std::string name, VarietySpec source, VarietySpec target,
                  std::vector<Polynomial> numerators,
                  std::optional<Polynomial> denominator = std::nullopt);
};

// Substitute the coordinate expressions into a polynomial on the target and
// multiply through by the smallest denominator power that clears every
// fraction; denominator factors dividing the result exactly are stripped so
// the certificate is as small as possible.
Polynomial cleared_pullback(const RationalMapSpec& m,
                            const Polynomial& target_poly);

enum class MapVerdict { certified, failed, inconclusive };
std::string to_string(MapVerdict v);

struct MapCertificate {
  std::string map_name;
  MapVerdict verdict = MapVerdict::inconclusive;
  // Normal form of the offending pullback when the verdict is failed.
  std::optional<Polynomial> residual;
};

struct LinkOptions {
  std::uint64_t pair_budget = 200000;
  int jobs = 0;       // 0 = library default
  bool self_check = false;  // re-verify every finished basis
};

// A map is certified when every defining equation of the target pulls back,
// after clearing denominators, into the ideal of the source.
MapCertificate certify_map(const RationalMapSpec& m, const LinkOptions& opt = {});

// Intermediate models.  Z1 receives both the octic model and the first
// intersection model; Z receives the two intersection models; Zprime is the
// double cover realizing the involution of the octic model.
VarietySpec build_Z1(const Triplet& t);
VarietySpec build_Z(const Triplet& t);
VarietySpec build_Zprime(const Triplet& t);

// Splits a triplet along powers of z: a6 = z^2 + z f3 + f6, b6 likewise with
// g3, g6, and c8 = z^2 h2 + z h5 + h8.  Requires both z^2 coefficients of the
// sextics to be exactly 1 (the normalization used by the double cover).
struct SexticDecomposition {
  Polynomial f3, f6, g3, g6, h2, h5, h8;
};
SexticDecomposition decompose_triplet(const Triplet& t);

// Exact identity behind the involution: substituting t = (y0 + y1 + h2) z
// into the double cover equation returns (y0 + y1 + h2) times the octic
// model's equation.  No ideal membership is involved.
bool involution_identity_check(const Triplet& t);

// The named maps of the link diagram.  i selects the target intersection
// model, j selects one of the two rulings (j = 2 composes with the s0/s1
// interchange on the target).
RationalMapSpec sigma_map(const Triplet& t, int i, int j);
RationalMapSpec theta_map(const Triplet& t);           // X1 -> X2, denominator a6
RationalMapSpec pi_to_Z(const Triplet& t, int i);      // X_i -> Z, drops y
RationalMapSpec pi1_to_Z1(const Triplet& t);           // X1 -> Z1, drops s0
RationalMapSpec piprime_to_Z1(const Triplet& t);       // octic model -> Z1

struct LinkReport {
  std::vector<MapCertificate> maps;
  bool involution_identity = false;

  bool all_certified() const;
};

// Certifies the whole diagram: sigma_{11}, sigma_{12}, sigma_{21}, sigma_{22},
// theta in both directions, the two projections onto Z, the two maps onto Z1,
// plus the involution identity.
LinkReport verify_link_suite(const Triplet& t, const LinkOptions& opt = {});

// Contracting the midpoint of the theta diagram is a flop exactly when the
// sextics are linearly independent; otherwise the contracted locus is a
// divisor and the double point supports no link at all.
enum class FlopVerdict { link, no_maximal_center };
std::string to_string(FlopVerdict v);
FlopVerdict flop_vs_divisorial_test(const Triplet& t);

}  // namespace qfano

#endif
