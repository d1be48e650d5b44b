#include "qfano/wps.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "qfano/errors.hpp"

namespace qfano {

namespace {

// Maximum bipartite matching by augmenting paths.  Left vertices are
// candidate monomials, adjacency lists hold right-vertex ids (outside
// variables).  Small inputs only; no need for Hopcroft-Karp here.
std::size_t max_matching(const std::vector<std::vector<std::size_t>>& adj,
                         std::size_t n_right) {
  std::vector<long> match_right(n_right, -1);
  std::size_t matched = 0;
  std::vector<char> visited;
  // Recursive lambda needs an explicit fixpoint.
  auto augment = [&](auto&& self, std::size_t u) -> bool {
    for (std::size_t v : adj[u]) {
      if (visited[v]) continue;
      visited[v] = 1;
      if (match_right[v] < 0 ||
          self(self, static_cast<std::size_t>(match_right[v]))) {
        match_right[v] = static_cast<long>(u);
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < adj.size(); ++u) {
    visited.assign(n_right, 0);
    if (augment(augment, u)) ++matched;
  }
  return matched;
}

// Outside variables e certified by monomials of the shape x_I^m * x_e.  The
// second member of each pair is the index of a witnessing monomial.
struct CertifiedVars {
  std::set<std::size_t> vars;
  std::vector<std::vector<std::size_t>> adjacency;  // monomial -> {e}
  std::vector<std::size_t> var_ids;                 // dense renumbering of e
};

bool is_pure_power_in(const Monomial& m, const StratumIndex& I) {
  for (std::size_t i = 0; i < m.arity(); ++i)
    if (m[i] > 0 && !I.contains(i)) return false;
  return true;
}

// If m = x_I^e * x_j with j outside I and exponent exactly 1, return j.
std::optional<std::size_t> certified_outside_var(const Monomial& m,
                                                 const StratumIndex& I) {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < m.arity(); ++i) {
    if (m[i] == 0 || I.contains(i)) continue;
    if (found || m[i] != 1) return std::nullopt;
    found = i;
  }
  return found;
}

CertifiedVars certified_vars(const MonomialSet& M, const StratumIndex& I) {
  CertifiedVars out;
  std::map<std::size_t, std::size_t> dense;
  for (const Monomial& m : M.monomials()) {
    auto e = certified_outside_var(m, I);
    if (!e) continue;
    out.vars.insert(*e);
    auto [it, fresh] = dense.emplace(*e, dense.size());
    if (fresh) out.var_ids.push_back(*e);
    out.adjacency.push_back({it->second});
  }
  return out;
}

std::size_t matching_size(const CertifiedVars& c) {
  return max_matching(c.adjacency, c.var_ids.size());
}

bool has_pure_power(const MonomialSet& M, const StratumIndex& I) {
  for (const Monomial& m : M.monomials())
    if (is_pure_power_in(m, I)) return true;
  return false;
}

void check_same_ring(const MonomialSet& A, const MonomialSet& B) {
  if (!A.ring()->same_structure(*B.ring()))
    throw ring_mismatch("monomial sets live in different rings");
}

template <typename F>
GeneralMemberReport report_over_strata(const WeightedRing& ring, bool cone,
                                       F&& verdict_of) {
  if (ring.arity() > 20)
    throw precondition_error("stratum enumeration limited to 20 variables");
  GeneralMemberReport rep;
  rep.linear_cone = cone;
  std::uint64_t total = (std::uint64_t{1} << ring.arity()) - 1;
  for (std::uint64_t mask = 1; mask <= total; ++mask) {
    StratumIndex I = StratumIndex::from_mask(mask, ring.arity());
    StratumVerdict v = verdict_of(I);
    rep.verdicts.emplace(std::move(I), v);
  }
  return rep;
}

}  // namespace

StratumIndex StratumIndex::of(std::initializer_list<std::size_t> init) {
  return from_list(std::vector<std::size_t>(init));
}

StratumIndex StratumIndex::from_list(std::vector<std::size_t> init) {
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());
  if (init.empty()) throw input_error("stratum index must be nonempty");
  return StratumIndex{std::move(init)};
}

StratumIndex StratumIndex::from_mask(std::uint64_t mask, std::size_t arity) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < arity; ++i)
    if (mask & (std::uint64_t{1} << i)) idx.push_back(i);
  if (arity < 64 && (mask >> arity))
    throw input_error("stratum mask has bits beyond the ring arity");
  if (idx.empty()) throw input_error("stratum index must be nonempty");
  return StratumIndex{std::move(idx)};
}

bool StratumIndex::contains(std::size_t i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

std::uint64_t StratumIndex::mask() const {
  std::uint64_t m = 0;
  for (std::size_t i : indices) m |= std::uint64_t{1} << i;
  return m;
}

std::string StratumIndex::to_string(const WeightedRing& ring) const {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k) os << ',';
    os << ring.name(indices[k]);
  }
  os << '}';
  return os.str();
}

bool StratumIndex::operator<(const StratumIndex& o) const {
  return indices < o.indices;
}

MonomialSet::MonomialSet(RingPtr ring, std::vector<Monomial> monos)
    : ring_(std::move(ring)), monos_(std::move(monos)) {
  if (monos_.empty())
    throw input_error("cannot infer the degree of an empty monomial set");
  degree_ = ring_->weighted_degree(monos_[0]);
  validate_and_sort();
}

MonomialSet::MonomialSet(RingPtr ring, std::uint64_t degree,
                         std::vector<Monomial> monos)
    : ring_(std::move(ring)), degree_(degree), monos_(std::move(monos)) {
  validate_and_sort();
}

void MonomialSet::validate_and_sort() {
  for (const Monomial& m : monos_) {
    if (m.arity() != ring_->arity())
      throw ring_mismatch("monomial arity does not match the ring");
    if (ring_->weighted_degree(m) != degree_)
      throw input_error("monomial set mixes weighted degrees");
  }
  std::sort(monos_.begin(), monos_.end(),
            [this](const Monomial& a, const Monomial& b) {
              return ring_->compare(a, b) > 0;
            });
  monos_.erase(std::unique(monos_.begin(), monos_.end()), monos_.end());
}

MonomialSet MonomialSet::of_degree(RingPtr ring,
                                   const std::vector<std::size_t>& vars,
                                   std::uint64_t degree) {
  auto monos = monomials_of_weighted_degree(*ring, vars, degree);
  return MonomialSet(std::move(ring), degree, std::move(monos));
}

bool MonomialSet::contains(const Monomial& m) const {
  return std::find(monos_.begin(), monos_.end(), m) != monos_.end();
}

MonomialSet MonomialSet::united(const MonomialSet& other) const {
  check_same_ring(*this, other);
  if (degree_ != other.degree_)
    throw input_error("union of monomial sets of different degrees");
  std::vector<Monomial> all = monos_;
  all.insert(all.end(), other.monos_.begin(), other.monos_.end());
  return MonomialSet(ring_, degree_, std::move(all));
}

MonomialSet MonomialSet::scaled_by(const Monomial& g) const {
  if (g.arity() != ring_->arity())
    throw ring_mismatch("scaling monomial arity does not match the ring");
  std::vector<Monomial> out;
  out.reserve(monos_.size());
  for (const Monomial& m : monos_) out.push_back(m * g);
  return MonomialSet(ring_, degree_ + ring_->weighted_degree(g), std::move(out));
}

Polynomial MonomialSet::general_member(std::mt19937_64& rng, long box) const {
  return random_combination(ring_, monos_, rng, box, /*nonzero_coeffs=*/true);
}

VarietySpec::VarietySpec(RingPtr ring, std::vector<Polynomial> equations)
    : ring_(std::move(ring)), eqs_(std::move(equations)) {
  if (eqs_.empty() || eqs_.size() > 2)
    throw input_error("a variety spec takes one or two equations");
  for (const Polynomial& f : eqs_) {
    if (!f.ring()->same_structure(*ring_))
      throw ring_mismatch("equation ring does not match the variety ring");
    auto h = f.homogeneity();
    if (h.kind != Polynomial::Homogeneity::Kind::of_degree)
      throw input_error("variety equations must be nonzero and homogeneous");
    degs_.push_back(h.degree);
  }
  if (degs_.size() == 2 && degs_[0] > degs_[1]) {
    std::swap(eqs_[0], eqs_[1]);
    std::swap(degs_[0], degs_[1]);
  }
}

std::string QuotientSingularity::to_string() const {
  std::ostringstream os;
  os << "1/" << r << '(' << weights[0] << ',' << weights[1] << ','
     << weights[2] << ')';
  return os.str();
}

bool GeneralMemberReport::all_pass() const {
  for (const auto& [I, v] : verdicts)
    if (!v.pass) return false;
  return true;
}

std::vector<StratumIndex> GeneralMemberReport::failing() const {
  std::vector<StratumIndex> out;
  for (const auto& [I, v] : verdicts)
    if (!v.pass) out.push_back(I);
  return out;
}

bool is_well_formed(const WeightedRing& ring) {
  std::size_t n = ring.arity();
  if (n < 2) return ring.weight(0) == 1;
  for (std::size_t omit = 0; omit < n; ++omit) {
    std::uint64_t g = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (i != omit) g = std::gcd(g, static_cast<std::uint64_t>(ring.weight(i)));
    if (g != 1) return false;
  }
  return true;
}

bool is_linear_cone(const MonomialSet& M) {
  const auto& R = *M.ring();
  for (std::size_t i = 0; i < R.arity(); ++i) {
    if (R.weight(i) != M.degree()) continue;
    Monomial x(R.arity());
    x[i] = 1;
    if (M.contains(x)) return true;
  }
  return false;
}

bool is_linear_cone(const Polynomial& f) {
  auto h = f.homogeneity();
  if (h.kind != Polynomial::Homogeneity::Kind::of_degree)
    throw precondition_error("linear cone test needs a nonzero homogeneous input");
  const auto& R = *f.ring();
  for (std::size_t i = 0; i < R.arity(); ++i) {
    if (R.weight(i) != h.degree) continue;
    Monomial x(R.arity());
    x[i] = 1;
    if (!f.coefficient_of(x).is_zero()) return true;
  }
  return false;
}

StratumVerdict hypersurface_stratum_criterion(const MonomialSet& M,
                                              const StratumIndex& I) {
  if (has_pure_power(M, I)) return {true, 1};
  if (matching_size(certified_vars(M, I)) >= I.size()) return {true, 2};
  return {false, 0};
}

StratumVerdict ci_stratum_criterion(const MonomialSet& M1, const MonomialSet& M2,
                                    const StratumIndex& I) {
  check_same_ring(M1, M2);
  std::size_t k = I.size();
  bool pure1 = has_pure_power(M1, I);
  bool pure2 = has_pure_power(M2, I);
  if (pure1 && pure2) return {true, 1};
  CertifiedVars c1 = certified_vars(M1, I);
  CertifiedVars c2 = certified_vars(M2, I);
  if (pure1 && matching_size(c2) >= k - 1) return {true, 2};
  if (pure2 && matching_size(c1) >= k - 1) return {true, 3};
  if (matching_size(c1) >= k && matching_size(c2) >= k) {
    std::set<std::size_t> joint = c1.vars;
    joint.insert(c2.vars.begin(), c2.vars.end());
    if (joint.size() >= k + 1) return {true, 4};
  }
  return {false, 0};
}

GeneralMemberReport general_member_report(const MonomialSet& M) {
  return report_over_strata(*M.ring(), is_linear_cone(M), [&](StratumIndex I) {
    return hypersurface_stratum_criterion(M, I);
  });
}

GeneralMemberReport general_member_report(const MonomialSet& M1,
                                          const MonomialSet& M2) {
  check_same_ring(M1, M2);
  bool cone = is_linear_cone(M1) || is_linear_cone(M2);
  return report_over_strata(*M1.ring(), cone, [&](StratumIndex I) {
    return ci_stratum_criterion(M1, M2, I);
  });
}

std::vector<Polynomial> nonquasismooth_system(const VarietySpec& V) {
  std::size_t n = V.ring()->arity();
  std::vector<Polynomial> sys = V.equations();
  if (V.is_hypersurface()) {
    for (std::size_t i = 0; i < n; ++i)
      sys.push_back(V.equations()[0].derivative(i));
  } else {
    // Rank < 2 of the 2 x n Jacobian: all 2x2 minors vanish.
    std::vector<Polynomial> d1, d2;
    for (std::size_t i = 0; i < n; ++i) {
      d1.push_back(V.equations()[0].derivative(i));
      d2.push_back(V.equations()[1].derivative(i));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        sys.push_back(d1[i] * d2[j] - d1[j] * d2[i]);
  }
  return sys;
}

std::optional<QuotientSingularity> coordinate_point_quotient_type(
    const VarietySpec& V, std::size_t i) {
  const auto& R = *V.ring();
  if (i >= R.arity()) throw input_error("coordinate index out of range");
  std::uint32_t r = R.weight(i);

  // The coordinate point lies on V iff no equation contains a pure power of
  // x_i; tangent variables x_j are those eliminated by a monomial x_i^k x_j.
  std::vector<std::vector<std::size_t>> tangent;
  for (const Polynomial& f : V.equations()) {
    std::vector<std::size_t> elim;
    for (const auto& t : f.terms()) {
      bool pure = true;
      std::optional<std::size_t> other;
      for (std::size_t j = 0; j < R.arity(); ++j) {
        if (j == i || t.mono[j] == 0) continue;
        pure = false;
        if (other || t.mono[j] != 1) {
          other = std::nullopt;
          break;
        }
        other = j;
      }
      if (pure)
        throw precondition_error(
            "coordinate point does not lie on the variety");
      if (other) elim.push_back(*other);
    }
    std::sort(elim.begin(), elim.end());
    elim.erase(std::unique(elim.begin(), elim.end()), elim.end());
    tangent.push_back(std::move(elim));
  }

  // Pick the eliminated variables: one for a hypersurface, a distinct pair
  // (one per equation) for a complete intersection.  Choosing the smallest
  // sorted candidate keeps the answer independent of equation order.
  std::vector<std::size_t> chosen;
  if (V.is_hypersurface()) {
    if (tangent[0].empty()) return std::nullopt;
    chosen.push_back(tangent[0][0]);
  } else {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t u : tangent[0]) {
      for (std::size_t v : tangent[1]) {
        if (u == v) continue;
        std::pair<std::size_t, std::size_t> cand{std::min(u, v), std::max(u, v)};
        if (!best || cand < *best) best = cand;
      }
    }
    if (!best) return std::nullopt;
    chosen = {best->first, best->second};
  }

  QuotientSingularity q;
  q.r = r;
  std::size_t slot = 0;
  for (std::size_t j = 0; j < R.arity(); ++j) {
    if (j == i) continue;
    if (std::find(chosen.begin(), chosen.end(), j) != chosen.end()) continue;
    if (slot == 3)
      throw precondition_error("quotient typing expects a threefold");
    q.weights[slot++] = R.weight(j) % r;
  }
  if (slot != 3) throw precondition_error("quotient typing expects a threefold");
  return q;
}

bool is_terminal_quotient(const QuotientSingularity& q) {
  if (q.r == 1) return true;
  for (std::uint32_t w : q.weights)
    if (std::gcd(w, q.r) != 1)
      throw precondition_error(
          "quotient weights share a factor with the order; the point is not "
          "isolated");
  // Look for a unit u with {u*w} = {1, a, r-a}: one scaled weight equal to 1
  // and the other two summing to 0 mod r.
  for (std::uint32_t u = 1; u < q.r; ++u) {
    if (std::gcd(u, q.r) != 1) continue;
    std::array<std::uint32_t, 3> s;
    for (int t = 0; t < 3; ++t)
      s[t] = static_cast<std::uint32_t>(
          (static_cast<std::uint64_t>(u) * q.weights[t]) % q.r);
    for (int one = 0; one < 3; ++one) {
      if (s[one] != 1) continue;
      std::uint32_t a = s[(one + 1) % 3], b = s[(one + 2) % 3];
      if ((a + b) % q.r == 0) return true;
    }
  }
  return false;
}

DegreeInfo anticanonical_degree(const VarietySpec& V) {
  const auto& R = *V.ring();
  if (R.arity() != V.equations().size() + 4)
    throw precondition_error("anticanonical degree is defined for threefolds");
  DegreeInfo info;
  mpz_class num = 1, den = 1;
  long index = 0;
  for (std::uint64_t d : V.degrees()) {
    num *= static_cast<unsigned long>(d);
    index -= static_cast<long>(d);
  }
  for (std::size_t i = 0; i < R.arity(); ++i) {
    den *= static_cast<unsigned long>(R.weight(i));
    index += static_cast<long>(R.weight(i));
  }
  info.cube = mpq_class(num, den);
  info.cube.canonicalize();
  info.fano_index = index;
  return info;
}

}  // namespace qfano
