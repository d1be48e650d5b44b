#include "qfano/groebner.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace qfano {

std::atomic<std::uint64_t> GbCounters::bases_built{0};
std::atomic<std::uint64_t> GbCounters::self_checks_run{0};
std::atomic<std::uint64_t> GbCounters::self_check_failures{0};

void GbCounters::reset() {
  bases_built = 0;
  self_checks_run = 0;
  self_check_failures = 0;
}

namespace {

// One reduction step of the division algorithm; returns true when some
// divisor's leading monomial divides lead and the cancellation was applied.
bool reduce_lead_once(Polynomial& p, std::span<const Polynomial> divisors) {
  const Monomial& lead = p.leading_monomial();
  for (const auto& d : divisors) {
    if (d.is_zero()) continue;
    if (d.leading_monomial().divides(lead)) {
      FieldElem c = p.leading_coefficient() / d.leading_coefficient();
      Monomial q = lead.quotient_by(d.leading_monomial());
      p -= d.mul_term(q, c);
      return true;
    }
  }
  return false;
}

Polynomial spoly(const Polynomial& f, const Polynomial& g) {
  Monomial l = Monomial::lcm(f.leading_monomial(), g.leading_monomial());
  Polynomial a = f.mul_term(l.quotient_by(f.leading_monomial()),
                            f.leading_coefficient().inverse());
  Polynomial b = g.mul_term(l.quotient_by(g.leading_monomial()),
                            g.leading_coefficient().inverse());
  return a - b;
}

struct Pair {
  std::size_t i, j;  // i < j
  Monomial lcm;
  std::uint64_t degree;
};

}  // namespace

Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> divisors) {
  Polynomial rest = p;
  Polynomial remainder = Polynomial::zero(p.ring());
  while (!rest.is_zero()) {
    if (!reduce_lead_once(rest, divisors)) {
      // Move the irreducible leading term to the remainder.
      const auto& t = rest.leading_term();
      remainder += Polynomial::monomial(p.ring(), t.mono, t.coeff);
      rest -= Polynomial::monomial(p.ring(), t.mono, t.coeff);
    }
  }
  return remainder;
}

std::optional<Polynomial> try_exact_divide(const Polynomial& p,
                                           const Polynomial& d) {
  if (d.is_zero()) return std::nullopt;
  Polynomial rest = p;
  Polynomial q = Polynomial::zero(p.ring());
  while (!rest.is_zero()) {
    if (!d.leading_monomial().divides(rest.leading_monomial()))
      return std::nullopt;
    FieldElem c = rest.leading_coefficient() / d.leading_coefficient();
    Monomial m = rest.leading_monomial().quotient_by(d.leading_monomial());
    q += Polynomial::monomial(p.ring(), m, c);
    rest -= d.mul_term(m, c);
  }
  return q;
}

GroebnerBasis::GroebnerBasis(RingPtr ring, std::vector<Polynomial> gens,
                             std::optional<std::uint64_t> degree_bound)
    : ring_(std::move(ring)), gens_(std::move(gens)),
      degree_bound_(degree_bound) {
  // Minimalize: drop generators whose leading monomial another one divides.
  std::vector<Polynomial> kept;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < gens_.size() && !redundant; ++j) {
      if (i == j) continue;
      if (gens_[j].leading_monomial().divides(gens_[i].leading_monomial()) &&
          !(gens_[i].leading_monomial() == gens_[j].leading_monomial() && j > i))
        redundant = true;
    }
    if (!redundant) kept.push_back(gens_[i]);
  }
  // Tail-reduce each against the others and normalize.
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) others.push_back(kept[j]);
    Polynomial r = qfano::normal_form(kept[i], others);
    if (!r.is_zero()) reduced.push_back(r.monic());
  }
  std::sort(reduced.begin(), reduced.end(),
            [this](const Polynomial& a, const Polynomial& b) {
              return ring_->compare(a.leading_monomial(), b.leading_monomial()) > 0;
            });
  gens_ = std::move(reduced);
}

bool GroebnerBasis::contains_one() const {
  return gens_.size() == 1 && gens_[0].is_constant() && !gens_[0].is_zero();
}

Polynomial GroebnerBasis::normal_form(const Polynomial& p) const {
  return qfano::normal_form(p, gens_);
}

bool GroebnerBasis::contains(const Polynomial& p) const {
  if (degree_bound_ && !p.is_zero() && p.weighted_degree() > *degree_bound_)
    throw precondition_error(
        "membership query above the degree bound of a truncated basis");
  return normal_form(p).is_zero();
}

bool GroebnerBasis::self_check() const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    for (std::size_t j = i + 1; j < gens_.size(); ++j) {
      Monomial l = Monomial::lcm(gens_[i].leading_monomial(),
                                 gens_[j].leading_monomial());
      if (degree_bound_ && ring_->weighted_degree(l) > *degree_bound_) continue;
      if (!qfano::normal_form(spoly(gens_[i], gens_[j]), gens_).is_zero())
        return false;
    }
  }
  return true;
}

GbResult buchberger(RingPtr ring, std::span<const Polynomial> gens,
                    const GbConfig& cfg) {
  GbStats stats;
  std::vector<Polynomial> basis;
  for (const auto& g : gens) {
    if (!(g.ring() == ring) && !g.ring()->same_structure(*ring))
      throw ring_mismatch("buchberger: generator from a different ring");
    if (g.is_zero()) continue;
    basis.push_back(g.monic());
  }

  auto finish = [&](std::vector<Polynomial> b) {
    GroebnerBasis gb(ring, std::move(b), cfg.degree_bound);
    GbCounters::bases_built.fetch_add(1, std::memory_order_relaxed);
    if (cfg.self_check) {
      GbCounters::self_checks_run.fetch_add(1, std::memory_order_relaxed);
      if (!gb.self_check())
        GbCounters::self_check_failures.fetch_add(1, std::memory_order_relaxed);
    }
    return GbResult{std::move(gb), stats};
  };

  // A nonzero constant anywhere settles everything.
  for (const auto& g : basis)
    if (g.is_constant())
      return finish({Polynomial::constant(ring, 1)});

  struct PendingCmp {
    const WeightedRing* ring;
    bool operator()(const Pair& a, const Pair& b) const {
      if (a.degree != b.degree) return a.degree < b.degree;
      int c = ring->compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      if (a.i != b.i) return a.i < b.i;
      return a.j < b.j;
    }
  };
  std::multiset<Pair, PendingCmp> pending{PendingCmp{ring.get()}};
  // processed[(i,j)] marks pairs already handled (reduced or skipped by a
  // criterion); the chain criterion may only cite such pairs.
  std::set<std::pair<std::size_t, std::size_t>> processed;

  auto push_pairs_for = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      Monomial l = Monomial::lcm(basis[i].leading_monomial(),
                                 basis[j].leading_monomial());
      pending.insert(Pair{i, j, l, ring->weighted_degree(l)});
    }
  };
  for (std::size_t j = 0; j < basis.size(); ++j) push_pairs_for(j);

  while (!pending.empty()) {
    if (stats.pairs_processed >= cfg.pair_budget)
      return GbResult{std::nullopt, stats};
    Pair pr = *pending.begin();
    pending.erase(pending.begin());
    ++stats.pairs_processed;
    processed.insert({pr.i, pr.j});

    if (cfg.degree_bound && pr.degree > *cfg.degree_bound) {
      stats.truncated = true;
      continue;
    }
    // Product criterion: coprime leading monomials reduce to zero.
    if (Monomial::coprime(basis[pr.i].leading_monomial(),
                          basis[pr.j].leading_monomial()))
      continue;
    // Chain criterion: a third element dividing the lcm whose pairs with both
    // endpoints were already handled makes this pair redundant.
    bool chained = false;
    for (std::size_t k = 0; k < basis.size() && !chained; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!basis[k].leading_monomial().divides(pr.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) {
        return std::make_pair(std::min(a, b), std::max(a, b));
      };
      if (processed.count(key(pr.i, k)) && processed.count(key(pr.j, k)))
        chained = true;
    }
    if (chained) continue;

    Polynomial r = normal_form(spoly(basis[pr.i], basis[pr.j]), basis);
    if (r.is_zero()) {
      ++stats.reductions_to_zero;
      continue;
    }
    if (r.is_constant())
      return finish({Polynomial::constant(ring, 1)});
    basis.push_back(r.monic());
    push_pairs_for(basis.size() - 1);
  }
  return finish(std::move(basis));
}

Ternary is_empty_affine(RingPtr ring, std::span<const Polynomial> gens,
                        const GbConfig& cfg) {
  GbResult r = buchberger(std::move(ring), gens, cfg);
  if (r.budget_exceeded()) return Ternary::unknown;
  return r.basis->contains_one() ? Ternary::yes : Ternary::no;
}

Ternary ideal_contains(RingPtr ring, std::span<const Polynomial> gens,
                       const Polynomial& p, const GbConfig& cfg) {
  GbResult r = buchberger(std::move(ring), gens, cfg);
  if (r.budget_exceeded()) return Ternary::unknown;
  return r.basis->contains(p) ? Ternary::yes : Ternary::no;
}

std::vector<Polynomial> saturate_by_product(RingPtr ring,
                                            std::span<const Polynomial> gens,
                                            const std::vector<std::size_t>& vars,
                                            const std::string& fresh_name) {
  std::string tname = fresh_name;
  while (ring->index_of(tname)) tname += "_";
  std::vector<std::string> names = ring->names();
  std::vector<std::uint32_t> weights = ring->weights();
  names.push_back(tname);
  weights.push_back(1);
  RingPtr ext = WeightedRing::make(names, weights, ring->field());

  std::vector<Polynomial> out;
  for (const auto& g : gens) out.push_back(g.substitute({}, ext));
  Polynomial prod = Polynomial::variable(ext, ext->arity() - 1);
  for (auto v : vars) {
    if (v >= ring->arity())
      throw precondition_error("saturation variable index out of range");
    prod = prod * Polynomial::variable(ext, v);
  }
  out.push_back(prod - Polynomial::constant(ext, 1));
  return out;
}

long krull_dimension(const GroebnerBasis& gb) {
  if (gb.contains_one()) return -1;
  std::size_t n = gb.ring()->arity();
  if (n > 20)
    throw precondition_error("krull_dimension supports at most 20 variables");
  std::vector<std::uint32_t> supports;
  for (const auto& g : gb.generators()) {
    std::uint32_t mask = 0;
    const Monomial& lm = g.leading_monomial();
    for (std::size_t i = 0; i < n; ++i)
      if (lm[i]) mask |= (1u << i);
    supports.push_back(mask);
  }
  long best = 0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    bool independent = true;
    for (auto m : supports) {
      if ((m & ~s) == 0) {  // support contained in s
        independent = false;
        break;
      }
    }
    if (independent) best = std::max(best, static_cast<long>(std::popcount(s)));
  }
  return best;
}

}  // namespace qfano
