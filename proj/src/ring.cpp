#include "qfano/ring.hpp"

#include <algorithm>
#include <set>

namespace qfano {

bool Monomial::is_one() const {
  return std::all_of(e_.begin(), e_.end(), [](std::uint32_t x) { return x == 0; });
}

std::uint64_t Monomial::total_degree() const {
  std::uint64_t d = 0;
  for (auto x : e_) d += x;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

Monomial Monomial::quotient_by(const Monomial& d) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= d.e_[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a);
  for (std::size_t i = 0; i < r.e_.size(); ++i)
    r.e_[i] = std::max(a.e_[i], b.e_[i]);
  return r;
}

bool Monomial::coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.e_.size(); ++i)
    if (a.e_[i] != 0 && b.e_[i] != 0) return false;
  return true;
}

RingPtr WeightedRing::make(std::vector<std::string> names,
                           std::vector<std::uint32_t> weights, Field field) {
  if (names.empty() || names.size() != weights.size())
    throw precondition_error("ring needs matching nonempty name/weight lists");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty() || !seen.insert(n).second)
      throw precondition_error("ring variable names must be distinct and nonempty");
  }
  for (auto w : weights)
    if (w == 0) throw precondition_error("ring weights must be positive");
  return RingPtr(new WeightedRing(std::move(names), std::move(weights),
                                  std::move(field)));
}

std::optional<std::size_t> WeightedRing::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::uint64_t WeightedRing::weighted_degree(const Monomial& m) const {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    d += static_cast<std::uint64_t>(weights_[i]) * m[i];
  return d;
}

int WeightedRing::compare(const Monomial& a, const Monomial& b) const {
  std::uint64_t da = weighted_degree(a), db = weighted_degree(b);
  if (da != db) return da < db ? -1 : 1;
  // Reverse lexicographic tie-break: the monomial whose last differing
  // exponent is larger is the smaller one.
  for (std::size_t i = arity(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

bool WeightedRing::same_structure(const WeightedRing& o) const {
  return names_ == o.names_ && weights_ == o.weights_ && field_ == o.field_;
}

std::string WeightedRing::to_string() const {
  std::string s = field_.to_string() + "[";
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (i) s += ",";
    s += names_[i];
  }
  s += "] weights (";
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(weights_[i]);
  }
  return s + ")";
}

std::string WeightedRing::monomial_string(const Monomial& m) const {
  if (m.is_one()) return "1";
  std::string s;
  for (std::size_t i = 0; i < arity(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names_[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

RingPtr WeightedRing::with_field(const Field& f) const {
  return make(names_, weights_, f);
}

}  // namespace qfano
