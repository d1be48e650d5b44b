#ifndef QFANO_RING_HPP
#define QFANO_RING_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qfano/field.hpp"

namespace qfano {

class WeightedRing;
using RingPtr = std::shared_ptr<const WeightedRing>;

// Exponent vector of a power product.  The arity is fixed by the ring the
// monomial is used with; the monomial itself only stores exponents.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity) : e_(arity, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : e_(std::move(exps)) {}

  std::size_t arity() const { return e_.size(); }
  std::uint32_t operator[](std::size_t i) const { return e_[i]; }
  std::uint32_t& operator[](std::size_t i) { return e_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return e_; }

  bool is_one() const;
  std::uint64_t total_degree() const;

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  // Requires divisibility.
  Monomial quotient_by(const Monomial& d) const;
  static Monomial lcm(const Monomial& a, const Monomial& b);
  static bool coprime(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

 private:
  std::vector<std::uint32_t> e_;
};

// Polynomial ring k[x_0..x_n] graded by positive integer weights, together
// with its coefficient field.  Instances are immutable and shared.
class WeightedRing : public std::enable_shared_from_this<WeightedRing> {
 public:
  static RingPtr make(std::vector<std::string> names,
                      std::vector<std::uint32_t> weights, Field field);

  std::size_t arity() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::uint32_t weight(std::size_t i) const { return weights_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::uint32_t>& weights() const { return weights_; }
  const Field& field() const { return field_; }

  std::optional<std::size_t> index_of(const std::string& name) const;
  std::uint64_t weighted_degree(const Monomial& m) const;

  // Graded reverse lexicographic comparison by weighted degree, ties broken
  // reverse-lexicographically in ring variable order.  Returns <0, 0, >0.
  int compare(const Monomial& a, const Monomial& b) const;

  // Same variables and weights, same field.
  bool same_structure(const WeightedRing& o) const;

  std::string to_string() const;
  std::string monomial_string(const Monomial& m) const;

  // Same names/weights over a different coefficient field.
  RingPtr with_field(const Field& f) const;

 private:
  WeightedRing(std::vector<std::string> names,
               std::vector<std::uint32_t> weights, Field field)
      : names_(std::move(names)), weights_(std::move(weights)),
        field_(std::move(field)) {}

  std::vector<std::string> names_;
  std::vector<std::uint32_t> weights_;
  Field field_;
};

}  // namespace qfano

#endif
