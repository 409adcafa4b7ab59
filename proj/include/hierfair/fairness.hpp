#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hierfair/rational.hpp"

namespace hierfair {

using NodeId = int;

enum class CriterionKind { lorenz, weighted_leximin, weighted_nash, weighted_p_means };

/// A node's fairness criterion. Instance-file tags: "lorenz", "wleximin",
/// "wnash", "wpmeans:<p>" with p <= 1 and p != 0.
class Criterion {
 public:
  static Criterion lorenz() { return Criterion(CriterionKind::lorenz, 0); }
  static Criterion weighted_leximin() { return Criterion(CriterionKind::weighted_leximin, 0); }
  static Criterion weighted_nash() { return Criterion(CriterionKind::weighted_nash, 0); }
  static Criterion weighted_p_means(Rational p);
  static Criterion parse(std::string_view tag);

  CriterionKind kind() const { return kind_; }
  /// Exponent of the p-means welfare; zero for the other kinds.
  const Rational& p() const { return p_; }
  std::string tag() const;

  friend bool operator==(const Criterion&, const Criterion&) = default;

 private:
  Criterion(CriterionKind kind, Rational p) : kind_(kind), p_(p) {}

  CriterionKind kind_;
  Rational p_;
};

/// Child utilities (ordered by node id) with their weights.
struct UtilityVector {
  std::vector<int> values;
  std::vector<Rational> weights;
};

/// Total preorder induced by a criterion: `greater` means `a` is fairer than `b`.
///
/// Lorenz dominance is only a partial order. Pairs it cannot separate are ranked
/// by utilitarian sum and then by the increasingly sorted vector, which agrees
/// with dominance whenever dominance holds. Weighted Nash prefers fewer zero
/// entries, then the larger product over the non-zero entries. Weighted p-means
/// with p < 0 prefers fewer zeros too, but any zero drives the mean to 0, so
/// equal non-zero counts of zeros tie. For 0 < p <= 1 the weighted p-mean is
/// compared directly.
std::weak_ordering compare(const Criterion& crit, const UtilityVector& a, const UtilityVector& b);
std::weak_ordering compare(const Criterion& crit, std::span<const int> a, std::span<const int> b,
                           std::span<const Rational> weights);

/// True when the sorted prefix sums of `a` are all >= those of `b` and one is >.
bool lorenz_dominates(std::span<const int> a, std::span<const int> b);

/// One coordinate of a gain vector. Finite values are exact rationals, exact
/// powers of rationals, or reals; `infinite(scale)` realises "K * scale" for an
/// unboundedly large K and orders above every finite value.
class GainScalar {
 public:
  static GainScalar rational(Rational r);
  static GainScalar power(Rational base, Rational exponent);
  static GainScalar real(long double x);
  static GainScalar infinite(Rational scale = Rational(1));

  bool is_infinite() const { return kind_ == Kind::infinite; }
  long double approx() const { return approx_; }
  std::string str() const;

  friend std::weak_ordering operator<=>(const GainScalar& a, const GainScalar& b);
  friend bool operator==(const GainScalar& a, const GainScalar& b) { return (a <=> b) == 0; }

 private:
  enum class Kind { rational, power, real, infinite };

  Kind kind_ = Kind::rational;
  Rational value_;     // rational value, power base, or infinity scale
  Rational exponent_;  // power only
  long double approx_ = 0;
};

/// Gain of one node under its parent's criterion; compared lexicographically,
/// remaining ties go to the least node id.
struct GainVector {
  std::vector<GainScalar> components;
  NodeId node = 0;
};

/// Gain function of a child with utility `utility` and weight `weight`.
///   lorenz            (-v)
///   weighted_leximin  (-v/w, -w)
///   weighted_nash     ((1 + 1/v)^w)           or (K) when v = 0
///   weighted_p_means  (sign(p) w ((v+1)^p - v^p)) or (K w) when v = 0 and p < 0
GainVector gain(const Criterion& crit, int utility, const Rational& weight, NodeId node);

/// Strict lexicographic dominance of component tuples (node ids ignored).
bool lex_dominates(const GainVector& a, const GainVector& b);

/// Selection order between two candidates: lexicographic dominance, then least node id.
bool gain_precedes(const GainVector& a, const GainVector& b);

/// Compares prod base_k^exp_k of two products of positive rational powers, exactly
/// when the exponents are small enough and by logarithms otherwise.
struct PowerTerm {
  Rational base;
  Rational exponent;
};
std::weak_ordering compare_power_products(std::span<const PowerTerm> lhs, std::span<const PowerTerm> rhs);

}  // namespace hierfair
