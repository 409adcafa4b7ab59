#include "hierfair/fairness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "hierfair/errors.hpp"

namespace hierfair {
namespace {

using boost::multiprecision::cpp_int;

constexpr long double kLogTieBand = 1e-9L;
constexpr long double kRealRelativeTie = 1e-12L;
// Beyond this many bits the exact product comparison is skipped.
constexpr long double kMaxExactBits = 1 << 22;

std::weak_ordering compare_reals(long double a, long double b) {
  long double scale = std::max({1.0L, std::fabs(a), std::fabs(b)});
  if (std::fabs(a - b) <= kRealRelativeTie * scale) return std::weak_ordering::equivalent;
  return a < b ? std::weak_ordering::less : std::weak_ordering::greater;
}

std::weak_ordering to_weak(std::strong_ordering o) {
  if (o < 0) return std::weak_ordering::less;
  if (o > 0) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

PowerTerm normalized(PowerTerm t) {
  if (t.base <= Rational(0)) throw InvalidInput("power base must be positive");
  if (t.exponent < Rational(0)) return {Rational(1) / t.base, -t.exponent};
  return t;
}

void require_same_shape(std::span<const int> a, std::span<const int> b, std::span<const Rational> weights) {
  if (a.size() != b.size()) throw InvalidInput("utility vectors of different arity");
  if (weights.size() != a.size()) throw InvalidInput("weight vector arity mismatch");
}

std::weak_ordering compare_lorenz(std::span<const int> a, std::span<const int> b) {
  if (lorenz_dominates(a, b)) return std::weak_ordering::greater;
  if (lorenz_dominates(b, a)) return std::weak_ordering::less;
  long long sa = std::accumulate(a.begin(), a.end(), 0LL);
  long long sb = std::accumulate(b.begin(), b.end(), 0LL);
  if (sa != sb) return sa < sb ? std::weak_ordering::less : std::weak_ordering::greater;
  std::vector<int> xa(a.begin(), a.end()), xb(b.begin(), b.end());
  std::sort(xa.begin(), xa.end());
  std::sort(xb.begin(), xb.end());
  return to_weak(std::lexicographical_compare_three_way(xa.begin(), xa.end(), xb.begin(), xb.end()));
}

std::weak_ordering compare_leximin(std::span<const int> a, std::span<const int> b, std::span<const Rational> w) {
  std::vector<Rational> ea, eb;
  for (std::size_t k = 0; k < a.size(); ++k) {
    ea.push_back(Rational(a[k]) / w[k]);
    eb.push_back(Rational(b[k]) / w[k]);
  }
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return to_weak(std::lexicographical_compare_three_way(ea.begin(), ea.end(), eb.begin(), eb.end()));
}

int zeros(std::span<const int> v) { return static_cast<int>(std::count(v.begin(), v.end(), 0)); }

std::weak_ordering compare_nash(std::span<const int> a, std::span<const int> b, std::span<const Rational> w) {
  int za = zeros(a), zb = zeros(b);
  if (za != zb) return za < zb ? std::weak_ordering::greater : std::weak_ordering::less;
  std::vector<PowerTerm> ta, tb;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > 0) ta.push_back({Rational(a[k]), w[k]});
    if (b[k] > 0) tb.push_back({Rational(b[k]), w[k]});
  }
  return compare_power_products(ta, tb);
}

// sum of w v^p (0^p read as 0), accumulated in a canonical order so that
// equal multisets give bit-identical sums.
long double power_sum(std::span<const int> v, std::span<const Rational> w, long double p) {
  std::vector<std::pair<int, long double>> terms;
  for (std::size_t k = 0; k < v.size(); ++k) terms.emplace_back(v[k], w[k].to_long_double());
  std::sort(terms.begin(), terms.end());
  long double s = 0;
  for (auto [x, wk] : terms) s += wk * (x == 0 ? 0.0L : std::pow(static_cast<long double>(x), p));
  return s;
}

std::weak_ordering compare_p_means(const Rational& p, std::span<const int> a, std::span<const int> b,
                                   std::span<const Rational> w) {
  if (p == Rational(1)) {
    Rational sa, sb;
    for (std::size_t k = 0; k < a.size(); ++k) {
      sa = sa + w[k] * Rational(a[k]);
      sb = sb + w[k] * Rational(b[k]);
    }
    return to_weak(sa <=> sb);
  }
  long double pe = p.to_long_double();
  if (p > Rational(0)) return compare_reals(power_sum(a, w, pe), power_sum(b, w, pe));
  int za = zeros(a), zb = zeros(b);
  if (za != zb) return za < zb ? std::weak_ordering::greater : std::weak_ordering::less;
  // A zero entry drives the mean to 0, so equal zero counts tie.
  if (za > 0) return std::weak_ordering::equivalent;
  // p < 0: the mean (sum)^(1/p) decreases with the sum.
  return compare_reals(power_sum(b, w, pe), power_sum(a, w, pe));
}

}  // namespace

Criterion Criterion::weighted_p_means(Rational p) {
  if (p == Rational(0)) throw InvalidInput("p-means with p = 0 is not supported (use wnash)");
  if (p > Rational(1)) throw InvalidInput("p-means requires p <= 1");
  return Criterion(CriterionKind::weighted_p_means, p);
}

Criterion Criterion::parse(std::string_view tag) {
  if (tag == "lorenz") return lorenz();
  if (tag == "wleximin") return weighted_leximin();
  if (tag == "wnash") return weighted_nash();
  constexpr std::string_view prefix = "wpmeans:";
  if (tag.substr(0, prefix.size()) == prefix) return weighted_p_means(Rational::parse(tag.substr(prefix.size())));
  throw InvalidInput("unknown fairness criterion '" + std::string(tag) + "'");
}

std::string Criterion::tag() const {
  switch (kind_) {
    case CriterionKind::lorenz:
      return "lorenz";
    case CriterionKind::weighted_leximin:
      return "wleximin";
    case CriterionKind::weighted_nash:
      return "wnash";
    case CriterionKind::weighted_p_means:
      return "wpmeans:" + p_.str();
  }
  return "?";
}

bool lorenz_dominates(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw InvalidInput("utility vectors of different arity");
  std::vector<int> xa(a.begin(), a.end()), xb(b.begin(), b.end());
  std::sort(xa.begin(), xa.end());
  std::sort(xb.begin(), xb.end());
  long long pa = 0, pb = 0;
  bool strict = false;
  for (std::size_t t = 0; t < xa.size(); ++t) {
    pa += xa[t];
    pb += xb[t];
    if (pa < pb) return false;
    if (pa > pb) strict = true;
  }
  return strict;
}

std::weak_ordering compare(const Criterion& crit, std::span<const int> a, std::span<const int> b,
                           std::span<const Rational> weights) {
  require_same_shape(a, b, weights);
  if (std::equal(a.begin(), a.end(), b.begin())) return std::weak_ordering::equivalent;
  switch (crit.kind()) {
    case CriterionKind::lorenz:
      return compare_lorenz(a, b);
    case CriterionKind::weighted_leximin:
      return compare_leximin(a, b, weights);
    case CriterionKind::weighted_nash:
      return compare_nash(a, b, weights);
    case CriterionKind::weighted_p_means:
      return compare_p_means(crit.p(), a, b, weights);
  }
  return std::weak_ordering::equivalent;
}

std::weak_ordering compare(const Criterion& crit, const UtilityVector& a, const UtilityVector& b) {
  if (a.weights != b.weights) throw InvalidInput("utility vectors with different weights");
  return compare(crit, a.values, b.values, a.weights);
}

std::weak_ordering compare_power_products(std::span<const PowerTerm> lhs, std::span<const PowerTerm> rhs) {
  std::vector<PowerTerm> l, r;
  for (const auto& t : lhs) l.push_back(normalized(t));
  for (const auto& t : rhs) r.push_back(normalized(t));

  long double la = 0, lb = 0, bits = 0;
  std::int64_t lcm = 1;
  bool lcm_ok = true;
  auto scan = [&](const std::vector<PowerTerm>& terms, long double& log_sum) {
    for (const auto& t : terms) {
      log_sum += t.exponent.to_long_double() * std::log(t.base.to_long_double());
      if (lcm_ok) {
        __int128 next = static_cast<__int128>(lcm) / std::gcd(lcm, t.exponent.den()) * t.exponent.den();
        if (next > (1LL << 40)) lcm_ok = false; else lcm = static_cast<std::int64_t>(next);
      }
    }
  };
  scan(l, la);
  scan(r, lb);
  if (std::fabs(la - lb) >= kLogTieBand) return la < lb ? std::weak_ordering::less : std::weak_ordering::greater;
  if (!lcm_ok) return std::weak_ordering::equivalent;

  auto exponent_of = [&](const PowerTerm& t) {
    return static_cast<long double>(t.exponent.num()) * static_cast<long double>(lcm / t.exponent.den());
  };
  for (const auto* terms : {&l, &r})
    for (const auto& t : *terms)
      bits += exponent_of(t) * (std::log2(static_cast<long double>(t.base.num()) + 1) +
                                std::log2(static_cast<long double>(t.base.den()) + 1));
  if (bits > kMaxExactBits) return std::weak_ordering::equivalent;

  // prod_l n^a * prod_r d^a  vs  prod_r n^a * prod_l d^a
  cpp_int left = 1, right = 1;
  for (const auto& t : l) {
    auto e = static_cast<unsigned>(t.exponent.num() * (lcm / t.exponent.den()));
    left *= boost::multiprecision::pow(cpp_int(t.base.num()), e);
    right *= boost::multiprecision::pow(cpp_int(t.base.den()), e);
  }
  for (const auto& t : r) {
    auto e = static_cast<unsigned>(t.exponent.num() * (lcm / t.exponent.den()));
    right *= boost::multiprecision::pow(cpp_int(t.base.num()), e);
    left *= boost::multiprecision::pow(cpp_int(t.base.den()), e);
  }
  if (left < right) return std::weak_ordering::less;
  if (left > right) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

GainScalar GainScalar::rational(Rational r) {
  GainScalar g;
  g.kind_ = Kind::rational;
  g.value_ = r;
  g.approx_ = r.to_long_double();
  return g;
}

GainScalar GainScalar::power(Rational base, Rational exponent) {
  if (base <= Rational(0)) throw InvalidInput("power gain needs a positive base");
  GainScalar g;
  g.kind_ = Kind::power;
  g.value_ = base;
  g.exponent_ = exponent;
  g.approx_ = std::pow(base.to_long_double(), exponent.to_long_double());
  return g;
}

GainScalar GainScalar::real(long double x) {
  GainScalar g;
  g.kind_ = Kind::real;
  g.approx_ = x;
  return g;
}

GainScalar GainScalar::infinite(Rational scale) {
  GainScalar g;
  g.kind_ = Kind::infinite;
  g.value_ = scale;
  g.approx_ = HUGE_VALL;
  return g;
}

std::string GainScalar::str() const {
  switch (kind_) {
    case Kind::rational:
      return value_.str();
    case Kind::power:
      return "(" + value_.str() + ")^" + exponent_.str();
    case Kind::real:
      return std::to_string(static_cast<double>(approx_));
    case Kind::infinite:
      return value_ == Rational(1) ? "K" : "K*" + value_.str();
  }
  return "?";
}

std::weak_ordering operator<=>(const GainScalar& a, const GainScalar& b) {
  using K = GainScalar::Kind;
  if (a.kind_ == K::infinite || b.kind_ == K::infinite) {
    if (a.kind_ != b.kind_) return a.kind_ == K::infinite ? std::weak_ordering::greater : std::weak_ordering::less;
    return to_weak(a.value_ <=> b.value_);
  }
  if (a.kind_ == K::rational && b.kind_ == K::rational) return to_weak(a.value_ <=> b.value_);
  if (a.kind_ == K::power && b.kind_ == K::power) {
    PowerTerm ta{a.value_, a.exponent_}, tb{b.value_, b.exponent_};
    return compare_power_products(std::span(&ta, 1), std::span(&tb, 1));
  }
  return compare_reals(a.approx_, b.approx_);
}

GainVector gain(const Criterion& crit, int utility, const Rational& weight, NodeId node) {
  if (utility < 0) throw InvalidInput("negative utility");
  if (weight <= Rational(0)) throw InvalidInput("non-positive weight");
  GainVector g;
  g.node = node;
  const Rational v(utility);
  switch (crit.kind()) {
    case CriterionKind::lorenz:
      g.components = {GainScalar::rational(-v)};
      break;
    case CriterionKind::weighted_leximin:
      g.components = {GainScalar::rational(-v / weight), GainScalar::rational(-weight)};
      break;
    case CriterionKind::weighted_nash:
      g.components = {utility > 0 ? GainScalar::power((v + Rational(1)) / v, weight) : GainScalar::infinite()};
      break;
    case CriterionKind::weighted_p_means: {
      const Rational& p = crit.p();
      if (utility == 0 && p < Rational(0)) {
        g.components = {GainScalar::infinite(weight)};
      } else if (p == Rational(1)) {
        g.components = {GainScalar::rational(weight)};
      } else {
        long double pe = p.to_long_double();
        long double x = static_cast<long double>(utility);
        long double delta = std::pow(x + 1, pe) - (utility == 0 ? 0.0L : std::pow(x, pe));
        g.components = {GainScalar::real(static_cast<long double>(p.sign()) * weight.to_long_double() * delta)};
      }
      break;
    }
  }
  return g;
}

bool lex_dominates(const GainVector& a, const GainVector& b) {
  if (a.components.size() != b.components.size()) throw InvalidInput("gain vectors of different dimension");
  for (std::size_t k = 0; k < a.components.size(); ++k) {
    auto c = a.components[k] <=> b.components[k];
    if (c != 0) return c > 0;
  }
  return false;
}

bool gain_precedes(const GainVector& a, const GainVector& b) {
  if (lex_dominates(a, b)) return true;
  if (lex_dominates(b, a)) return false;
  return a.node < b.node;
}

}  // namespace hierfair
