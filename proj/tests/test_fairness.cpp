#include <algorithm>

#include <boost/multiprecision/cpp_int.hpp>

#include "doctest.h"
#include "hierfair/errors.hpp"
#include "hierfair/fairness.hpp"
#include "hierfair/rng.hpp"

using namespace hierfair;

namespace {

std::vector<Rational> ones(std::size_t n) { return std::vector<Rational>(n, Rational(1)); }

std::weak_ordering cmp(const Criterion& c, std::vector<int> a, std::vector<int> b, std::vector<Rational> w = {}) {
  if (w.empty()) w = ones(a.size());
  return compare(c, a, b, w);
}

std::vector<Criterion> criteria() {
  return {Criterion::lorenz(),
          Criterion::weighted_leximin(),
          Criterion::weighted_nash(),
          Criterion::weighted_p_means(Rational(-1)),
          Criterion::weighted_p_means(Rational(-5, 2)),
          Criterion::weighted_p_means(Rational(1, 3)),
          Criterion::weighted_p_means(Rational(1))};
}

}  // namespace

TEST_CASE("worked comparisons") {
  CHECK(cmp(Criterion::lorenz(), {1, 1, 2, 2}, {1, 1, 4, 0}) > 0);
  CHECK(cmp(Criterion::weighted_nash(), {3, 2}, {2, 3}, {5, 2}) > 0);
  for (const auto& c : criteria()) CHECK(cmp(c, {0, 3, 1}, {0, 3, 1}, {2, 1, Rational(1, 2)}) == 0);
  CHECK_THROWS_AS(cmp(Criterion::lorenz(), {1, 2}, {1}), InvalidInput);
}

TEST_CASE("criterion tags") {
  CHECK(Criterion::parse("wpmeans:-1/2") == Criterion::weighted_p_means(Rational(-1, 2)));
  CHECK(Criterion::parse("wpmeans:0.5").tag() == "wpmeans:1/2");
  CHECK(Criterion::parse("wleximin").tag() == "wleximin");
  CHECK_THROWS_AS(Criterion::parse("wpmeans:0"), InvalidInput);
  CHECK_THROWS_AS(Criterion::parse("wpmeans:2"), InvalidInput);
  CHECK_THROWS_AS(Criterion::parse("egalitarian"), InvalidInput);
}

TEST_CASE("zero entries") {
  auto nash = Criterion::weighted_nash();
  CHECK(cmp(nash, {1, 1, 0}, {9, 0, 0}) > 0);
  CHECK(cmp(nash, {2, 0}, {1, 0}) > 0);
  auto harmonic = Criterion::weighted_p_means(Rational(-1));
  CHECK(cmp(harmonic, {1, 1, 0}, {9, 0, 0}) > 0);
  // a zero already drives the mean to 0
  CHECK(cmp(harmonic, {5, 0}, {1, 0}) == 0);
  CHECK(cmp(harmonic, {0, 1, 0}, {1, 0, 0}, {2, 3, 1}) == 0);
  // for p > 0 the mean is compared as is
  CHECK(cmp(Criterion::weighted_p_means(Rational(1, 2)), {9, 0}, {1, 1}) > 0);
}

TEST_CASE("weighted leximin scales by weight") {
  auto lex = Criterion::weighted_leximin();
  // ratios (1, 1/2) vs (1/2, 1): same sorted vector
  CHECK(cmp(lex, {2, 1}, {1, 2}, {2, 2}) == 0);
  CHECK(cmp(lex, {2, 1}, {1, 2}, {2, 1}) > 0);
}

TEST_CASE("each comparison is a total preorder") {
  Rng rng(4);
  for (const auto& c : criteria()) {
    for (int k = 0; k < 300; ++k) {
      std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
      std::vector<Rational> w;
      for (std::size_t j = 0; j < n; ++j) w.push_back(Rational(uniform_int(rng, 1, 5), uniform_int(rng, 1, 3)));
      auto draw = [&] {
        std::vector<int> v;
        for (std::size_t j = 0; j < n; ++j) v.push_back(static_cast<int>(uniform_int(rng, 0, 4)));
        return v;
      };
      auto a = draw(), b = draw(), d = draw();
      auto ab = compare(c, a, b, w), ba = compare(c, b, a, w);
      CHECK((ab < 0) == (ba > 0));
      CHECK((ab == 0) == (ba == 0));
      auto bd = compare(c, b, d, w), ad = compare(c, a, d, w);
      if (ab >= 0 && bd >= 0) CHECK(ad >= 0);
      if (ab > 0 && bd >= 0) CHECK(ad > 0);
      CHECK(compare(c, a, a, w) == 0);
    }
  }
}

TEST_CASE("gain values") {
  auto lorenz = gain(Criterion::lorenz(), 3, Rational(1), 2);
  CHECK(lorenz.components.size() == 1);
  CHECK(lorenz.components[0] == GainScalar::rational(Rational(-3)));

  auto k = gain(Criterion::weighted_nash(), 0, Rational(5), 2);
  CHECK(k.components[0].is_infinite());
  CHECK(k.components[0] > GainScalar::real(1e300L));

  auto nash = gain(Criterion::weighted_nash(), 1, Rational(5), 2);
  CHECK(nash.components[0] == GainScalar::rational(Rational(32)));

  // larger weight first among zero-utility children when p < 0
  auto heavy = gain(Criterion::weighted_p_means(Rational(-1)), 0, Rational(3), 5);
  auto light = gain(Criterion::weighted_p_means(Rational(-1)), 0, Rational(2), 4);
  CHECK(lex_dominates(heavy, light));
}

TEST_CASE("lexicographic dominance") {
  GainVector a{{GainScalar::rational(2), GainScalar::rational(0)}, 1};
  GainVector b{{GainScalar::rational(1), GainScalar::rational(9)}, 2};
  CHECK(lex_dominates(a, b));
  GainVector c{{GainScalar::rational(1), GainScalar::rational(1)}, 1};
  GainVector d{{GainScalar::rational(1), GainScalar::rational(1)}, 2};
  CHECK_FALSE(lex_dominates(c, d));
  CHECK(gain_precedes(c, d));
  CHECK_FALSE(gain_precedes(d, c));
  auto g3 = gain(Criterion::lorenz(), 3, Rational(1), 1);
  auto g2 = gain(Criterion::lorenz(), 2, Rational(1), 2);
  CHECK_FALSE(lex_dominates(g3, g2));
  CHECK(lex_dominates(g2, g3));
  GainVector short_one{{GainScalar::rational(1)}, 1};
  CHECK_THROWS_AS(lex_dominates(short_one, a), InvalidInput);
}

TEST_CASE("gains never increase with utility") {
  for (const auto& c : criteria()) {
    for (int wn = 1; wn <= 5; ++wn) {
      Rational w(wn, wn % 2 ? 1 : 3);
      for (int v = 0; v < 30; ++v) {
        auto lo = gain(c, v, w, 1), hi = gain(c, v + 1, w, 1);
        CHECK_MESSAGE(!lex_dominates(hi, lo), c.tag() << " w=" << w.str() << " v=" << v);
      }
    }
  }
}

TEST_CASE("log-based Nash comparison matches exact products") {
  using boost::multiprecision::cpp_int;
  Rng rng(12);
  auto nash = Criterion::weighted_nash();
  for (int k = 0; k < 3000; ++k) {
    std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 6));
    std::vector<int> a, b;
    for (std::size_t j = 0; j < n; ++j) {
      a.push_back(static_cast<int>(uniform_int(rng, 1, 20)));
      b.push_back(static_cast<int>(uniform_int(rng, 1, 20)));
    }
    // permutations and shared factors make exact ties common
    if (k % 3 == 0) {
      b = a;
      std::reverse(b.begin(), b.end());
    }
    cpp_int pa = 1, pb = 1;
    for (std::size_t j = 0; j < n; ++j) {
      pa *= a[j];
      pb *= b[j];
    }
    auto expect = pa < pb ? std::weak_ordering::less : pa > pb ? std::weak_ordering::greater : std::weak_ordering::equivalent;
    REQUIRE(compare(nash, a, b, ones(n)) == expect);
  }
  // 2^6 = 4^3 = 8^2 with fractional weights
  std::vector<PowerTerm> l{{Rational(2), Rational(6)}}, r{{Rational(4), Rational(3)}};
  CHECK(compare_power_products(l, r) == 0);
  std::vector<PowerTerm> h{{Rational(8), Rational(1, 2)}}, q{{Rational(2), Rational(3, 2)}};
  CHECK(compare_power_products(h, q) == 0);
}

namespace {

bool weakly_dominates(std::vector<int> a, std::vector<int> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  int sa = 0, sb = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sa += a[k];
    sb += b[k];
    if (sa < sb) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("lorenz completion picks the dominating vector when there is one") {
  Rng rng(31);
  auto lorenz = Criterion::lorenz();
  int with_dominator = 0;
  for (int k = 0; k < 2000; ++k) {
    std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 4));
    std::vector<std::vector<int>> cands(static_cast<std::size_t>(uniform_int(rng, 2, 6)));
    for (auto& v : cands)
      for (std::size_t j = 0; j < n; ++j) v.push_back(static_cast<int>(uniform_int(rng, 0, 3)));
    const std::vector<int>* dominator = nullptr;
    for (const auto& v : cands) {
      bool all = std::all_of(cands.begin(), cands.end(), [&](const auto& u) { return weakly_dominates(v, u); });
      if (all) dominator = &v;
    }
    if (!dominator) continue;
    ++with_dominator;
    auto best = *std::max_element(cands.begin(), cands.end(), [&](const auto& x, const auto& y) {
      return compare(lorenz, x, y, ones(n)) < 0;
    });
    CHECK(compare(lorenz, best, *dominator, ones(n)) == 0);
  }
  CHECK(with_dominator > 100);
  CHECK(lorenz_dominates(std::vector<int>{1, 1, 2, 2}, std::vector<int>{1, 1, 4, 0}));
  CHECK_FALSE(lorenz_dominates(std::vector<int>{2, 2}, std::vector<int>{2, 2}));
}
