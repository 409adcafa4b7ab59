#include "hierfair/valuation.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "hierfair/errors.hpp"
#include "hierfair/rng.hpp"

namespace hierfair {
namespace {

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};

class HopcroftKarp {
 public:
  HopcroftKarp(const std::vector<ItemSet>& left, const ItemSet& right)
      : adj_(left.size()), match_left_(left.size(), -1), dist_(left.size()) {
    int universe = right.universe();
    match_right_.assign(universe, -1);
    for (std::size_t l = 0; l < left.size(); ++l) (left[l] & right).for_each([&](Item g) { adj_[l].push_back(g); });
  }

  int run() {
    int matched = 0;
    while (bfs()) {
      for (std::size_t l = 0; l < adj_.size(); ++l)
        if (match_left_[l] < 0 && dfs(static_cast<int>(l))) ++matched;
    }
    return matched;
  }

 private:
  static constexpr int kInf = std::numeric_limits<int>::max();

  bool bfs() {
    std::queue<int> q;
    for (std::size_t l = 0; l < adj_.size(); ++l) {
      dist_[l] = match_left_[l] < 0 ? 0 : kInf;
      if (dist_[l] == 0) q.push(static_cast<int>(l));
    }
    bool found = false;
    while (!q.empty()) {
      int l = q.front();
      q.pop();
      for (Item g : adj_[l]) {
        int l2 = match_right_[g];
        if (l2 < 0) {
          found = true;
        } else if (dist_[l2] == kInf) {
          dist_[l2] = dist_[l] + 1;
          q.push(l2);
        }
      }
    }
    return found;
  }

  bool dfs(int l) {
    for (Item g : adj_[l]) {
      int l2 = match_right_[g];
      if (l2 < 0 || (dist_[l2] == dist_[l] + 1 && dfs(l2))) {
        match_left_[l] = g;
        match_right_[g] = l;
        return true;
      }
    }
    dist_[l] = kInf;
    return false;
  }

  std::vector<std::vector<Item>> adj_;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
  std::vector<int> dist_;
};

}  // namespace

int maximum_matching(const std::vector<ItemSet>& left, const ItemSet& right) {
  if (left.empty() || right.empty()) return 0;
  return HopcroftKarp(left, right).run();
}

int evaluate(const Valuation& val, const ItemSet& bundle) {
  return std::visit(Overloaded{
                        [&](const BinaryAdditive& v) { return (bundle & v.approved).size(); },
                        [&](const CappedBinaryAdditive& v) { return std::min((bundle & v.approved).size(), v.cap); },
                        [&](const UniformCap& v) { return std::min(bundle.size(), v.cap); },
                        [&](const BinaryAssignment& v) { return maximum_matching(v.subagents, bundle); },
                    },
                    val);
}

int marginal_gain(const Valuation& val, const ItemSet& bundle, Item g) {
  if (bundle.contains(g)) throw InvalidInput("marginal gain of an item already in the bundle");
  return evaluate(val, bundle.with(g)) - evaluate(val, bundle);
}

std::string family_name(const Valuation& val) {
  return std::visit(Overloaded{
                        [](const BinaryAdditive&) { return std::string("binary_additive"); },
                        [](const CappedBinaryAdditive&) { return std::string("capped_binary_additive"); },
                        [](const UniformCap&) { return std::string("uniform_cap"); },
                        [](const BinaryAssignment&) { return std::string("binary_assignment"); },
                    },
                    val);
}

std::string MrfReport::str() const {
  if (ok) return exhaustive ? "pass (exhaustive)" : "pass (sampled)";
  std::string s = "fails " + violated;
  if (violated != "empty") s += " at S=" + smaller.str() + " T=" + larger.str() + " g=" + std::to_string(item);
  return s;
}

namespace {

// Checks one chain S ⊆ T, g ∉ T given the four values.
bool check_chain(MrfReport& r, const ItemSet& s, const ItemSet& t, Item g, int fs, int ft, int fsg, int ftg) {
  auto fail = [&](const char* what) {
    r.ok = false;
    r.violated = what;
    r.smaller = s;
    r.larger = t;
    r.item = g;
    return false;
  };
  if (fs > ft || fsg > ftg || fsg < fs || ftg < ft) return fail("monotonicity");
  if (fsg - fs > 1 || ftg - ft > 1) return fail("binary-marginal");
  if (fsg - fs < ftg - ft) return fail("submodularity");
  return true;
}

}  // namespace

MrfReport mrf_axiom_check(const SetFunction& f, int m, int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidInput("mrf_axiom_check needs at least one trial");
  if (m < 0) throw InvalidInput("negative universe size");
  MrfReport r;
  if (f(ItemSet(m)) != 0) {
    r.ok = false;
    r.violated = "empty";
    return r;
  }
  if (m <= 10) {
    r.exhaustive = true;
    const std::uint64_t total = std::uint64_t{1} << m;
    std::vector<int> table(total);
    for (std::uint64_t s = 0; s < total; ++s) table[s] = f(ItemSet::from_mask(m, s));
    // Local conditions over S, S+h and g ∉ S+h imply the global axioms.
    for (std::uint64_t s = 0; s < total; ++s) {
      for (int h = 0; h < m; ++h) {
        if (s >> h & 1U) continue;
        std::uint64_t t = s | std::uint64_t{1} << h;
        if (table[t] < table[s] || table[t] - table[s] > 1) {
          check_chain(r, ItemSet::from_mask(m, s), ItemSet::from_mask(m, s), h, table[s], table[s], table[t],
                      table[t]);
          return r;
        }
        for (int g = 0; g < m; ++g) {
          if (t >> g & 1U) continue;
          std::uint64_t sg = s | std::uint64_t{1} << g, tg = t | std::uint64_t{1} << g;
          if (!check_chain(r, ItemSet::from_mask(m, s), ItemSet::from_mask(m, t), g, table[s], table[t], table[sg],
                           table[tg]))
            return r;
        }
      }
    }
    return r;
  }
  Rng rng(seed);
  for (int k = 0; k < trials; ++k) {
    ItemSet s(m), t(m);
    std::vector<Item> outside;
    for (Item g = 0; g < m; ++g) {
      auto c = uniform_int(rng, 0, 2);
      if (c == 0) {
        s.insert(g);
        t.insert(g);
      } else if (c == 1) {
        t.insert(g);
      } else {
        outside.push_back(g);
      }
    }
    if (outside.empty()) continue;
    Item g = outside[uniform_int(rng, 0, static_cast<std::int64_t>(outside.size()) - 1)];
    if (!check_chain(r, s, t, g, f(s), f(t), f(s.with(g)), f(t.with(g)))) return r;
  }
  return r;
}

}  // namespace hierfair
