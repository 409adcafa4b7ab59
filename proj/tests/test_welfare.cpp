#include <algorithm>
#include <functional>

#include "doctest.h"
#include "fixtures.hpp"
#include "hierfair/errors.hpp"
#include "hierfair/exchange.hpp"
#include "hierfair/generator.hpp"
#include "hierfair/mgys.hpp"
#include "hierfair/oracle.hpp"
#include "hierfair/rng.hpp"
#include "hierfair/welfare.hpp"

using namespace hierfair;

namespace {

const std::vector<std::string> kFamilies = {"binary_additive", "capped_binary_additive", "uniform_cap",
                                            "binary_assignment"};

// Star-shaped exchange state: agents 1..k, plus the pool.
struct Flat {
  std::vector<Valuation> vals;
  std::vector<LeafAgent> agents;
  ExchangeState st;
};

Valuation random_valuation(Rng& rng, int m) {
  ItemSet a = ItemSet::from_mask(m, uniform_int(rng, 0, (1 << m) - 1));
  switch (uniform_int(rng, 0, 3)) {
    case 0:
      return BinaryAdditive{a};
    case 1:
      return CappedBinaryAdditive{a, static_cast<int>(uniform_int(rng, 1, 3))};
    case 2:
      return UniformCap{static_cast<int>(uniform_int(rng, 1, 3))};
    default: {
      BinaryAssignment b;
      for (int r = 0; r < 3; ++r) b.subagents.push_back(ItemSet::from_mask(m, uniform_int(rng, 0, (1 << m) - 1)));
      return b;
    }
  }
}

// Random non-redundant allocation: items in random order go to a random agent
// when they raise its value, otherwise stay in the pool.
std::unique_ptr<Flat> random_flat(Rng& rng, int k, int m) {
  auto f = std::make_unique<Flat>();
  for (int a = 0; a < k; ++a) f->vals.push_back(random_valuation(rng, m));
  std::vector<const AgentValuation*> ptrs(k + 1, nullptr);
  f->agents.reserve(k);
  for (int a = 0; a < k; ++a) {
    f->agents.emplace_back(f->vals[a]);
    ptrs[a + 1] = &f->agents.back();
  }
  f->st = ExchangeState::with_pool(ptrs, ItemSet::full(m));
  std::vector<Item> order(m);
  for (Item g = 0; g < m; ++g) order[g] = g;
  for (int s = m - 1; s > 0; --s) std::swap(order[s], order[uniform_int(rng, 0, s)]);
  for (Item g : order) {
    NodeId a = static_cast<NodeId>(uniform_int(rng, 1, k));
    if (f->st.agents[a]->gains(f->st.bundles[a], g)) path_augment(f->st, TransferPath{a, {g}});
  }
  return f;
}

// Length of the shortest item sequence meeting the transfer-path definition,
// by exhaustive depth-first search over simple paths.
std::optional<std::size_t> dfs_shortest(const ExchangeState& st, NodeId x, const ItemSet& target) {
  std::optional<std::size_t> best;
  std::vector<Item> path;
  std::function<void(Item)> walk = [&](Item g) {
    path.push_back(g);
    if (target.contains(g)) {
      if (!best || path.size() < *best) best = path.size();
    } else {
      NodeId y = st.owner[g];
      if (y > kPool) {
        st.domain.for_each([&](Item h) {
          if (std::find(path.begin(), path.end(), h) != path.end() || st.bundles[y].contains(h)) return;
          if (st.agents[y]->indifferent(st.bundles[y], g, h)) walk(h);
        });
      }
    }
    path.pop_back();
  };
  gain_set(st, x).for_each(walk);
  return best;
}

}  // namespace

TEST_CASE("first transfer path of the nash example") {
  auto inst = fixtures::nash_example();
  AgentTable table(inst.tree, inst.valuations);
  auto st = ExchangeState::with_pool(table.leaf_pointers(), inst.all_items());
  auto p = shortest_transfer_path(st, 4, st.pool());
  REQUIRE(p);
  CHECK(p->items == std::vector<Item>{0});

  auto moves = path_augment(st, *p);
  auto bundles = MultilevelAllocation::root_only(inst.tree, 5).bundles;
  bundles[kPool] = inst.all_items();
  apply_moves(inst.tree, bundles, moves);
  CHECK(bundles[4] == ItemSet(5, {0}));
  CHECK(bundles[2] == ItemSet(5, {0}));
  CHECK(bundles[kPool] == ItemSet(5, {1, 2, 3, 4}));
  CHECK(bundles[1] == ItemSet::full(5));
}

TEST_CASE("no start items means no path") {
  auto inst = fixtures::university();
  AgentTable table(inst.tree, inst.valuations);
  // only computer a is left and LabH2 does not want it
  auto st = ExchangeState::with_pool(table.leaf_pointers(), ItemSet(6, {0}));
  CHECK(gain_set(st, 5).empty());
  CHECK_FALSE(shortest_transfer_path(st, 5, st.pool()));
}

TEST_CASE("two-step path through an indifferent holder") {
  std::vector<Valuation> vals = {BinaryAdditive{ItemSet(3, {0})}, BinaryAdditive{ItemSet(3, {0, 1})}};
  LeafAgent x(vals[0]), y(vals[1]);
  auto st = ExchangeState::with_pool({nullptr, &x, &y}, ItemSet::full(3));
  path_augment(st, TransferPath{2, {0}});
  auto p = shortest_transfer_path(st, 1, st.pool());
  REQUIRE(p);
  CHECK(p->items == std::vector<Item>{0, 1});
  CHECK(dfs_shortest(st, 1, st.pool()) == std::optional<std::size_t>(2));
  path_augment(st, *p);
  CHECK(st.bundles[1] == ItemSet(3, {0}));
  CHECK(st.bundles[2] == ItemSet(3, {1}));
  CHECK_THROWS_AS(path_augment(st, TransferPath{1, {0}}), InvalidInput);
}

TEST_CASE("breadth-first paths are as short as exhaustive search finds") {
  Rng rng(17);
  int found = 0;
  for (int k = 0; k < 400; ++k) {
    auto f = random_flat(rng, static_cast<int>(uniform_int(rng, 2, 4)), static_cast<int>(uniform_int(rng, 2, 6)));
    NodeId x = static_cast<NodeId>(uniform_int(rng, 1, static_cast<std::int64_t>(f->vals.size())));
    auto expect = dfs_shortest(f->st, x, f->st.pool());
    auto p = shortest_transfer_path(f->st, x, f->st.pool());
    REQUIRE(p.has_value() == expect.has_value());
    if (!p) continue;
    ++found;
    CHECK(p->items.size() == *expect);
    std::vector<int> before;
    for (std::size_t a = 1; a < f->st.agents.size(); ++a) before.push_back(f->st.agents[a]->value(f->st.bundles[a]));
    path_augment(f->st, *p);
    for (std::size_t a = 1; a < f->st.agents.size(); ++a) {
      int now = f->st.agents[a]->value(f->st.bundles[a]);
      CHECK(now == before[a - 1] + (static_cast<NodeId>(a) == x ? 1 : 0));
      CHECK(now == f->st.bundles[a].size());
    }
  }
  CHECK(found > 50);
}

TEST_CASE("augmentations change bundle sizes along the two ancestor chains") {
  Rng rng(23);
  int checked = 0;
  for (int k = 0; k < 150; ++k) {
    GeneratorConfig g;
    g.shape = k % 2 ? TreeShape::comb : TreeShape::balanced;
    g.nodes = static_cast<int>(uniform_int(rng, 5, 16));
    g.items = static_cast<int>(uniform_int(rng, 3, 12));
    g.families = kFamilies;
    g.max_subagents = 6;
    g.seed = rng();
    auto inst = generate(g);
    const Tree& t = inst.tree;
    AgentTable table(t, inst.valuations);
    MgysState mg(t, table.leaf_pointers(), inst.all_items());
    for (auto steps = uniform_int(rng, 0, g.items); steps > 0 && !mg.finished(); --steps) mg.step();

    auto pi = mg.allocation();
    auto st = ExchangeState::with_pool(table.leaf_pointers(), pi[kPool]);
    st.domain = inst.all_items();
    for (NodeId x : t.leaves()) {
      st.bundles[x] = pi[x];
      pi[x].for_each([&](Item it) { st.owner[it] = x; });
    }
    const auto& leaves = t.leaves();
    NodeId x = leaves[uniform_int(rng, 0, static_cast<std::int64_t>(leaves.size()) - 1)];
    NodeId y = bernoulli(rng, 0.3) ? kPool : leaves[uniform_int(rng, 0, static_cast<std::int64_t>(leaves.size()) - 1)];
    if (y == x || st.bundles[y].empty()) continue;
    auto path = shortest_transfer_path(st, x, st.bundles[y]);
    if (!path) continue;
    ++checked;
    auto before = pi.bundles;
    apply_moves(t, pi.bundles, path_augment(st, *path));

    std::vector<int> expect(t.node_count() + 1, 0);
    auto chain = [&](NodeId z) {
      auto c = t.ancestors(z);
      c.push_back(z);
      return c;
    };
    auto cx = chain(x), cy = chain(y);
    for (NodeId a : cx)
      if (std::find(cy.begin(), cy.end(), a) == cy.end()) ++expect[a];
    for (NodeId a : cy)
      if (std::find(cx.begin(), cx.end(), a) == cx.end()) --expect[a];
    for (NodeId i = 0; i <= t.node_count(); ++i)
      CHECK_MESSAGE(pi[i].size() - before[i].size() == expect[i], "node " << i << " x=" << x << " y=" << y);

    CHECK(validate_allocation(t, pi).ok());
    auto v = node_utilities(t, inst.valuations, pi);
    for (NodeId i = 1; i <= t.node_count(); ++i)
      if (i != t.root()) CHECK(v[i] == pi[i].size());
  }
  CHECK(checked > 40);
}

TEST_CASE("estimated utility equals exhaustive welfare") {
  Rng rng(29);
  for (int k = 0; k < 60; ++k) {
    GeneratorConfig g;
    g.shape = k % 2 ? TreeShape::comb : TreeShape::balanced;
    g.nodes = static_cast<int>(uniform_int(rng, 3, 9));
    g.items = static_cast<int>(uniform_int(rng, 1, 6));
    g.p = 0.6;
    g.families = kFamilies;
    g.max_subagents = 5;
    g.seed = rng();
    auto inst = generate(g);
    BruteWelfare brute(inst.tree, inst.valuations, inst.m);
    AgentTable table(inst.tree, inst.valuations);
    for (NodeId i : inst.tree.internal_nodes()) {
      if (inst.tree.leaves(i).size() > 4) continue;
      for (std::uint64_t mask = 0; mask < (1ULL << inst.m); ++mask) {
        ItemSet s = ItemSet::from_mask(inst.m, mask);
        REQUIRE(table[i].value(s) == brute.value(i, s));
      }
    }
  }
}

TEST_CASE("the children's best split reaches the node's estimated utility") {
  Rng rng(37);
  for (int k = 0; k < 40; ++k) {
    GeneratorConfig g;
    g.shape = k % 2 ? TreeShape::comb : TreeShape::balanced;
    g.nodes = static_cast<int>(uniform_int(rng, 3, 9));
    g.items = static_cast<int>(uniform_int(rng, 1, 5));
    g.families = kFamilies;
    g.max_subagents = 5;
    g.seed = rng();
    auto inst = generate(g);
    AgentTable table(inst.tree, inst.valuations);
    for (NodeId i : inst.tree.internal_nodes()) {
      ItemSet s = ItemSet::from_mask(inst.m, uniform_int(rng, 0, (1 << inst.m) - 1));
      int best = 0;
      enumerate_local(s, inst.tree.children(i), [&](const LocalAllocation& a) {
        int sum = 0;
        for (std::size_t c = 0; c < a.nodes.size(); ++c) sum += table[a.nodes[c]].value(a.shares[c]);
        best = std::max(best, sum);
      });
      CHECK(best == table[i].value(s));
    }
  }
}

TEST_CASE("gys on the computer science labs") {
  auto inst = fixtures::university();
  LeafAgent l6(*inst.valuations[6]), l7(*inst.valuations[7]);
  auto a = monolevel_gys({6, 7}, {1, 1}, {&l6, &l7}, ItemSet(6, {2, 3, 4, 5}), Criterion::lorenz());
  CHECK(a.share(6).size() == 2);
  CHECK(a.share(7).size() == 2);
  CHECK(a.valid());

  Valuation capped = CappedBinaryAdditive{ItemSet(6, {0, 1, 4}), 2};
  LeafAgent solo(capped);
  auto b = monolevel_gys({2}, {3}, {&solo}, ItemSet::full(6), Criterion::weighted_nash());
  CHECK(solo.value(b.share(2)) == 2);
}

TEST_CASE("gys matches the exhaustive fair optimum") {
  Rng rng(41);
  const std::vector<Criterion> crits = {Criterion::lorenz(), Criterion::weighted_leximin(),
                                        Criterion::weighted_nash(), Criterion::weighted_p_means(Rational(-1)),
                                        Criterion::weighted_p_means(Rational(1, 2))};
  for (int k = 0; k < 300; ++k) {
    const int m = 4;
    const Criterion& crit = crits[k % crits.size()];
    std::vector<Valuation> vals;
    for (int a = 0; a < 3; ++a)
      vals.push_back(k % 2 ? random_valuation(rng, m) : Valuation(BinaryAdditive{ItemSet::from_mask(m, uniform_int(rng, 0, 15))}));
    std::vector<LeafAgent> agents(vals.begin(), vals.end());
    std::vector<Rational> w;
    for (int a = 0; a < 3; ++a) w.push_back(crit.kind() == CriterionKind::lorenz ? Rational(1) : Rational(uniform_int(rng, 1, 5)));
    std::vector<NodeId> ids = {2, 3, 4};
    auto got = monolevel_gys(ids, w, {&agents[0], &agents[1], &agents[2]}, ItemSet::full(m), crit);
    REQUIRE(got.valid());
    std::vector<int> gv;
    for (int a = 0; a < 3; ++a) gv.push_back(agents[a].value(got.shares[a]));

    int best_sum = -1;
    std::vector<int> best;
    enumerate_local(ItemSet::full(m), ids, [&](const LocalAllocation& alloc) {
      std::vector<int> v;
      int sum = 0;
      for (int a = 0; a < 3; ++a) {
        v.push_back(agents[a].value(alloc.shares[a]));
        sum += v.back();
      }
      if (sum > best_sum || (sum == best_sum && compare(crit, v, best, w) > 0)) {
        best_sum = sum;
        best = v;
      }
    });
    int gsum = gv[0] + gv[1] + gv[2];
    CHECK(gsum == best_sum);
    CHECK_MESSAGE(compare(crit, gv, best, w) == 0, crit.tag() << " case " << k);
  }
}

namespace {

// Agents 1..k plus agent k+1 = min(|S|, m) holding whatever the others do not,
// so unallocated items sit with an ordinary agent and the pool stays empty.
struct Closed {
  std::vector<Valuation> vals;
  std::vector<LeafAgent> agents;
};

ExchangeState closed_allocation(const Closed& c, int m, Rng& rng) {
  std::vector<const AgentValuation*> ptrs(c.agents.size() + 1, nullptr);
  for (std::size_t a = 0; a < c.agents.size(); ++a) ptrs[a + 1] = &c.agents[a];
  auto st = ExchangeState::with_pool(ptrs, ItemSet::full(m));
  const NodeId rest = static_cast<NodeId>(c.agents.size());
  for (Item g = 0; g < m; ++g) {
    NodeId a = static_cast<NodeId>(uniform_int(rng, 1, rest - 1));
    path_augment(st, TransferPath{st.agents[a]->gains(st.bundles[a], g) ? a : rest, {g}});
  }
  return st;
}

}  // namespace

TEST_CASE("a shorter bundle always has a path towards a longer one") {
  Rng rng(43);
  int checked = 0;
  for (int k = 0; k < 500; ++k) {
    int m = static_cast<int>(uniform_int(rng, 2, 6));
    Closed c;
    for (int a = static_cast<int>(uniform_int(rng, 2, 4)); a > 0; --a) c.vals.push_back(random_valuation(rng, m));
    c.vals.push_back(UniformCap{m});
    c.agents.reserve(c.vals.size());
    for (const auto& v : c.vals) c.agents.emplace_back(v);
    auto f = closed_allocation(c, m, rng);
    auto g = closed_allocation(c, m, rng);
    const NodeId n = static_cast<NodeId>(c.agents.size());
    for (NodeId x = 1; x <= n; ++x) {
      if (f.bundles[x].size() >= g.bundles[x].size()) continue;
      ItemSet target(m);
      for (NodeId y = 1; y <= n; ++y)
        if (f.bundles[y].size() > g.bundles[y].size()) target |= f.bundles[y];
      ++checked;
      CHECK(shortest_transfer_path(f, x, target).has_value());
    }
  }
  CHECK(checked > 100);
}
