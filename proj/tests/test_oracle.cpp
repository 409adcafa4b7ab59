#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "hierfair/errors.hpp"
#include "hierfair/generator.hpp"
#include "hierfair/mgys.hpp"
#include "hierfair/oracle.hpp"
#include "hierfair/rng.hpp"
#include "hierfair/welfare.hpp"

using namespace hierfair;

TEST_CASE("local enumeration counts") {
  auto count = [](const ItemSet& s, std::vector<NodeId> nodes) {
    return enumerate_local(s, nodes, [](const LocalAllocation&) {});
  };
  CHECK(count(ItemSet::full(2), {1, 2}) == 9);
  CHECK(count(ItemSet(4), {1, 2, 3}) == 1);

  auto inst = fixtures::university();
  int best = -1, at_best = 0, total = 0;
  std::set<std::vector<std::uint64_t>> seen;
  enumerate_local(ItemSet(6, {2, 3, 4, 5}), {6, 7}, [&](const LocalAllocation& a) {
    ++total;
    CHECK(a.valid());
    seen.insert({a.shares[0].to_mask(), a.shares[1].to_mask()});
    int w = evaluate(*inst.valuations[6], a.shares[0]) + evaluate(*inst.valuations[7], a.shares[1]);
    if (w > best) {
      best = w;
      at_best = 0;
    }
    if (w == best) ++at_best;
  });
  CHECK(total == 81);
  CHECK(seen.size() == 81);
  CHECK(best == 4);
  CHECK(at_best == 16);

  CHECK_THROWS_AS(enumerate_local(ItemSet::full(10), {1, 2, 3}, [](const LocalAllocation&) {}, 1000),
                  BudgetExceeded);
}

TEST_CASE("verdicts on the university allocations") {
  auto inst = fixtures::university();
  auto v2 = check_allocation(inst, fixtures::university_pi_second(inst.tree));
  CHECK(v2.utilitarian_optimal);
  CHECK(v2.at(2).psi);
  CHECK(v2.at(3).psi);
  // with Lorenz at the root too, (3,3) between the departments beats (2,4)
  CHECK_FALSE(v2.at(1).psi);
  CHECK(v2.at(1).best == std::vector<int>{3, 3});

  // a root that entitles DeptCS to twice DeptH's share accepts (2,4)
  auto specs = inst.tree.specs();
  specs[0].criterion = Criterion::weighted_leximin();
  specs[2].weight = 2;
  auto weighted = inst;
  weighted.tree = Tree::build(specs);
  auto vw = check_allocation(weighted, fixtures::university_pi_second(weighted.tree));
  CHECK(vw.utilitarian_optimal);
  CHECK(vw.psi_maximizing);

  auto v1 = check_allocation(inst, fixtures::university_pi_prime(inst.tree));
  CHECK_FALSE(v1.utilitarian_optimal);
  CHECK_FALSE(v1.at(2).utilitarian);
  CHECK(v1.at(3).utilitarian);
  CHECK(v1.at(2).best_welfare == 2);

  auto v0 = check_allocation(inst, fixtures::university_pi(inst.tree));
  CHECK(v0.utilitarian_optimal);
  CHECK_FALSE(v0.psi_maximizing);
  CHECK_FALSE(v0.at(3).psi);
  CHECK(v0.at(3).actual == std::vector<int>{4, 0});
  CHECK(v0.at(3).best == std::vector<int>{2, 2});
  REQUIRE(v0.at(3).witness);
  CHECK(v0.at(3).witness->valid());
}

TEST_CASE("mgys on the nash example fails only the fairness verdict") {
  auto inst = fixtures::nash_example();
  auto v = check_allocation(inst, run_mgys(inst).allocation);
  CHECK(v.utilitarian_optimal);
  CHECK_FALSE(v.psi_maximizing);
  CHECK_FALSE(v.at(1).psi);
  CHECK(v.at(2).psi);
  CHECK(v.at(3).psi);
  CHECK(v.at(1).best == std::vector<int>{3, 2});
}

TEST_CASE("oracle rejects broken allocations") {
  auto inst = fixtures::university();
  auto pi = fixtures::university_pi(inst.tree);
  pi[1].erase(0);
  CHECK_THROWS_AS(check_allocation(inst, pi), InvalidInput);
}

TEST_CASE("oracle best welfare equals the estimated utility") {
  Rng rng(67);
  for (int k = 0; k < 60; ++k) {
    GeneratorConfig g;
    g.shape = k % 2 ? TreeShape::comb : TreeShape::balanced;
    g.nodes = static_cast<int>(uniform_int(rng, 3, 7));
    g.items = static_cast<int>(uniform_int(rng, 1, 6));
    g.families = {"binary_additive", "capped_binary_additive", "uniform_cap", "binary_assignment"};
    g.max_subagents = 5;
    g.seed = rng();
    auto inst = generate(g);
    auto pi = run_mgys(inst).allocation;
    pi[kPool] = ItemSet(inst.m);
    auto v = check_allocation(inst, pi);
    for (const auto& nv : v.nodes)
      CHECK(nv.best_welfare == hat_v(inst.tree, inst.valuations, nv.node, pi[nv.node]));
  }
}
