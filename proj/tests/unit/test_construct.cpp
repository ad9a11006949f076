// Copyright 2026 The upag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "fixtures.hpp"
#include "upag/construct.hpp"
#include "upag/errors.hpp"

using namespace upag;
using upag::testing::five_vertex_example;
using upag::testing::four_vertex_example;

namespace {

// Shuffles edge order and endpoint order, keeping vertex labels.
UndirectedMultigraph scramble(const Dag& d, Rng& rng) {
  const UndirectedMultigraph u = undirect(d);
  std::vector<UndirectedEdge> edges(u.edges().begin(), u.edges().end());
  for (auto& e : edges) {
    if (rng.below(2)) std::swap(e.a, e.b);
  }
  return UndirectedMultigraph(d.vertex_count(), std::move(edges));
}

std::vector<std::multiset<Vertex>> block_sets(const Dag& d) {
  std::vector<std::multiset<Vertex>> out;
  for (std::uint64_t t = 1; t <= d.n(); ++t) out.emplace_back(d.block(t).begin(), d.block(t).end());
  return out;
}

}  // namespace

TEST_SUITE("construct") {
  TEST_CASE("peeling recovers the five-vertex example") {
    const Dag d = five_vertex_example();
    const PeelResult r = peel_with_labels(undirect(d), 3);
    CHECK_FALSE(r.relabelled);
    CHECK(r.dag == d);
    CHECK(peel(undirect(d), 3) == d);
    CHECK(peel_is_unambiguous(undirect(d), 3, 20, 5));
  }

  TEST_CASE("single vertex after the root") {
    const Dag d(1, 4, {0, 0, 0, 0});
    CHECK(peel(undirect(d), 4) == d);
    const BuildOutput b = build(d);
    CHECK(b.tree_parent == std::vector<Vertex>{0, 0});
    CHECK(b.a_prime == std::vector<Vertex>{0, 0, 0});
  }

  TEST_CASE("peel round trip on random generated graphs") {
    for (std::uint64_t i = 0; i < 100; ++i) {
      const std::uint64_t M = 1 + i % 4;
      const std::uint64_t n = 2 + (i * 7) % 60;
      const PaGraph g = upag::testing::random_pa(M, n, 9000 + i);
      CAPTURE(M);
      CAPTURE(n);
      const PeelResult r = peel_with_labels(undirect(g.dag), M);
      CHECK_FALSE(r.relabelled);
      // Block contents must come back as multisets; order within a block is
      // the edge-list order, which undirect keeps.
      CHECK(r.dag == g.dag);
    }
  }

  TEST_CASE("peeling survives shuffled endpoints and a relabelled input") {
    Rng rng(77);
    for (int rep = 0; rep < 30; ++rep) {
      const Dag d = upag::testing::random_simple_dag(rng, 2, 25);
      const PeelResult r = peel_with_labels(scramble(d, rng), 2);
      CHECK(block_sets(r.dag) == block_sets(d));
    }
    // Swap labels 1 and 4 of the five-vertex example: the arrival numbering
    // has to be restored.
    const Dag d = five_vertex_example();
    std::vector<UndirectedEdge> edges;
    auto swap14 = [](Vertex v) -> Vertex { return v == 1 ? 4 : v == 4 ? 1 : v; };
    const UndirectedMultigraph u = undirect(d);
    for (const auto& e : u.edges()) edges.push_back({swap14(e.a), swap14(e.b)});
    const PeelResult r = peel_with_labels(UndirectedMultigraph(6, edges), 3);
    CHECK(r.relabelled);
    CHECK(r.relabel[1] == 4);
    CHECK(r.relabel[4] == 1);
    CHECK(block_sets(r.dag) == block_sets(d));
  }

  TEST_CASE("non-peelable inputs") {
    // Triangle plus root edges: every vertex has degree 4 for M = 2.
    const UndirectedMultigraph tri(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {3, 1}});
    CHECK_THROWS_AS(peel(tri, 2), NotPeelable);
    CHECK_THROWS_AS(peel(UndirectedMultigraph(3, {{0, 1}, {1, 2}}), 2), NotPeelable);
    CHECK_THROWS_AS(peel(UndirectedMultigraph(2, {{1, 1}}), 1), NotPeelable);
    CHECK_THROWS_AS(peel(UndirectedMultigraph(1, {}), 1), NotPeelable);
    CHECK_THROWS_AS(peel(UndirectedMultigraph(2, {{0, 1}}), 0), std::invalid_argument);
  }

  TEST_CASE("sigma rank orders by in-degree then tie key") {
    const Dag d = five_vertex_example();
    // in-degrees: v0 3, v1 6, v2 2, v3 2, v4 2, v5 0.
    const SigmaRank by_index = sigma_rank(d);
    CHECK(by_index.vertex_at == std::vector<Vertex>{5, 2, 3, 4, 0, 1});
    const SigmaRank by_first = sigma_rank(d, TieBreak::kFirstOccurrence);
    CHECK(by_first.vertex_at == std::vector<Vertex>{5, 3, 2, 4, 0, 1});
    const std::vector<std::uint64_t> prio{0, 0, 9, 0, 1, 0};
    const SigmaRank custom = sigma_rank(d, TieBreak::kCustom, prio);
    CHECK(custom.vertex_at == std::vector<Vertex>{5, 3, 4, 2, 0, 1});
    for (std::uint64_t r = 0; r < 6; ++r) CHECK(custom.rank[custom.vertex_at[r]] == r);
    CHECK_THROWS_AS(sigma_rank(d, TieBreak::kCustom, std::vector<std::uint64_t>{1, 2}),
                    std::invalid_argument);
  }

  TEST_CASE("tie-breaks diverge when first occurrence disagrees with index") {
    // v1 and v2 both have in-degree 1, but v2 is targeted first.
    const Dag e(4, 1, {0, 0, 2, 1});
    const SigmaRank a = sigma_rank(e);
    const SigmaRank b = sigma_rank(e, TieBreak::kFirstOccurrence);
    CHECK(a.rank[1] < a.rank[2]);
    CHECK(b.rank[2] < b.rank[1]);
  }

  TEST_CASE("five-vertex build under first-occurrence ties") {
    const BuildOutput b = build(five_vertex_example(), TieBreak::kFirstOccurrence);
    CHECK(b.tree_parent == std::vector<Vertex>{0, 0, 1, 1, 3, 3});
    CHECK(b.a_prime == std::vector<Vertex>{0, 0, 1, 1, 1, 1, 2, 2, 4, 4});
    CHECK(b.relabel == std::vector<Vertex>{0, 1, 2, 3, 4, 5});
    CHECK(b.inverse == b.relabel);
  }

  TEST_CASE("five-vertex build under index ties") {
    const BuildOutput b = build(five_vertex_example());
    // Block 4 = {3,2,2} now hangs off v2, which moves v4 into v2's subtree.
    CHECK(b.relabel == std::vector<Vertex>{0, 1, 2, 4, 3, 5});
    CHECK(b.tree_parent == std::vector<Vertex>{0, 0, 1, 2, 1, 4});
    CHECK(b.a_prime == std::vector<Vertex>{0, 0, 1, 1, 4, 2, 1, 1, 3, 3});
  }

  TEST_CASE("four-vertex build") {
    const BuildOutput b = build(four_vertex_example());
    // in-degrees: v0 7, v1 4, v2 0, v3 1, v4 0. Block 4 = {0,1,3} hangs off v3.
    CHECK(b.tree_parent.size() == 5);
    for (Vertex j = 1; j <= 4; ++j) CHECK(b.tree_parent[j] < j);
    CHECK(b.relabel[0] == 0);
    CHECK(b.a_prime.size() == 8);
  }

  TEST_CASE("M = 1 gives an empty reduced string") {
    const PaGraph g = upag::testing::random_pa(1, 50, 3);
    const BuildOutput b = build(g.dag);
    CHECK(b.a_prime.empty());
    // The tree is the whole graph, relabelled.
    for (Vertex old = 1; old <= 50; ++old) {
      CHECK(b.tree_parent[b.relabel[old]] == b.relabel[g.dag.block(old)[0]]);
    }
  }

  TEST_CASE("property: parents minimise sigma and A' keeps the rest") {
    Rng rng(2024);
    for (int rep = 0; rep < 60; ++rep) {
      const std::uint64_t M = 1 + rng.below(5);
      const std::uint64_t n = 1 + rng.below(80);
      const Dag d = upag::testing::random_dag(rng, M, n);
      const auto tie = rep % 2 ? TieBreak::kFirstOccurrence : TieBreak::kAscendingIndex;
      const SigmaRank s = sigma_rank(d, tie);
      const BuildOutput b = build(d, s);
      REQUIRE(b.a_prime.size() == n * (M - 1));
      // Preorder: parents precede children and labels are a bijection.
      std::vector<bool> seen(n + 1, false);
      for (Vertex old = 0; old <= n; ++old) {
        REQUIRE(b.relabel[old] <= n);
        seen[b.relabel[old]] = true;
        CHECK(b.inverse[b.relabel[old]] == old);
      }
      CHECK(std::all_of(seen.begin(), seen.end(), [](bool x) { return x; }));
      for (Vertex j = 1; j <= n; ++j) {
        const Vertex old = b.inverse[j];
        const Vertex p_old = b.inverse[b.tree_parent[j]];
        CHECK(b.tree_parent[j] < j);
        std::multiset<Vertex> block(d.block(old).begin(), d.block(old).end());
        for (Vertex w : block) CHECK(s.rank[p_old] <= s.rank[w]);
        // Block j of A' plus the parent equals the relabelled block.
        std::multiset<Vertex> expect;
        for (Vertex w : block) expect.insert(b.relabel[w]);
        std::multiset<Vertex> got(b.a_prime.begin() + (j - 1) * (M - 1),
                                  b.a_prime.begin() + j * (M - 1));
        got.insert(b.tree_parent[j]);
        CHECK(got == expect);
      }
    }
  }

  TEST_CASE("build rejects a rank of the wrong size") {
    SigmaRank s;
    s.rank = {0, 1};
    CHECK_THROWS_AS(build(five_vertex_example(), s), std::invalid_argument);
  }
}
