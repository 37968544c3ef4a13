#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "stackspt/lex_dijkstra.hpp"
#include "stackspt/model_graph.hpp"
#include "stackspt/random.hpp"
#include "stackspt/solver.hpp"

using namespace stackspt;

namespace {

Instance make_random(std::uint64_t seed, std::size_t n, std::uint32_t k) {
  RandomInstanceParams params;
  params.n = n;
  params.m = 4 * n;
  params.k = k;
  params.cost_max = 3;
  params.seed = seed;
  return random_instance(params);
}

}  // namespace

TEST(ModelGraph, OnlyRootEdgesWhenEndpointsIsolated) {
  // Tail/head vertices 1..4 reachable only from r through fixed edges, with no
  // fixed edges leaving them.
  const Instance inst(5, 0,
                      {Edge::fixed(0, 1, 1), Edge::fixed(0, 2, 2), Edge::fixed(0, 3, 3), Edge::fixed(0, 4, 4),
                       Edge::priceable(1, 2, 1), Edge::priceable(3, 4, 2)});
  const FixedDistances d(inst);
  const ModelGraph model(inst, d);
  EXPECT_EQ(model.vertex_count(), 5u);
  std::size_t fixed = 0;
  for (const Edge& e : model.edges()) {
    if (e.is_priceable()) continue;
    ++fixed;
    EXPECT_EQ(e.tail, ModelGraph::root_vertex());
  }
  EXPECT_EQ(fixed, 4u);
}

TEST(ModelGraph, PriceableEdgesKeepIdentity) {
  const Instance inst = make_random(5, 30, 4);
  const ModelGraph model(inst, FixedDistances(inst));
  std::set<PriceIndex> seen;
  for (const Edge& e : model.edges()) {
    if (!e.is_priceable()) continue;
    EXPECT_EQ(e.tail, ModelGraph::tail_vertex(e.price_index));
    EXPECT_EQ(e.head, ModelGraph::head_vertex(e.price_index));
    seen.insert(e.price_index);
  }
  EXPECT_EQ(seen, (std::set<PriceIndex>{1, 2, 3, 4}));
}

TEST(ModelGraph, FixedWeightsAreFixedCostDistances) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = make_random(seed, 20 + seed % 20, 1 + seed % 4);
    const ModelGraph model(inst, FixedDistances(inst));
    const std::uint32_t k = inst.priceable_count();
    auto original = [&](VertexId logical) -> VertexId {
      if (logical == 0) return inst.root();
      const PriceIndex i = (logical + 1) / 2;
      return logical % 2 == 1 ? inst.priceable_tail(i) : inst.priceable_head(i);
    };
    std::size_t expected_edges = 0;
    for (VertexId a = 0; a <= 2 * k; ++a) {
      if (a % 2 == 1) continue;  // tails s_i have no outgoing fixed edges
      const auto d = ref::bellman_ford(inst, original(a), nullptr);
      for (VertexId b = 1; b <= 2 * k; ++b) {
        if (a == b || (a != 0 && (a + 1) / 2 == (b + 1) / 2)) continue;
        if (d[original(b)].is_finite()) ++expected_edges;
      }
    }
    std::size_t fixed = 0;
    for (const Edge& e : model.edges()) {
      if (e.is_priceable()) continue;
      ++fixed;
      const auto d = ref::bellman_ford(inst, original(e.tail), nullptr);
      EXPECT_EQ(e.cost, d[original(e.head)]);
      EXPECT_TRUE(e.cost.is_finite());
    }
    EXPECT_EQ(fixed, expected_edges) << "seed " << seed;
  }
}

TEST(ReducedTree, Validation) {
  EXPECT_NO_THROW(ReducedTree({0, 1, -1}));
  EXPECT_THROW(ReducedTree({2, 1}), std::invalid_argument);   // cycle
  EXPECT_THROW(ReducedTree({0, 3, -1}), std::invalid_argument);  // parent absent
  EXPECT_THROW(ReducedTree({0, 5}), std::invalid_argument);
  EXPECT_THROW(ReducedTree({1}), std::invalid_argument);  // self parent
  const ReducedTree t({-1, 0, 2});
  EXPECT_EQ(t.edges(), (std::vector<PriceIndex>{2, 3}));
  EXPECT_EQ(t.to_string(), "{e2<-r, e3<-e2}");
  EXPECT_TRUE(ReducedTree({-1, -1}).empty());
}

TEST(ReducedTree, HugePricesGiveEmptyTree) {
  RandomInstanceParams params;
  params.n = 40;
  params.m = 150;
  params.k = 3;
  params.seed = 8;
  params.fixed_spanning = true;
  const Instance inst = random_instance(params);
  const ModelGraph model(inst, FixedDistances(inst));
  EXPECT_TRUE(model.reduced_tree(PriceFunction::parse("99999,99999,99999")).empty());
}

TEST(ReducedTree, TieExample) {
  const Instance inst = ref::tie_instance();
  const ModelGraph model(inst, FixedDistances(inst));
  EXPECT_EQ(model.reduced_tree(PriceFunction::parse("2")), ReducedTree({0}));
  EXPECT_EQ(model.reduced_tree(PriceFunction::parse("3")), ReducedTree({-1}));
}

TEST(ReducedTree, MatchesContractionOfFullTree) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Instance inst = make_random(seed, 10 + seed % 60, 2 + seed % 3);
    const FixedDistances d(inst);
    const ModelGraph model(inst, d);
    const PriceSampler sampler(inst, d);
    Rng rng(seed);
    for (int t = 0; t < 10; ++t) {
      const PriceFunction p = sampler.sample(rng);
      const auto spt = lex_dijkstra(inst, p);
      const ReducedTree expected = ref::contract_by_walking(inst, spt.parent_edge);
      ASSERT_EQ(model.reduced_tree(p), expected) << "seed " << seed << " prices " << p.to_string();
      ASSERT_EQ(contract_tree(inst, spt), expected);
    }
  }
}

TEST(Sequence, Paths) {
  const ReducedTree t({0, 1, -1});
  EXPECT_EQ(sequence_of(t, 2), (EdgeSequence{1, 2}));
  EXPECT_EQ(sequence_of(t, 1), (EdgeSequence{1}));
  EXPECT_TRUE(sequence_of(t, 3).empty());
}

TEST(Sequence, WInfinity) {
  // r -4-> s1, e1: s1->t1, t1 -3-> s2, e2: s2->t2
  const Instance inst(5, 0, {Edge::fixed(0, 1, 4), Edge::priceable(1, 2, 1), Edge::fixed(2, 3, 3), Edge::priceable(3, 4, 2)});
  const FixedDistances d(inst);
  EXPECT_EQ(w_infinity(EdgeSequence{1}, d), ExtRational(4));
  EXPECT_EQ(w_infinity(EdgeSequence{1, 2}, d), ExtRational(7));
  EXPECT_EQ(w_infinity(EdgeSequence{1, 2}, d), d.from_root(1) + d.from_head(1, 3));
  EXPECT_TRUE(w_infinity(EdgeSequence{2}, d).is_pos_inf());
  EXPECT_THROW((void)w_infinity(EdgeSequence{}, d), std::invalid_argument);
}

TEST(Sequence, PathLengthDecomposes) {
  // w_p(tree path to t_i) == W_inf(sigma(e_i)) + p(sigma(e_i)).
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Instance inst = make_random(seed, 15 + seed % 40, 2 + seed % 3);
    const FixedDistances d(inst);
    const ModelGraph model(inst, d);
    const PriceSampler sampler(inst, d);
    Rng rng(seed + 77);
    const PriceFunction p = sampler.sample(rng);
    const auto spt = lex_dijkstra(inst, p);
    const ReducedTree tree = model.reduced_tree(p);
    for (const PriceIndex i : tree.edges()) {
      const auto seq = sequence_of(tree, i);
      const auto& dist = spt.dist[inst.priceable_head(i)];
      EXPECT_EQ(dist.length, w_infinity(seq, d) + sequence_price(seq, p)) << "seed " << seed;
      EXPECT_EQ(dist.price(), sequence_price(seq, p));
      EXPECT_EQ(-dist.neg_chi, chi(std::span<const PriceIndex>(seq)));
    }
  }
}

TEST(SeqOrder, Cases) {
  const auto p = PriceFunction::parse("5,3,3");
  EXPECT_TRUE(seq_order_lt(EdgeSequence{1}, EdgeSequence{2}, p));
  EXPECT_FALSE(seq_order_lt(EdgeSequence{2}, EdgeSequence{1}, p));
  const auto q = PriceFunction::parse("2,7,2");
  EXPECT_TRUE(seq_order_lt(EdgeSequence{3}, EdgeSequence{1}, q));
  EXPECT_FALSE(seq_order_lt(EdgeSequence{1}, EdgeSequence{3}, q));
  EXPECT_FALSE(seq_order_lt(EdgeSequence{1}, EdgeSequence{1}, q));
}

TEST(SeqOrder, TotalOnDistinctSequences) {
  Rng rng(3);
  for (int rep = 0; rep < 500; ++rep) {
    std::vector<ExtRational> prices;
    for (int i = 0; i < 5; ++i) prices.emplace_back(uniform_int(rng, 1, 3));
    const PriceFunction p(prices);
    auto random_seq = [&] {
      EdgeSequence s;
      for (PriceIndex i = 1; i <= 5; ++i) {
        if (uniform_below(rng, 2) == 0) s.push_back(i);
      }
      if (s.empty()) s.push_back(1);
      return s;
    };
    const auto a = random_seq();
    const auto b = random_seq();
    if (a == b) continue;
    EXPECT_NE(seq_order_lt(a, b, p), seq_order_lt(b, a, p));
  }
}
