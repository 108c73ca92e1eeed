#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ncauth/errors.hpp"
#include "ncauth/network.hpp"

using namespace ncauth;
using namespace testing_helpers;

namespace {

struct Fixture {
  SystemParams params;
  Network net;
  KeyMaterial keys;
  std::vector<Fel> messages;
  std::vector<TaggedPacket> packets;
};

// Butterfly over F_q with verifier keys for all six non-source nodes.
Fixture butterfly_fixture(std::uint32_t q, std::size_t l, std::uint64_t seed, std::size_t n = 2) {
  Rng rng(seed);
  const auto params = random_params(q, l, 2, 2, n, 6, rng);
  Network net = topologies::butterfly(make_field(q, 1), n);
  auto keys = keygen(params, seed);
  std::vector<Fel> msgs;
  std::vector<TaggedPacket> pk;
  for (std::size_t i = 0; i < n; ++i) {
    msgs.push_back(params.field->random_nonzero(rng));
    pk.push_back(tag(params, keys.source, msgs.back()));
  }
  return {params, std::move(net), std::move(keys), std::move(msgs), std::move(pk)};
}

Network single_edge(const FieldPtr& base) {
  std::vector<Node> nodes{{"s", {}, false}, {"t", 0, true}};
  std::vector<Edge> edges{{"s-t", 0, 1}};
  std::vector<std::optional<FfMatrix>> k{FfMatrix::from_ints(base, {{1}}), std::nullopt};
  return Network(base, 1, nodes, 0, edges, k);
}

std::vector<std::uint32_t> row_ints(const FfMatrix& m, std::size_t r) {
  std::vector<std::uint32_t> out;
  for (const auto& x : m.row(r)) out.push_back(x[0]);
  return out;
}

}  // namespace

TEST(GlobalKernels, SingleEdge) {
  const auto base = make_field(3, 1);
  const Network net = single_edge(base);
  const auto g = compute_global_kernels(net);
  EXPECT_EQ(row_ints(g.edge_vectors, 0), (std::vector<std::uint32_t>{1}));
}

TEST(GlobalKernels, ButterflyMiddleEdgeCarriesSum) {
  const auto base = make_field(2, 1);
  const Network net = topologies::butterfly(base);
  const auto g = compute_global_kernels(net);
  EXPECT_EQ(row_ints(g.edge_vectors, net.edge_index("c-d")), (std::vector<std::uint32_t>{1, 1}));
  EXPECT_EQ(row_ints(g.edge_vectors, net.edge_index("s-a")), (std::vector<std::uint32_t>{1, 0}));
  EXPECT_EQ(row_ints(g.edge_vectors, net.edge_index("b-t2")), (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(rank(g.at_node(net, net.node_index("t1"))), 2u);
  EXPECT_EQ(rank(g.at_node(net, net.node_index("t2"))), 2u);
}

TEST(GlobalKernels, ZeroKernelsGiveZeroVectors) {
  const auto base = make_field(5, 1);
  const Network net = topologies::butterfly(base);
  std::vector<std::optional<FfMatrix>> zero;
  for (std::size_t i = 0; i < net.nodes().size(); ++i) {
    const FfMatrix& k = net.kernel(i);
    zero.push_back(i == net.source() ? k : FfMatrix(base, k.rows(), k.cols()));
  }
  const Network z = net.with_kernels(zero);
  const auto g = compute_global_kernels(z);
  for (std::size_t e = 0; e < z.edges().size(); ++e) {
    if (z.edges()[e].tail == z.source()) continue;
    for (auto x : row_ints(g.edge_vectors, e)) EXPECT_EQ(x, 0u);
  }
}

TEST(GlobalKernels, RecursionHoldsOnRandomKernels) {
  const auto base = make_field(7, 1);
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const Network net = topologies::butterfly(base, 2).with_random_kernels(rng);
    const auto g = compute_global_kernels(net);
    for (std::size_t i = 0; i < net.nodes().size(); ++i) {
      if (i == net.source()) continue;
      const auto in = net.in_edges(i);
      const auto out = net.out_edges(i);
      for (std::size_t o = 0; o < out.size(); ++o) {
        for (std::size_t c = 0; c < 2; ++c) {
          std::uint64_t sum = 0;
          for (std::size_t d = 0; d < in.size(); ++d) sum += std::uint64_t{net.kernel(i)(d, o)[0]} * g.edge_vectors(in[d], c)[0];
          EXPECT_EQ(g.edge_vectors(out[o], c)[0], sum % 7);
        }
      }
    }
  }
}

TEST(Topology, RejectsMalformedGraphs) {
  const auto base = make_field(2, 1);
  const auto one = FfMatrix::from_ints(base, {{1}});
  // cycle u -> w -> u
  EXPECT_THROW(Network(base, 1, {{"s", {}, false}, {"u", {}, false}, {"w", {}, false}}, 0,
                       {{"s-u", 0, 1}, {"u-w", 1, 2}, {"w-u", 2, 1}},
                       {one, FfMatrix::from_ints(base, {{1}, {1}}), one}),
               TopologyError);
  // edge into the source
  EXPECT_THROW(Network(base, 1, {{"s", {}, false}, {"t", {}, false}}, 0, {{"s-t", 0, 1}, {"t-s", 1, 0}},
                       {one, one}),
               TopologyError);
  // kernel with wrong dimensions
  EXPECT_THROW(Network(base, 1, {{"s", {}, false}, {"t", {}, true}}, 0, {{"s-t", 0, 1}},
                       {FfMatrix::from_ints(base, {{1, 1}}), std::nullopt}),
               TopologyError);
  // duplicate node ids
  EXPECT_THROW(Network(base, 1, {{"s", {}, false}, {"s", {}, true}}, 0, {{"s-s", 0, 1}}, {one, std::nullopt}),
               TopologyError);
  EXPECT_THROW(topologies::by_name("ring", base, 1), ParameterError);
}

TEST(Topology, TopologicalOrderBreaksTiesBySmallestIndex) {
  const auto base = make_field(2, 1);
  const Network net = topologies::butterfly(base);
  const auto order = net.topological_order();
  EXPECT_EQ(std::vector<std::size_t>(order.begin(), order.end()), (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6}));
}

TEST(Topology, BuiltinsShape) {
  const auto base = make_field(3, 1);
  const Network line = topologies::line(base, 2, 3);
  EXPECT_EQ(line.edges().size(), 6u);
  EXPECT_EQ(line.sinks(), (std::vector<std::size_t>{3}));
  EXPECT_EQ(line.verifier_count(), 3u);
  const Network dia = topologies::diamond(base, 2);
  EXPECT_EQ(dia.sinks(), (std::vector<std::size_t>{3}));
  EXPECT_EQ(topologies::butterfly(base).verifier_count(), 6u);
  EXPECT_EQ(topologies::butterfly(base).sinks().size(), 2u);
}

TEST(Simulate, HonestFlowEqualsGlobalKernelTimesSourceMatrix) {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    auto fx = butterfly_fixture(t % 2 ? 3 : 5, 2, 100 + t);
    const Network net = fx.net.with_random_kernels(rng);
    const auto g = compute_global_kernels(net);
    const auto flow = simulate(fx.params, net, fx.packets);
    const auto base = net.base_field();
    std::vector<std::vector<std::uint64_t>> X;
    for (const auto& p : fx.packets) {
      const auto flat = flatten(fx.params, p);
      X.emplace_back(flat.begin(), flat.end());
    }
    const FfMatrix Y = mat_mul(g.edge_vectors, FfMatrix::from_ints(base, X));
    for (std::size_t e = 0; e < net.edges().size(); ++e) {
      EXPECT_EQ(flow.edge_packets[e], FlatPacket(row_ints(Y, e)));
    }
    EXPECT_TRUE(flow.log.empty());
  }
}

TEST(Simulate, IdentitySubstitutionChangesNothing) {
  auto fx = butterfly_fixture(2, 2, 5);
  const auto honest = simulate(fx.params, fx.net, fx.packets);
  const InterventionSpec iv{"d", "d-t1", {1}};
  const auto run = simulate(fx.params, fx.net, fx.packets, std::span(&iv, 1));
  EXPECT_EQ(run.edge_packets, honest.edge_packets);
  ASSERT_EQ(run.log.size(), 1u);
  EXPECT_EQ(run.log[0].honest, run.log[0].substituted);
}

TEST(Simulate, InterventionErrors) {
  auto fx = butterfly_fixture(3, 1, 6);
  auto bad = [&](InterventionSpec iv) { return simulate(fx.params, fx.net, fx.packets, std::span(&iv, 1)); };
  EXPECT_THROW(bad({"c", "c-d", {1, 1}}), AttackSpecError);     // sums to 2
  EXPECT_THROW(bad({"c", "c-d", {1}}), AttackSpecError);        // wrong length
  EXPECT_THROW(bad({"s", "s-a", {1, 0}}), AttackSpecError);     // source
  EXPECT_THROW(bad({"c", "d-t1", {1, 0}}), AttackSpecError);    // not an out edge of c
  EXPECT_THROW(bad({"zz", "c-d", {1, 0}}), AttackSpecError);    // unknown node
  EXPECT_THROW(bad({"c", "c-d", {4, 0}}), AttackSpecError);     // not reduced
  EXPECT_NO_THROW(bad({"c", "c-d", {2, 2}}));
}

TEST(Pollution, ButterflyMiddleSubstitutionIsUndetectedButCorrupts) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto fx = butterfly_fixture(2, 3, 200 + seed);
    const InterventionSpec iv{"c", "c-d", {1, 0}};
    const auto flow = simulate(fx.params, fx.net, fx.packets, std::span(&iv, 1));
    for (const auto& check : check_verifiers(fx.params, fx.net, flow, fx.keys.verifiers)) {
      EXPECT_TRUE(check.accepted);
    }
    ASSERT_EQ(flow.log.size(), 1u);
    if (flow.log[0].honest == flow.log[0].substituted) continue;
    const auto g = compute_global_kernels(fx.net);
    bool diverged = false;
    for (auto t : fx.net.sinks()) {
      const auto d = decode(fx.params, fx.net, g, flow, t);
      diverged = diverged || d.status != DecodeResult::Status::kOk || d.payloads != fx.messages;
    }
    EXPECT_TRUE(diverged);
  }
}

TEST(Decode, IdentityAndHonestButterfly) {
  auto fx = butterfly_fixture(3, 2, 7);
  const auto g = compute_global_kernels(fx.net);
  const auto flow = simulate(fx.params, fx.net, fx.packets);
  for (auto t : fx.net.sinks()) {
    const auto d = decode(fx.params, fx.net, g, flow, t);
    EXPECT_EQ(d.status, DecodeResult::Status::kOk);
    EXPECT_EQ(d.rank, 2u);
    EXPECT_EQ(d.payloads, fx.messages);
    EXPECT_EQ(d.packets, fx.packets);
  }
  EXPECT_THROW(decode(fx.params, fx.net, g, flow, fx.net.node_index("c")), ParameterError);

  Rng rng(1);
  const auto p1 = random_params(3, 2, 2, 1, 1, 1, rng);
  const Network one = single_edge(make_field(3, 1));
  const auto keys = keygen(p1, 1);
  const std::vector<TaggedPacket> pk{tag(p1, keys.source, p1.field->random(rng))};
  const auto d = decode(p1, one, compute_global_kernels(one), simulate(p1, one, pk), 1);
  EXPECT_EQ(d.packets, pk);
}

TEST(Decode, RankDeficientAndInconsistent) {
  auto fx = butterfly_fixture(3, 1, 8);
  const auto base = fx.net.base_field();
  std::vector<std::optional<FfMatrix>> k;
  for (std::size_t i = 0; i < fx.net.nodes().size(); ++i) k.push_back(fx.net.kernel(i));
  k[fx.net.node_index("d")] = FfMatrix(base, 1, 2);
  const Network broken = fx.net.with_kernels(k);
  const auto d = decode(fx.params, broken, compute_global_kernels(broken), simulate(fx.params, broken, fx.packets),
                        broken.node_index("t1"));
  EXPECT_EQ(d.status, DecodeResult::Status::kRankDeficient);
  EXPECT_EQ(d.rank, 1u);

  // One message reaching the sink twice; tampering with one copy makes the
  // sink's system inconsistent.
  Rng rng(2);
  const auto p1 = random_params(3, 1, 2, 1, 1, 1, rng);
  const Network dia = topologies::diamond(base, 1);
  const auto keys = keygen(p1, 2);
  const std::vector<TaggedPacket> pk{tag(p1, keys.source, p1.field->one())};
  auto flow = simulate(p1, dia, pk);
  flow.edge_packets[dia.edge_index("w-t")][1] = (flow.edge_packets[dia.edge_index("w-t")][1] + 1) % 3;
  const auto bad = decode(p1, dia, compute_global_kernels(dia), flow, dia.node_index("t"));
  EXPECT_EQ(bad.status, DecodeResult::Status::kInconsistent);
  EXPECT_STREQ(to_string(bad.status), "inconsistent");
}

TEST(Decode, CorrectOnRandomFullRankSinks) {
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    auto fx = butterfly_fixture(5, 1 + t % 3, 300 + t);
    const Network net = fx.net.with_random_kernels(rng);
    const auto g = compute_global_kernels(net);
    const auto flow = simulate(fx.params, net, fx.packets);
    for (auto s : net.sinks()) {
      const auto d = decode(fx.params, net, g, flow, s);
      if (d.rank == 2) {
        EXPECT_EQ(d.status, DecodeResult::Status::kOk);
        EXPECT_EQ(d.payloads, fx.messages);
      } else {
        EXPECT_EQ(d.status, DecodeResult::Status::kRankDeficient);
      }
    }
  }
}

TEST(Coalition, ViewShapes) {
  auto fx = butterfly_fixture(2, 2, 10);
  const auto g = compute_global_kernels(fx.net);
  const auto flow = simulate(fx.params, fx.net, fx.packets);
  const std::vector<std::size_t> a{fx.net.node_index("a")};
  const auto va = coalition_view(fx.net, g, flow, a);
  EXPECT_EQ(va.h_total, 1u);
  EXPECT_EQ(va.H.rows(), 1u);
  EXPECT_EQ(row_ints(va.H, 0), row_ints(g.edge_vectors, fx.net.edge_index("s-a")));
  EXPECT_EQ(va.observed[0], flow.edge_packets[fx.net.edge_index("s-a")]);

  const std::vector<std::size_t> t1{fx.net.node_index("t1")};
  const auto vt = coalition_view(fx.net, g, flow, t1);
  const auto src = solve_source_flats(vt.H, vt.observed, fx.params.flat_length());
  ASSERT_TRUE(src.has_value());
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ((*src)[i], flatten(fx.params, fx.packets[i]));

  const std::vector<std::size_t> both{fx.net.node_index("a"), fx.net.node_index("t1")};
  const auto vb = coalition_view(fx.net, g, flow, both);
  EXPECT_EQ(vb.h_total, va.h_total + vt.h_total);
  EXPECT_EQ(vb.members[1].row_begin, 1u);
  EXPECT_THROW(coalition_view(fx.net, g, flow, std::vector<std::size_t>{}), ParameterError);
}

TEST(Verifiers, EveryIncomingEdgeChecked) {
  auto fx = butterfly_fixture(3, 2, 11);
  const auto flow = simulate(fx.params, fx.net, fx.packets);
  const auto checks = check_verifiers(fx.params, fx.net, flow, fx.keys.verifiers);
  EXPECT_EQ(checks.size(), fx.net.edges().size());
  for (const auto& c : checks) {
    EXPECT_TRUE(c.accepted);
    EXPECT_FALSE(c.zero_packet);
  }
}
