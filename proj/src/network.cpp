#include "ncauth/network.hpp"

#include <algorithm>
#include <queue>
#include <string>
#include <utility>

#include "ncauth/errors.hpp"

namespace ncauth {

Network::Network(FieldPtr base, std::size_t messages, std::vector<Node> nodes, std::size_t source,
                 std::vector<Edge> edges, std::vector<std::optional<FfMatrix>> kernels)
    : base_(std::move(base)),
      n_(messages),
      nodes_(std::move(nodes)),
      source_(source),
      edges_(std::move(edges)),
      in_(nodes_.size()),
      out_(nodes_.size()) {
  if (base_->degree() != 1) throw TopologyError("local kernels must be over the prime field");
  if (n_ == 0) throw TopologyError("source must carry at least one message");
  if (source_ >= nodes_.size()) throw TopologyError("source node out of range");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (nodes_[i].id == nodes_[j].id) throw TopologyError("duplicate node id '" + nodes_[i].id + "'");
    }
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.tail >= nodes_.size() || edge.head >= nodes_.size()) {
      throw TopologyError("edge '" + edge.id + "' references a missing node");
    }
    if (edge.head == source_) throw TopologyError("edge '" + edge.id + "' enters the source");
    for (std::size_t d = 0; d < e; ++d) {
      if (edges_[d].id == edge.id) throw TopologyError("duplicate edge id '" + edge.id + "'");
    }
    out_[edge.tail].push_back(e);
    in_[edge.head].push_back(e);
  }

  // Kahn's algorithm; ties broken by node index.
  std::vector<std::size_t> indegree(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) indegree[i] = in_[i].size();
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  while (!ready.empty()) {
    const std::size_t i = ready.top();
    ready.pop();
    order_.push_back(i);
    for (std::size_t e : out_[i]) {
      if (--indegree[edges_[e].head] == 0) ready.push(edges_[e].head);
    }
  }
  if (order_.size() != nodes_.size()) throw TopologyError("network contains a cycle");

  if (kernels.size() != nodes_.size()) throw TopologyError("need one kernel slot per node");
  kernels_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const std::size_t rows = i == source_ ? n_ : in_[i].size();
    const std::size_t cols = out_[i].size();
    if (!kernels[i]) {
      if (cols != 0) throw TopologyError("node '" + nodes_[i].id + "' has outgoing edges but no kernel");
      kernels_.emplace_back(base_, rows, 0);
      continue;
    }
    if (kernels[i]->rows() != rows || kernels[i]->cols() != cols) {
      throw TopologyError("kernel of node '" + nodes_[i].id + "' is " +
                          std::to_string(kernels[i]->rows()) + "x" + std::to_string(kernels[i]->cols()) +
                          ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (!(kernels[i]->field() == *base_)) throw TopologyError("kernel over the wrong field");
    kernels_.push_back(std::move(*kernels[i]));
  }
}

std::size_t Network::node_index(const std::string& id) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id == id) return i;
  }
  throw TopologyError("unknown node '" + id + "'");
}

std::size_t Network::edge_index(const std::string& id) const {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].id == id) return e;
  }
  throw TopologyError("unknown edge '" + id + "'");
}

std::vector<std::size_t> Network::verifier_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].verifier) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Network::sinks() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].sink) out.push_back(i);
  }
  return out;
}

std::size_t Network::verifier_count() const {
  std::size_t v = 0;
  for (const auto& node : nodes_) {
    if (node.verifier) v = std::max(v, *node.verifier + 1);
  }
  return v;
}

Network Network::with_kernels(std::vector<std::optional<FfMatrix>> kernels) const {
  return Network(base_, n_, nodes_, source_, edges_, std::move(kernels));
}

Network Network::with_random_kernels(Rng& rng) const {
  std::vector<std::optional<FfMatrix>> kernels;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    FfMatrix k(base_, kernels_[i].rows(), kernels_[i].cols());
    for (std::size_t r = 0; r < k.rows(); ++r) {
      for (std::size_t c = 0; c < k.cols(); ++c) k(r, c) = base_->random(rng);
    }
    kernels.emplace_back(std::move(k));
  }
  return with_kernels(std::move(kernels));
}

Network Network::with_verifiers(const std::vector<std::optional<std::size_t>>& verifiers) const {
  if (verifiers.size() != nodes_.size()) throw TopologyError("need one verifier slot per node");
  auto nodes = nodes_;
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].verifier = verifiers[i];
  std::vector<std::optional<FfMatrix>> kernels(kernels_.begin(), kernels_.end());
  return Network(base_, n_, std::move(nodes), source_, edges_, std::move(kernels));
}

namespace topologies {

namespace {

struct Builder {
  FieldPtr base;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::vector<std::optional<FfMatrix>> kernels;

  std::size_t node(std::string id, std::optional<std::size_t> verifier = {}, bool sink = false) {
    nodes.push_back({std::move(id), verifier, sink});
    kernels.emplace_back();
    return nodes.size() - 1;
  }
  void edge(std::size_t tail, std::size_t head, std::string id = {}) {
    if (id.empty()) id = nodes[tail].id + "-" + nodes[head].id;
    edges.push_back({std::move(id), tail, head});
  }
  void kernel(std::size_t node, const std::vector<std::vector<std::uint64_t>>& rows) {
    kernels[node] = FfMatrix::from_ints(base, rows);
  }
};

// n x outs kernel sending message (e mod n) on out edge e.
std::vector<std::vector<std::uint64_t>> round_robin(std::size_t n, std::size_t outs) {
  std::vector<std::vector<std::uint64_t>> k(n, std::vector<std::uint64_t>(outs, 0));
  for (std::size_t e = 0; e < outs; ++e) k[e % n][e] = 1;
  return k;
}

}  // namespace

Network butterfly(FieldPtr base, std::size_t messages) {
  Builder b{base, {}, {}, {}};
  const auto s = b.node("s");
  const auto a = b.node("a", 0);
  const auto bb = b.node("b", 1);
  const auto c = b.node("c", 2);
  const auto d = b.node("d", 3);
  const auto t1 = b.node("t1", 4, true);
  const auto t2 = b.node("t2", 5, true);
  b.edge(s, a);
  b.edge(s, bb);
  b.edge(a, t1);
  b.edge(a, c);
  b.edge(bb, c);
  b.edge(bb, t2);
  b.edge(c, d);
  b.edge(d, t1);
  b.edge(d, t2);
  b.kernel(s, round_robin(messages, 2));
  b.kernel(a, {{1, 1}});
  b.kernel(bb, {{1, 1}});
  b.kernel(c, {{1}, {1}});
  b.kernel(d, {{1, 1}});
  return Network(base, messages, std::move(b.nodes), s, std::move(b.edges), std::move(b.kernels));
}

Network line(FieldPtr base, std::size_t messages, std::size_t length) {
  if (length == 0) throw ParameterError("line topology needs length >= 1");
  Builder b{base, {}, {}, {}};
  std::size_t prev = b.node("s");
  std::vector<std::vector<std::uint64_t>> id(messages, std::vector<std::uint64_t>(messages, 0));
  for (std::size_t i = 0; i < messages; ++i) id[i][i] = 1;
  for (std::size_t hop = 1; hop <= length; ++hop) {
    const auto v = b.node("v" + std::to_string(hop), hop - 1, hop == length);
    for (std::size_t p = 0; p < messages; ++p) {
      b.edge(prev, v, b.nodes[prev].id + "-" + b.nodes[v].id + "." + std::to_string(p));
    }
    b.kernel(prev, id);
    prev = v;
  }
  return Network(base, messages, std::move(b.nodes), 0, std::move(b.edges), std::move(b.kernels));
}

Network diamond(FieldPtr base, std::size_t messages) {
  Builder b{base, {}, {}, {}};
  const auto s = b.node("s");
  const auto u = b.node("u", 0);
  const auto w = b.node("w", 1);
  const auto t = b.node("t", 2, true);
  b.edge(s, u);
  b.edge(s, w);
  b.edge(u, t);
  b.edge(w, t);
  b.kernel(s, round_robin(messages, 2));
  b.kernel(u, {{1}});
  b.kernel(w, {{1}});
  return Network(base, messages, std::move(b.nodes), s, std::move(b.edges), std::move(b.kernels));
}

Network by_name(const std::string& name, FieldPtr base, std::size_t messages) {
  if (name == "butterfly") return butterfly(std::move(base), messages);
  if (name == "line") return line(std::move(base), messages);
  if (name == "diamond") return diamond(std::move(base), messages);
  throw ParameterError("unknown built-in topology '" + name + "'");
}

}  // namespace topologies

FfMatrix GlobalKernels::at_node(const Network& net, std::size_t node) const {
  const auto in = net.in_edges(node);
  FfMatrix F(net.base_field(), in.size(), net.messages());
  for (std::size_t r = 0; r < in.size(); ++r) {
    for (std::size_t c = 0; c < net.messages(); ++c) F(r, c) = edge_vectors(in[r], c);
  }
  return F;
}

GlobalKernels compute_global_kernels(const Network& net) {
  const ExtField& f = *net.base_field();
  const std::size_t n = net.messages();
  FfMatrix fe(net.base_field(), net.edges().size(), n);
  for (std::size_t i : net.topological_order()) {
    const FfMatrix& K = net.kernel(i);
    const auto outs = net.out_edges(i);
    for (std::size_t col = 0; col < outs.size(); ++col) {
      for (std::size_t row = 0; row < K.rows(); ++row) {
        const Fel& k = K(row, col);
        if (k.is_zero()) continue;
        if (i == net.source()) {
          // Virtual edge `row` carries the unit vector e_row.
          fe(outs[col], row) = f.add(fe(outs[col], row), k);
          continue;
        }
        const std::size_t d = net.in_edges(i)[row];
        for (std::size_t c = 0; c < n; ++c) {
          fe(outs[col], c) = f.add(fe(outs[col], c), f.mul(k, fe(d, c)));
        }
      }
    }
  }
  return {std::move(fe)};
}

namespace {

std::vector<std::uint32_t> kernel_column(const FfMatrix& K, std::size_t col) {
  std::vector<std::uint32_t> out(K.rows());
  for (std::size_t r = 0; r < K.rows(); ++r) out[r] = K(r, col)[0];
  return out;
}

}  // namespace

FlowState simulate(const SystemParams& params, const Network& net,
                   std::span<const TaggedPacket> packets,
                   std::span<const InterventionSpec> interventions) {
  if (packets.size() != net.messages()) {
    throw ShapeError("simulate: network carries " + std::to_string(net.messages()) +
                     " messages but " + std::to_string(packets.size()) + " packets were given");
  }
  if (net.base_field()->q() != params.field->q()) throw ShapeError("simulate: field mismatch");
  const std::uint32_t q = params.field->q();

  // Resolve and check interventions up front.
  std::vector<std::optional<std::size_t>> by_edge(net.edges().size());
  for (std::size_t k = 0; k < interventions.size(); ++k) {
    const auto& iv = interventions[k];
    std::size_t node = 0, edge = 0;
    try {
      node = net.node_index(iv.node);
      edge = net.edge_index(iv.edge);
    } catch (const TopologyError& e) {
      throw AttackSpecError(std::string("intervention: ") + e.what());
    }
    if (node == net.source()) throw AttackSpecError("intervention: the source is honest");
    if (net.edges()[edge].tail != node) {
      throw AttackSpecError("intervention: edge '" + iv.edge + "' does not leave node '" + iv.node + "'");
    }
    if (iv.coeffs.size() != net.in_edges(node).size()) {
      throw AttackSpecError("intervention: node '" + iv.node + "' has " +
                            std::to_string(net.in_edges(node).size()) + " incoming edges but " +
                            std::to_string(iv.coeffs.size()) + " coefficients were given");
    }
    std::uint64_t sum = 0;
    for (auto c : iv.coeffs) {
      if (c >= q) throw AttackSpecError("intervention: coefficient not reduced mod q");
      sum += c;
    }
    if (sum % q != 1) throw AttackSpecError("intervention: coefficients must sum to 1 mod q");
    if (by_edge[edge]) throw AttackSpecError("intervention: edge '" + iv.edge + "' targeted twice");
    by_edge[edge] = k;
  }

  std::vector<FlatPacket> sources;
  sources.reserve(packets.size());
  for (const auto& p : packets) sources.push_back(flatten(params, p));

  FlowState state;
  state.edge_packets.assign(net.edges().size(), FlatPacket{});
  for (std::size_t i : net.topological_order()) {
    std::vector<FlatPacket> incoming;
    if (i == net.source()) {
      incoming = sources;
    } else {
      for (std::size_t d : net.in_edges(i)) incoming.push_back(state.edge_packets[d]);
    }
    const auto outs = net.out_edges(i);
    for (std::size_t col = 0; col < outs.size(); ++col) {
      const std::size_t e = outs[col];
      FlatPacket value = incoming.empty()
                             ? FlatPacket(params.flat_length(), 0)
                             : combine_flat(q, incoming, kernel_column(net.kernel(i), col));
      if (by_edge[e]) {
        const auto& iv = interventions[*by_edge[e]];
        FlatPacket substituted = combine_flat(q, incoming, iv.coeffs);
        state.log.push_back({iv, value, substituted});
        value = std::move(substituted);
      }
      state.edge_packets[e] = std::move(value);
    }
  }
  return state;
}

const char* to_string(DecodeResult::Status s) {
  switch (s) {
    case DecodeResult::Status::kOk: return "ok";
    case DecodeResult::Status::kRankDeficient: return "rank_deficient";
    case DecodeResult::Status::kInconsistent: return "inconsistent";
  }
  return "unknown";
}

std::optional<std::vector<FlatPacket>> solve_source_flats(const FfMatrix& global,
                                                          std::span<const FlatPacket> received,
                                                          std::size_t flat_length) {
  const FieldPtr& base = global.field_ptr();
  if (received.size() != global.rows()) throw ShapeError("decode: one packet per kernel row");
  FfMatrix Y(base, received.size(), flat_length);
  for (std::size_t r = 0; r < received.size(); ++r) {
    if (received[r].size() != flat_length) throw ShapeError("decode: packet length mismatch");
    for (std::size_t c = 0; c < flat_length; ++c) Y(r, c) = base->embed(received[r][c]);
  }
  if (rank(global) != global.cols()) return std::nullopt;
  const auto X = solve_particular(global, Y);
  if (!X) return std::nullopt;
  std::vector<FlatPacket> out(global.cols(), FlatPacket(flat_length));
  for (std::size_t r = 0; r < global.cols(); ++r) {
    for (std::size_t c = 0; c < flat_length; ++c) out[r][c] = (*X)(r, c)[0];
  }
  return out;
}

DecodeResult decode(const SystemParams& params, const Network& net, const GlobalKernels& kernels,
                    const FlowState& flow, std::size_t sink) {
  if (sink >= net.nodes().size() || !net.nodes()[sink].sink) {
    throw ParameterError("decode: node is not a sink");
  }
  const FfMatrix F = kernels.at_node(net, sink);
  DecodeResult result;
  result.rank = rank(F);
  if (result.rank < net.messages()) {
    result.status = DecodeResult::Status::kRankDeficient;
    return result;
  }
  std::vector<FlatPacket> received;
  for (std::size_t e : net.in_edges(sink)) received.push_back(flow.edge_packets[e]);
  const auto flats = solve_source_flats(F, received, params.flat_length());
  if (!flats) {
    result.status = DecodeResult::Status::kInconsistent;
    return result;
  }
  result.status = DecodeResult::Status::kOk;
  for (const auto& flat : *flats) {
    result.packets.push_back(parse_flat(params, flat));
    result.payloads.push_back(result.packets.back().m);
  }
  return result;
}

CoalitionView coalition_view(const Network& net, const GlobalKernels& kernels,
                             const FlowState& flow, std::span<const std::size_t> coalition) {
  if (coalition.empty()) throw ParameterError("coalition must be nonempty");
  CoalitionView view{{}, FfMatrix(net.base_field(), 0, net.messages()), {}, 0};
  std::vector<FfMatrix> blocks;
  for (std::size_t node : coalition) {
    if (node >= net.nodes().size()) throw ParameterError("coalition node out of range");
    for (const auto& m : view.members) {
      if (m.node == node) throw ParameterError("coalition lists node '" + net.nodes()[node].id + "' twice");
    }
    const auto in = net.in_edges(node);
    view.members.push_back({node, net.nodes()[node].verifier, view.h_total, in.size()});
    view.h_total += in.size();
    blocks.push_back(kernels.at_node(net, node));
    for (std::size_t e : in) view.observed.push_back(flow.edge_packets[e]);
  }
  view.H = vstack(blocks, net.base_field(), net.messages());
  return view;
}

std::vector<EdgeCheck> check_verifiers(const SystemParams& params, const Network& net,
                                       const FlowState& flow, std::span<const VerifierKey> keys) {
  std::vector<EdgeCheck> out;
  for (std::size_t node : net.verifier_nodes()) {
    const std::size_t v = *net.nodes()[node].verifier;
    if (v >= keys.size()) throw ParameterError("verifier index without a key");
    for (std::size_t e : net.in_edges(node)) {
      const TaggedPacket p = parse_flat(params, flow.edge_packets[e]);
      out.push_back({node, e, v, verify(params, keys[v], p), is_zero_packet(p)});
    }
  }
  return out;
}

}  // namespace ncauth
