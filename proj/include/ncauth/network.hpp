#pragma once

// Single-source multicast over a DAG with linear network coding.
//
// Every node i other than the source has a local kernel K_i of size
// |In(i)| x |Out(i)| over F_q, and y(e) = sum_{d in In(i)} K_i[d][e] y(d) for
// e in Out(i). The source behaves the same way with n virtual incoming edges
// carrying the source packets, so its kernel is n x |Out(s)|. In(i) and Out(i)
// are ordered by position in the edge list.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ncauth/matrix.hpp"
#include "ncauth/scheme.hpp"

namespace ncauth {

struct Node {
  std::string id;
  std::optional<std::size_t> verifier;  // index into the verifier keys
  bool sink = false;
};

struct Edge {
  std::string id;
  std::size_t tail = 0;
  std::size_t head = 0;
};

class Network {
 public:
  /// `kernels[i]` is the local kernel of node i; it may be empty for nodes
  /// without outgoing edges. Throws TopologyError on cycles, bad references,
  /// edges into the source, or kernel dimensions that do not match degrees.
  Network(FieldPtr base, std::size_t messages, std::vector<Node> nodes, std::size_t source,
          std::vector<Edge> edges, std::vector<std::optional<FfMatrix>> kernels);

  const FieldPtr& base_field() const noexcept { return base_; }
  std::size_t messages() const noexcept { return n_; }
  std::size_t source() const noexcept { return source_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const std::size_t> in_edges(std::size_t node) const { return in_[node]; }
  std::span<const std::size_t> out_edges(std::size_t node) const { return out_[node]; }
  /// Rows follow In(node) (or the n message slots at the source).
  const FfMatrix& kernel(std::size_t node) const { return kernels_[node]; }
  std::span<const std::size_t> topological_order() const noexcept { return order_; }

  std::size_t node_index(const std::string& id) const;
  std::size_t edge_index(const std::string& id) const;

  std::vector<std::size_t> verifier_nodes() const;
  std::vector<std::size_t> sinks() const;
  /// 1 + largest verifier index, 0 if there are no verifiers.
  std::size_t verifier_count() const;

  /// Same topology, kernels replaced.
  Network with_kernels(std::vector<std::optional<FfMatrix>> kernels) const;
  /// Same topology, every kernel entry drawn uniformly from F_q.
  Network with_random_kernels(Rng& rng) const;
  /// Same topology, verifier indices replaced (one entry per node).
  Network with_verifiers(const std::vector<std::optional<std::size_t>>& verifiers) const;

 private:
  FieldPtr base_;
  std::size_t n_;
  std::vector<Node> nodes_;
  std::size_t source_;
  std::vector<Edge> edges_;
  std::vector<FfMatrix> kernels_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::size_t> order_;
};

/// Named topologies with fixed routing kernels.
namespace topologies {

/// s -> a, s -> b, a -> t1, a -> c, b -> c, b -> t2, c -> d, d -> t1, d -> t2.
/// Node c sends y(a-c) + y(b-c). Verifiers a, b, c, d, t1, t2; sinks t1, t2.
Network butterfly(FieldPtr base, std::size_t messages = 2);
/// s => v1 => ... => v_length with `messages` parallel edges per hop,
/// identity kernels. Every v_i is a verifier; the last is the sink.
Network line(FieldPtr base, std::size_t messages = 1, std::size_t length = 3);
/// s -> u, s -> w, u -> t, w -> t. Verifiers u, w, t; sink t.
Network diamond(FieldPtr base, std::size_t messages = 2);

/// Lookup by name ("butterfly", "line", "diamond"); ParameterError otherwise.
Network by_name(const std::string& name, FieldPtr base, std::size_t messages);

}  // namespace topologies

struct GlobalKernels {
  FfMatrix edge_vectors;  // |E| x n over F_q; row e is f_e

  /// F_t: the rows f_e for e in In(node).
  FfMatrix at_node(const Network& net, std::size_t node) const;
};

GlobalKernels compute_global_kernels(const Network& net);

/// Replace the value on `edge` (an outgoing edge of `node`) by the combination
/// of the node's incoming packets with `coeffs`, which must sum to 1 in F_q.
struct InterventionSpec {
  std::string node;
  std::string edge;
  std::vector<std::uint32_t> coeffs;
};

struct InterventionRecord {
  InterventionSpec spec;
  FlatPacket honest;
  FlatPacket substituted;
};

struct FlowState {
  std::vector<FlatPacket> edge_packets;  // indexed like Network::edges()
  std::vector<InterventionRecord> log;
};

/// Propagates the source packets in topological order. Throws
/// AttackSpecError for coefficient vectors that do not sum to 1, have the
/// wrong length, or target the source or a non-outgoing edge.
FlowState simulate(const SystemParams& params, const Network& net,
                   std::span<const TaggedPacket> packets,
                   std::span<const InterventionSpec> interventions = {});

struct DecodeResult {
  enum class Status { kOk, kRankDeficient, kInconsistent };
  Status status = Status::kRankDeficient;
  std::size_t rank = 0;
  std::vector<TaggedPacket> packets;
  std::vector<Fel> payloads;
};

const char* to_string(DecodeResult::Status s);

/// Solves F_t X = A_t at a sink. Rank deficiency and inconsistency are
/// reported in the result.
DecodeResult decode(const SystemParams& params, const Network& net, const GlobalKernels& kernels,
                    const FlowState& flow, std::size_t sink);

/// Solves G X = Y for the n source flats given stacked global vectors G and
/// received flats Y; nullopt unless rank(G) = n and the system is consistent.
std::optional<std::vector<FlatPacket>> solve_source_flats(const FfMatrix& global,
                                                          std::span<const FlatPacket> received,
                                                          std::size_t flat_length);

struct CoalitionView {
  struct Member {
    std::size_t node = 0;
    std::optional<std::size_t> verifier;
    std::size_t row_begin = 0;
    std::size_t row_count = 0;  // e(i), the in-degree
  };
  std::vector<Member> members;
  FfMatrix H;                      // stacked (H_1; ...; H_K) over F_q
  std::vector<FlatPacket> observed;  // aligned with the rows of H
  std::size_t h_total = 0;           // sum of e(i)
};

/// Throws ParameterError for an empty coalition.
CoalitionView coalition_view(const Network& net, const GlobalKernels& kernels,
                             const FlowState& flow, std::span<const std::size_t> coalition);

struct EdgeCheck {
  std::size_t node = 0;
  std::size_t edge = 0;
  std::size_t verifier = 0;
  bool accepted = false;
  bool zero_packet = false;  // trivially accepted; carries no information
};

/// Every verifier node checks every incoming edge independently.
std::vector<EdgeCheck> check_verifiers(const SystemParams& params, const Network& net,
                                       const FlowState& flow,
                                       std::span<const VerifierKey> keys);

}  // namespace ncauth
