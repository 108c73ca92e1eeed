#pragma once

// Topology documents (schema version 1):
//
//   {
//     "version": 1,
//     "messages": 2,                       // optional; must match n if given
//     "source": "s",
//     "nodes":   [{"id": "s"}, {"id": "t", "verifier": 0, "sink": true}, ...],
//     "edges":   [{"id": "s-t", "tail": "s", "head": "t"}, ...],
//     "kernels": {"s": [[1, 0], [0, 1]], ...}   // rows follow In(node)
//   }
//
// Kernel entries are integers in [0, q). Unknown keys are rejected.

#include <cstddef>
#include <string>

#include <json.hpp>

#include "ncauth/network.hpp"

namespace ncauth {

inline constexpr int kTopologySchemaVersion = 1;

/// Throws ConfigError naming the offending key (prefixed with `path`).
/// With `allow_missing_kernels`, nodes without a kernel get a zero kernel
/// (callers then draw random kernels).
Network network_from_json(const nlohmann::json& doc, FieldPtr base, std::size_t messages,
                          bool allow_missing_kernels = false, const std::string& path = "topology");

nlohmann::json network_to_json(const Network& net);

}  // namespace ncauth
