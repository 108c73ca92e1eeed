#include "ncauth/topology_io.hpp"

#include <set>
#include <utility>

#include "ncauth/errors.hpp"

namespace ncauth {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(path + "." + key, "unknown field");
  }
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError(path + "." + key, "missing required field");
  return obj.at(key);
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

std::uint64_t get_uint(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConfigError(path, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

Network network_from_json(const json& doc, FieldPtr base, std::size_t messages,
                          bool allow_missing_kernels, const std::string& path) {
  if (!doc.is_object()) throw ConfigError(path, "expected an object");
  reject_unknown(doc, {"version", "messages", "source", "nodes", "edges", "kernels"}, path);
  if (doc.contains("version") && get_uint(doc["version"], path + ".version") != kTopologySchemaVersion) {
    throw ConfigError(path + ".version", "unsupported schema version");
  }
  if (doc.contains("messages") && get_uint(doc["messages"], path + ".messages") != messages) {
    throw ConfigError(path + ".messages", "does not match the scenario's message count n");
  }

  std::vector<Node> nodes;
  const json& jnodes = require(doc, "nodes", path);
  if (!jnodes.is_array()) throw ConfigError(path + ".nodes", "expected an array");
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const std::string p = path + ".nodes[" + std::to_string(i) + "]";
    const json& jn = jnodes[i];
    if (!jn.is_object()) throw ConfigError(p, "expected an object");
    reject_unknown(jn, {"id", "verifier", "sink"}, p);
    Node node{get_string(require(jn, "id", p), p + ".id"), {}, false};
    if (jn.contains("verifier")) node.verifier = get_uint(jn["verifier"], p + ".verifier");
    if (jn.contains("sink")) {
      if (!jn["sink"].is_boolean()) throw ConfigError(p + ".sink", "expected a boolean");
      node.sink = jn["sink"].get<bool>();
    }
    nodes.push_back(std::move(node));
  }
  auto find_node = [&](const std::string& id, const std::string& p) -> std::size_t {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].id == id) return i;
    }
    throw ConfigError(p, "unknown node '" + id + "'");
  };

  const std::size_t source = find_node(get_string(require(doc, "source", path), path + ".source"),
                                       path + ".source");

  std::vector<Edge> edges;
  const json& jedges = require(doc, "edges", path);
  if (!jedges.is_array()) throw ConfigError(path + ".edges", "expected an array");
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const std::string p = path + ".edges[" + std::to_string(i) + "]";
    const json& je = jedges[i];
    if (!je.is_object()) throw ConfigError(p, "expected an object");
    reject_unknown(je, {"id", "tail", "head"}, p);
    edges.push_back({get_string(require(je, "id", p), p + ".id"),
                     find_node(get_string(require(je, "tail", p), p + ".tail"), p + ".tail"),
                     find_node(get_string(require(je, "head", p), p + ".head"), p + ".head")});
  }

  std::vector<std::optional<FfMatrix>> kernels(nodes.size());
  if (doc.contains("kernels")) {
    const json& jk = doc["kernels"];
    if (!jk.is_object()) throw ConfigError(path + ".kernels", "expected an object keyed by node id");
    for (const auto& [id, rows] : jk.items()) {
      const std::string p = path + ".kernels." + id;
      const std::size_t node = find_node(id, p);
      if (!rows.is_array()) throw ConfigError(p, "expected an array of rows");
      std::vector<std::vector<std::uint64_t>> ints;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!rows[r].is_array()) throw ConfigError(p + "[" + std::to_string(r) + "]", "expected a row");
        std::vector<std::uint64_t> row;
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
          const std::string pc = p + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
          const std::uint64_t v = get_uint(rows[r][c], pc);
          if (v >= base->q()) throw ConfigError(pc, "kernel entry must be in [0, q)");
          row.push_back(v);
        }
        ints.push_back(std::move(row));
      }
      try {
        kernels[node] = FfMatrix::from_ints(base, ints);
      } catch (const ShapeError& e) {
        throw ConfigError(p, e.what());
      }
    }
  }

  if (allow_missing_kernels) {
    std::vector<std::size_t> in(nodes.size()), out(nodes.size());
    for (const auto& e : edges) {
      ++out[e.tail];
      ++in[e.head];
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!kernels[i]) kernels[i] = FfMatrix(base, i == source ? messages : in[i], out[i]);
    }
  }

  try {
    return Network(base, messages, std::move(nodes), source, std::move(edges), std::move(kernels));
  } catch (const TopologyError& e) {
    throw ConfigError(path, e.what());
  }
}

nlohmann::json network_to_json(const Network& net) {
  json doc;
  doc["version"] = kTopologySchemaVersion;
  doc["messages"] = net.messages();
  doc["source"] = net.nodes()[net.source()].id;
  json nodes = json::array();
  for (const auto& n : net.nodes()) {
    json jn{{"id", n.id}};
    if (n.verifier) jn["verifier"] = *n.verifier;
    if (n.sink) jn["sink"] = true;
    nodes.push_back(std::move(jn));
  }
  doc["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const auto& e : net.edges()) {
    edges.push_back({{"id", e.id}, {"tail", net.nodes()[e.tail].id}, {"head", net.nodes()[e.head].id}});
  }
  doc["edges"] = std::move(edges);
  json kernels = json::object();
  for (std::size_t i = 0; i < net.nodes().size(); ++i) {
    const FfMatrix& K = net.kernel(i);
    if (K.cols() == 0) continue;
    json rows = json::array();
    for (std::size_t r = 0; r < K.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < K.cols(); ++c) row.push_back(K(r, c)[0]);
      rows.push_back(std::move(row));
    }
    kernels[net.nodes()[i].id] = std::move(rows);
  }
  doc["kernels"] = std::move(kernels);
  return doc;
}

}  // namespace ncauth
