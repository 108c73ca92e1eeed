#include "ncauth/scenario.hpp"

#include <set>
#include <utility>

#include "ncauth/errors.hpp"
#include "ncauth/topology_io.hpp"

namespace ncauth {

using nlohmann::json;

const char* to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::kNone: return "none";
    case AttackKind::kForge: return "forge";
    case AttackKind::kPollute: return "pollute";
    case AttackKind::kRecover: return "recover";
  }
  return "unknown";
}

json fel_to_json(const Fel& a) { return json(std::vector<std::uint32_t>(a.coords().begin(), a.coords().end())); }

json bigint_to_json(const BigInt& v) { return v.str(); }

namespace {

// ---- parsing helpers ----

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(path.empty() ? key : path + "." + key, "unknown field");
  }
}

std::uint64_t get_uint(const json& v, const std::string& path) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ConfigError(path, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

bool get_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError(path, "expected a boolean");
  return v.get<bool>();
}

std::vector<std::uint32_t> get_coords(const json& v, std::size_t len, std::uint32_t q,
                                      const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of " + std::to_string(len) + " integers");
  if (v.size() != len) {
    throw ConfigError(path, "expected " + std::to_string(len) + " entries, got " + std::to_string(v.size()));
  }
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const std::uint64_t x = get_uint(v[i], p);
    if (x >= q) throw ConfigError(p, "must be in [0, q)");
    out.push_back(static_cast<std::uint32_t>(x));
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> get_elements(const json& v, std::uint32_t q, std::size_t l,
                                                     const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of field elements");
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(get_coords(v[i], l, q, path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

void check_sum_one(const std::vector<std::uint32_t>& coeffs, std::uint32_t q, const std::string& path) {
  std::uint64_t sum = 0;
  for (auto c : coeffs) sum += c;
  if (sum % q != 1) {
    throw ConfigError(path, "coefficients sum to " + std::to_string(sum % q) + " mod q; they must sum to 1");
  }
}

// ---- instance helpers ----

std::vector<Fel> distinct_nonzero(const ExtField& f, std::size_t count, Rng rng) {
  std::vector<Fel> out;
  while (out.size() < count) {
    Fel x = f.random_nonzero(rng);
    bool dup = false;
    for (const auto& y : out) dup = dup || y == x;
    if (!dup) out.push_back(x);
  }
  return out;
}

std::uint64_t order_or_max(const ExtField& f) {
  try {
    return f.order();
  } catch (const ResourceError&) {
    return UINT64_MAX;
  }
}

json flat_to_json(const FlatPacket& p) { return json(p); }

json fels_to_json(std::span<const Fel> xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(fel_to_json(x));
  return out;
}

std::size_t resolve_node(const Network& net, const std::string& id, const std::string& path) {
  try {
    return net.node_index(id);
  } catch (const TopologyError&) {
    throw ConfigError(path, "unknown node '" + id + "'");
  }
}

std::vector<std::size_t> resolve_coalition(const Scenario& s, const Network& net) {
  if (s.adversaries.empty()) throw ConfigError("adversaries", "attack requires a nonempty coalition");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.adversaries.size(); ++i) {
    const std::string path = "adversaries[" + std::to_string(i) + "]";
    const std::size_t node = resolve_node(net, s.adversaries[i], path);
    for (auto o : out) {
      if (o == node) throw ConfigError(path, "duplicate coalition member");
    }
    out.push_back(node);
  }
  return out;
}

// Verification outcomes and sink decodes for one flow.
json flow_section(const Instance& inst, const FlowState& flow) {
  const Network& net = inst.network;
  json accept = json::array();
  bool all_accepted = true;
  std::size_t zero_packets = 0;
  for (const auto& c : check_verifiers(inst.params, net, flow, inst.keys.verifiers)) {
    accept.push_back({{"node", net.nodes()[c.node].id},
                      {"edge", net.edges()[c.edge].id},
                      {"verifier", c.verifier},
                      {"accepted", c.accepted},
                      {"zero_packet", c.zero_packet}});
    all_accepted = all_accepted && c.accepted;
    zero_packets += c.zero_packet;
  }
  json sinks = json::array();
  bool any_divergent = false;
  for (std::size_t t : net.sinks()) {
    const DecodeResult d = decode(inst.params, net, inst.kernels, flow, t);
    json js{{"node", net.nodes()[t].id}, {"status", to_string(d.status)}, {"rank", d.rank}};
    if (d.status == DecodeResult::Status::kRankDeficient) {
      js["divergent"] = nullptr;  // not decodable at all
    } else {
      const bool divergent = d.status != DecodeResult::Status::kOk || d.payloads != inst.messages;
      js["payloads"] = fels_to_json(d.payloads);
      js["divergent"] = divergent;
      any_divergent = any_divergent || divergent;
    }
    sinks.push_back(std::move(js));
  }
  json edges = json::object();
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    edges[net.edges()[e].id] = flat_to_json(flow.edge_packets[e]);
  }
  return {{"accept", std::move(accept)},
          {"all_accepted", all_accepted},
          {"zero_packets", zero_packets},
          {"sinks", std::move(sinks)},
          {"any_divergent", any_divergent},
          {"edge_packets", std::move(edges)}};
}

json pollute_section(const Scenario& s, const Instance& inst) {
  const Network& net = inst.network;
  resolve_node(net, s.attack.node, "attack.node");
  try {
    net.edge_index(s.attack.edge);
  } catch (const TopologyError&) {
    throw ConfigError("attack.edge", "unknown edge '" + s.attack.edge + "'");
  }
  const InterventionSpec iv{s.attack.node, s.attack.edge, s.attack.coeffs};
  FlowState flow;
  try {
    flow = simulate(inst.params, net, inst.packets, std::span(&iv, 1));
  } catch (const AttackSpecError& e) {
    throw ConfigError("attack", e.what());
  }
  json log = json::array();
  bool changed = false;
  for (const auto& rec : flow.log) {
    log.push_back({{"node", rec.spec.node},
                   {"edge", rec.spec.edge},
                   {"coeffs", rec.spec.coeffs},
                   {"honest", flat_to_json(rec.honest)},
                   {"substituted", flat_to_json(rec.substituted)},
                   {"changed", rec.honest != rec.substituted}});
    changed = changed || rec.honest != rec.substituted;
  }
  json out = flow_section(inst, flow);
  out["kind"] = "pollute";
  out["interventions"] = std::move(log);
  out["substitution_changed_packet"] = changed;
  return out;
}

json forge_section(const Scenario& s, const Instance& inst) {
  const Network& net = inst.network;
  const SystemParams& params = inst.params;
  const auto coalition = resolve_coalition(s, net);
  const FlowState honest = simulate(params, net, inst.packets);
  const CoalitionView view = coalition_view(net, inst.kernels, honest, coalition);
  json out{{"kind", "forge"}, {"coalition", s.adversaries}, {"coalition_rank", rank(view.H)}};

  const auto decoded = solve_source_flats(view.H, view.observed, params.flat_length());
  out["coalition_can_decode"] = decoded.has_value();
  if (!decoded) {
    out["performed"] = false;
    return out;
  }
  std::vector<TaggedPacket> packets;
  std::vector<Fel> payloads;
  for (const auto& flat : *decoded) {
    packets.push_back(parse_flat(params, flat));
    payloads.push_back(packets.back().m);
  }
  out["decoded_payloads"] = fels_to_json(payloads);

  ForgerySpec spec{s.attack.coeffs};
  if (s.attack.target) {
    const Fel target = params.field->to_field(*s.attack.target);
    const auto solved = solve_target_coeffs(*params.field, payloads, target);
    out["target"] = fel_to_json(target);
    out["target_reachable"] = solved.has_value();
    if (!solved) {
      out["performed"] = false;
      return out;
    }
    spec = *solved;
  }
  const TaggedPacket forged = forge(params, packets, spec);
  out["performed"] = true;
  out["coeffs"] = spec.coeffs;
  out["forged_packet"] = flat_to_json(flatten(params, forged));
  out["forged_payload"] = fel_to_json(forged.m);
  out["equals_honest_tag"] = forged == tag(params, inst.keys.source, forged.m);
  json bits = json::array();
  bool all = true;
  for (const auto& vk : inst.keys.verifiers) {
    const bool ok = verify(params, vk, forged);
    bits.push_back(ok);
    all = all && ok;
  }
  out["verifier_accepts"] = std::move(bits);
  out["all_verifiers_accept"] = all;

  // Substitute the last source packet and run the network.
  std::vector<TaggedPacket> substituted = inst.packets;
  substituted.back() = forged;
  out["substituted_run"] = flow_section(inst, simulate(params, net, substituted));
  return out;
}

json recover_section(const Scenario& s, const Instance& inst) {
  const Network& net = inst.network;
  const SystemParams& params = inst.params;
  const auto coalition = resolve_coalition(s, net);
  std::vector<VerifierKey> keys;
  for (std::size_t i = 0; i < coalition.size(); ++i) {
    const auto& node = net.nodes()[coalition[i]];
    if (!node.verifier) {
      throw ConfigError("adversaries[" + std::to_string(i) + "]",
                        "node '" + node.id + "' holds no verifier key");
    }
    keys.push_back(inst.keys.verifiers[*node.verifier]);
  }
  const FlowState honest = simulate(params, net, inst.packets);
  const CoalitionView view = coalition_view(net, inst.kernels, honest, coalition);
  const RecoverySystem system = build_recovery_system(params, view, keys);
  const RecoveryMeta& meta = system.meta;
  const std::size_t coeff_rank = rank(system.coeff);
  const SolveCount gauss = gauss_count(system);
  const bool hypothesis = meta.K + 1 <= meta.k;
  const auto h = h_condition_report(meta);
  const FfMatrix hs = mat_mul(lift(view.H, params.field), moore_matrix(params.field, inst.messages, params.M));

  json out{{"kind", "recover"},
           {"coalition", s.adversaries},
           {"K", meta.K},
           {"n", meta.n},
           {"r0", meta.r0},
           {"unknowns", system.coeff.cols()},
           {"equations", system.coeff.rows()},
           {"rank", coeff_rank},
           {"count_hypothesis_held", hypothesis},
           {"gauss", {{"consistent", gauss.consistent}, {"count", bigint_to_json(gauss.count)}}},
           {"h_condition", {{"h_total", h.h_total}, {"M", h.M}, {"condition_held", h.condition_held}}},
           {"true_key_satisfies", satisfies(system, inst.keys.source)},
           {"observation_matches_HSn", system.observation == hs}};
  // Throws ResourceError above the guard; the CLI maps that to exit code 3.
  const BigInt brute = brute_force_count(system, s.guard);
  out["brute_force"] = bigint_to_json(brute);
  if (hypothesis) {
    const BigInt predicted = predicted_count(meta);
    const std::size_t prank = predicted_rank(meta);
    out["predicted_count"] = bigint_to_json(predicted);
    out["predicted_rank"] = prank;
    out["rank_matches"] = prank == coeff_rank;
    out["counts_match"] = predicted == gauss.count && gauss.count == brute;
  } else {
    out["predicted_count"] = nullptr;
    out["predicted_rank"] = nullptr;
  }
  return out;
}

json field_json(const ExtField& f) {
  return {{"q", f.q()},
          {"l", f.degree()},
          {"modulus", std::vector<std::uint32_t>(f.modulus().begin(), f.modulus().end())}};
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) throw ConfigError("$", "scenario must be a JSON object");
  reject_unknown(doc, {"version", "params", "topology", "random_kernels", "messages", "message_seed",
                       "adversaries", "attack", "seed", "unsafe_n_gt_m", "guard"},
                 "");
  Scenario s;
  if (doc.contains("version") && get_uint(doc["version"], "version") != kScenarioSchemaVersion) {
    throw ConfigError("version", "unsupported scenario schema version");
  }
  if (doc.contains("seed")) s.seed = get_uint(doc["seed"], "seed");
  if (doc.contains("unsafe_n_gt_m")) s.unsafe_n_gt_m = get_bool(doc["unsafe_n_gt_m"], "unsafe_n_gt_m");
  if (doc.contains("guard")) s.guard = get_uint(doc["guard"], "guard");

  if (!doc.contains("params")) throw ConfigError("params", "missing required field");
  const json& p = doc["params"];
  if (!p.is_object()) throw ConfigError("params", "expected an object");
  reject_unknown(p, {"q", "l", "k", "M", "n", "V", "public_points", "point_seed"}, "params");
  for (const char* key : {"q", "k", "M", "n"}) {
    if (!p.contains(key)) throw ConfigError(std::string("params.") + key, "missing required field");
  }
  const std::uint64_t q = get_uint(p["q"], "params.q");
  if (q > kMaxPrime || !is_prime(q)) throw ConfigError("params.q", "must be a prime <= 65536");
  s.q = static_cast<std::uint32_t>(q);
  s.l = p.contains("l") ? get_uint(p["l"], "params.l") : 1;
  if (s.l < 1 || s.l > kMaxDegree) throw ConfigError("params.l", "must be in [1, 16]");
  s.k = get_uint(p["k"], "params.k");
  if (s.k < 2) throw ConfigError("params.k", "must be >= 2");
  s.M = get_uint(p["M"], "params.M");
  if (s.M < 1) throw ConfigError("params.M", "must be >= 1");
  s.n = get_uint(p["n"], "params.n");
  if (s.n < 1) throw ConfigError("params.n", "must be >= 1");
  if (s.n > s.M && !s.unsafe_n_gt_m) {
    throw ConfigError("params.n", "n > M requires unsafe_n_gt_m (a key authenticates at most M messages)");
  }
  if (p.contains("V")) s.V = get_uint(p["V"], "params.V");
  if (p.contains("public_points")) s.public_points = get_elements(p["public_points"], s.q, s.l, "params.public_points");
  if (p.contains("point_seed")) s.point_seed = get_uint(p["point_seed"], "params.point_seed");

  if (doc.contains("topology")) {
    const json& t = doc["topology"];
    if (!t.is_string() && !t.is_object()) throw ConfigError("topology", "expected a built-in name or an object");
    s.topology = t;
  }
  if (doc.contains("random_kernels")) s.random_kernels = get_bool(doc["random_kernels"], "random_kernels");
  if (doc.contains("messages")) {
    s.messages = get_elements(doc["messages"], s.q, s.l, "messages");
    if (s.messages->size() != s.n) {
      throw ConfigError("messages", "expected n = " + std::to_string(s.n) + " messages");
    }
  }
  if (doc.contains("message_seed")) s.message_seed = get_uint(doc["message_seed"], "message_seed");
  if (doc.contains("adversaries")) {
    const json& a = doc["adversaries"];
    if (!a.is_array()) throw ConfigError("adversaries", "expected an array of node ids");
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_string()) throw ConfigError("adversaries[" + std::to_string(i) + "]", "expected a node id");
      s.adversaries.push_back(a[i].get<std::string>());
    }
  }

  if (doc.contains("attack")) {
    const json& a = doc["attack"];
    if (!a.is_object()) throw ConfigError("attack", "expected an object");
    reject_unknown(a, {"kind", "coeffs", "target", "node", "edge"}, "attack");
    if (!a.contains("kind") || !a["kind"].is_string()) throw ConfigError("attack.kind", "missing or not a string");
    const std::string kind = a["kind"].get<std::string>();
    auto coeffs = [&](std::size_t len) {
      if (!a.contains("coeffs")) throw ConfigError("attack.coeffs", "missing required field");
      auto c = get_coords(a["coeffs"], len, s.q, "attack.coeffs");
      check_sum_one(c, s.q, "attack.coeffs");
      return c;
    };
    if (kind == "none") {
      s.attack.kind = AttackKind::kNone;
      reject_unknown(a, {"kind"}, "attack");
    } else if (kind == "forge") {
      s.attack.kind = AttackKind::kForge;
      reject_unknown(a, {"kind", "coeffs", "target"}, "attack");
      if (a.contains("coeffs") == a.contains("target")) {
        throw ConfigError("attack", "forge needs exactly one of coeffs or target");
      }
      if (a.contains("coeffs")) {
        s.attack.coeffs = coeffs(s.n);
      } else {
        s.attack.target = get_coords(a["target"], s.l, s.q, "attack.target");
      }
    } else if (kind == "pollute") {
      s.attack.kind = AttackKind::kPollute;
      reject_unknown(a, {"kind", "coeffs", "node", "edge"}, "attack");
      for (const char* key : {"node", "edge"}) {
        if (!a.contains(key) || !a[key].is_string()) {
          throw ConfigError(std::string("attack.") + key, "missing or not a string");
        }
      }
      s.attack.node = a["node"].get<std::string>();
      s.attack.edge = a["edge"].get<std::string>();
      if (!a.contains("coeffs") || !a["coeffs"].is_array()) throw ConfigError("attack.coeffs", "missing or not an array");
      s.attack.coeffs = coeffs(a["coeffs"].size());
    } else if (kind == "recover") {
      s.attack.kind = AttackKind::kRecover;
      reject_unknown(a, {"kind"}, "attack");
    } else {
      throw ConfigError("attack.kind", "unknown attack '" + kind + "'");
    }
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  json params{{"q", s.q}, {"l", s.l}, {"k", s.k}, {"M", s.M}, {"n", s.n}};
  if (s.V) params["V"] = *s.V;
  if (s.public_points) params["public_points"] = *s.public_points;
  if (s.point_seed) params["point_seed"] = *s.point_seed;
  json doc{{"version", kScenarioSchemaVersion},
           {"params", std::move(params)},
           {"topology", s.topology},
           {"random_kernels", s.random_kernels},
           {"adversaries", s.adversaries},
           {"seed", s.seed},
           {"unsafe_n_gt_m", s.unsafe_n_gt_m},
           {"guard", s.guard}};
  if (s.messages) doc["messages"] = *s.messages;
  if (s.message_seed) doc["message_seed"] = *s.message_seed;
  json attack{{"kind", to_string(s.attack.kind)}};
  if (s.attack.kind == AttackKind::kForge) {
    if (s.attack.target) {
      attack["target"] = *s.attack.target;
    } else {
      attack["coeffs"] = s.attack.coeffs;
    }
  }
  if (s.attack.kind == AttackKind::kPollute) {
    attack["node"] = s.attack.node;
    attack["edge"] = s.attack.edge;
    attack["coeffs"] = s.attack.coeffs;
  }
  doc["attack"] = std::move(attack);
  return doc;
}

Instance build_instance(const Scenario& s) {
  const FieldPtr base = make_field(s.q, 1);
  const FieldPtr field = make_field(s.q, s.l);
  const Rng master(s.seed);

  std::optional<Network> net;
  try {
    if (s.topology.is_string()) {
      net = topologies::by_name(s.topology.get<std::string>(), base, s.n);
    } else {
      net = network_from_json(s.topology, base, s.n, s.random_kernels);
    }
  } catch (const ParameterError& e) {
    throw ConfigError("topology", e.what());
  } catch (const TopologyError& e) {
    throw ConfigError("topology", e.what());
  }
  if (s.random_kernels) {
    Rng krng = master.substream("kernels");
    net = net->with_random_kernels(krng);
  }

  const std::size_t needed = net->verifier_count();
  const std::size_t V = s.V.value_or(needed);
  if (V < needed) {
    throw ConfigError("params.V", "topology uses verifier indices up to " + std::to_string(needed - 1));
  }
  if (V == 0) throw ConfigError("params.V", "need at least one verifier");

  SystemParams params{field, s.k, s.M, s.n, {}, s.unsafe_n_gt_m};
  if (s.public_points) {
    if (s.public_points->size() != V) {
      throw ConfigError("params.public_points", "expected V = " + std::to_string(V) + " points");
    }
    for (const auto& p : *s.public_points) params.public_points.push_back(field->to_field(p));
  } else {
    if (order_or_max(*field) - 1 < V) {
      throw ConfigError("params.V", "F_{q^l} has fewer than V distinct nonzero public points");
    }
    params.public_points = distinct_nonzero(
        *field, V, s.point_seed ? Rng(*s.point_seed) : master.substream("points"));
  }
  try {
    params.validate();
  } catch (const ParameterError& e) {
    throw ConfigError("params", e.what());
  }

  KeyMaterial keys = keygen(params, master.substream("keys").seed());

  std::vector<Fel> messages;
  if (s.messages) {
    for (const auto& m : *s.messages) messages.push_back(field->to_field(m));
  } else {
    Rng mrng = s.message_seed ? Rng(*s.message_seed) : master.substream("messages");
    if (order_or_max(*field) - 1 >= s.n) {
      messages = distinct_nonzero(*field, s.n, mrng);
    } else {
      for (std::size_t i = 0; i < s.n; ++i) messages.push_back(field->random_nonzero(mrng));
    }
  }
  std::vector<TaggedPacket> packets;
  for (const auto& m : messages) packets.push_back(tag(params, keys.source, m));

  GlobalKernels kernels = compute_global_kernels(*net);
  return {std::move(params), std::move(*net), std::move(kernels), std::move(keys), std::move(messages),
          std::move(packets)};
}

json run_scenario(const Scenario& s) {
  const Instance inst = build_instance(s);
  const Network& net = inst.network;

  json report;
  report["version"] = kReportVersion;
  report["seed"] = s.seed;
  report["flat_layout"] = kFlatLayout;
  report["scenario"] = scenario_to_json(s);
  report["field"] = field_json(*inst.params.field);
  json topo = network_to_json(net);
  json global = json::object();
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    std::vector<std::uint32_t> f;
    for (std::size_t c = 0; c < net.messages(); ++c) f.push_back(inst.kernels.edge_vectors(e, c)[0]);
    global[net.edges()[e].id] = f;
  }
  topo["global_kernels"] = std::move(global);
  report["network"] = std::move(topo);
  report["public_points"] = fels_to_json(inst.params.public_points);
  report["messages"] = fels_to_json(inst.messages);
  json src = json::array();
  for (const auto& p : inst.packets) src.push_back(flat_to_json(flatten(inst.params, p)));
  report["source_packets"] = std::move(src);

  report["honest"] = flow_section(inst, simulate(inst.params, net, inst.packets));

  switch (s.attack.kind) {
    case AttackKind::kNone: report["attack"] = {{"kind", "none"}}; break;
    case AttackKind::kPollute: report["attack"] = pollute_section(s, inst); break;
    case AttackKind::kForge: report["attack"] = forge_section(s, inst); break;
    case AttackKind::kRecover: report["attack"] = recover_section(s, inst); break;
  }
  return report;
}

json keygen_report(const Scenario& s) {
  const Instance inst = build_instance(s);
  const SystemParams& params = inst.params;
  json rows = json::array();
  for (std::size_t t = 0; t <= params.M; ++t) rows.push_back(fels_to_json(inst.keys.source.A.row(t)));
  json vkeys = json::array();
  for (const auto& vk : inst.keys.verifiers) {
    json entry{{"index", vk.index}, {"point", fel_to_json(vk.point)}, {"evals", fels_to_json(vk.evals)}};
    for (const auto& node : inst.network.nodes()) {
      if (node.verifier == vk.index) entry["node"] = node.id;
    }
    vkeys.push_back(std::move(entry));
  }
  return {{"version", kReportVersion},
          {"seed", s.seed},
          {"scenario", scenario_to_json(s)},
          {"field", field_json(*params.field)},
          {"source_key", std::move(rows)},
          {"verifier_keys", std::move(vkeys)}};
}

json demo_report(std::uint64_t seed) {
  Scenario base;
  base.q = 3;
  base.l = 2;
  base.k = 3;
  base.M = 2;
  base.n = 2;
  base.seed = seed;
  base.topology = "butterfly";

  Scenario honest = base;

  Scenario pollute = base;
  pollute.attack.kind = AttackKind::kPollute;
  pollute.attack.node = "c";
  pollute.attack.edge = "c-d";
  pollute.attack.coeffs = {2, 2};

  Scenario forge_s = base;
  forge_s.adversaries = {"t1"};
  forge_s.attack.kind = AttackKind::kForge;
  forge_s.attack.coeffs = {2, 2};

  // F_8 has the 6 distinct nonzero points the butterfly's verifiers need and
  // keeps the brute-force count small.
  Scenario recover;
  recover.q = 2;
  recover.l = 3;
  recover.k = 2;
  recover.M = 1;
  recover.n = 1;
  recover.seed = seed;
  recover.adversaries = {"c"};
  recover.attack.kind = AttackKind::kRecover;

  return {{"version", kReportVersion},
          {"seed", seed},
          {"honest", run_scenario(honest)},
          {"pollute", run_scenario(pollute)},
          {"forge", run_scenario(forge_s)},
          {"recover", run_scenario(recover)}};
}

}  // namespace ncauth
