#include <algorithm>
#include <atomic>
#include <exception>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "ncauth/errors.hpp"
#include "ncauth/scenario.hpp"

namespace ncauth {

using nlohmann::json;

std::size_t SweepResult::instances() const { return rows.size(); }

std::size_t SweepResult::skipped() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.skipped.has_value(); }));
}

std::size_t SweepResult::mismatches() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.skipped && !r.ok(); }));
}

namespace {

template <typename T>
std::vector<T> uint_list(const json& v, const std::string& path) {
  std::vector<T> out;
  auto one = [&](const json& x, const std::string& p) {
    if (!x.is_number_integer() || (!x.is_number_unsigned() && x.get<std::int64_t>() < 0)) {
      throw ConfigError(p, "expected a nonnegative integer");
    }
    out.push_back(static_cast<T>(x.get<std::uint64_t>()));
  };
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) one(v[i], path + "[" + std::to_string(i) + "]");
  } else {
    one(v, path);
  }
  return out;
}

std::uint64_t uint_value(const json& v, const std::string& path) {
  const auto xs = uint_list<std::uint64_t>(v, path);
  if (v.is_array()) throw ConfigError(path, "expected a single integer");
  return xs[0];
}

std::string tuple_key(std::uint32_t q, std::size_t l, std::size_t k, std::size_t M, std::size_t K,
                      std::size_t n, const std::string& topology, std::size_t rep) {
  std::ostringstream os;
  os << "q=" << q << ",l=" << l << ",k=" << k << ",M=" << M << ",K=" << K << ",n=" << n
     << ",topology=" << topology << ",rep=" << rep;
  return os.str();
}

}  // namespace

SweepConfig parse_sweep(const json& doc) {
  if (!doc.is_object()) throw ConfigError("$", "sweep config must be a JSON object");
  static const std::set<std::string> allowed{"version", "q", "l", "k", "M", "K", "topologies",
                                             "n", "repetitions", "guard", "seed"};
  for (const auto& [key, _] : doc.items()) {
    if (!allowed.count(key)) throw ConfigError(key, "unknown field");
  }
  if (doc.contains("version") && uint_value(doc["version"], "version") != kScenarioSchemaVersion) {
    throw ConfigError("version", "unsupported sweep schema version");
  }
  SweepConfig cfg;
  if (doc.contains("q")) cfg.q = uint_list<std::uint32_t>(doc["q"], "q");
  if (doc.contains("l")) cfg.l = uint_list<std::size_t>(doc["l"], "l");
  if (doc.contains("k")) cfg.k = uint_list<std::size_t>(doc["k"], "k");
  if (doc.contains("M")) cfg.M = uint_list<std::size_t>(doc["M"], "M");
  if (doc.contains("K")) cfg.K = uint_list<std::size_t>(doc["K"], "K");
  if (doc.contains("n")) cfg.n = uint_list<std::size_t>(doc["n"], "n");
  if (doc.contains("repetitions")) cfg.repetitions = uint_value(doc["repetitions"], "repetitions");
  if (doc.contains("guard")) cfg.guard = uint_value(doc["guard"], "guard");
  if (doc.contains("seed")) cfg.seed = uint_value(doc["seed"], "seed");
  if (doc.contains("topologies")) {
    const json& t = doc["topologies"];
    if (!t.is_array()) throw ConfigError("topologies", "expected an array of built-in names");
    cfg.topologies.clear();
    for (std::size_t i = 0; i < t.size(); ++i) {
      const std::string p = "topologies[" + std::to_string(i) + "]";
      if (!t[i].is_string()) throw ConfigError(p, "expected a string");
      const std::string name = t[i].get<std::string>();
      if (name != "butterfly" && name != "line" && name != "diamond") {
        throw ConfigError(p, "unknown topology '" + name + "'");
      }
      cfg.topologies.push_back(name);
    }
  }
  for (std::size_t i = 0; i < cfg.q.size(); ++i) {
    if (cfg.q[i] > kMaxPrime || !is_prime(cfg.q[i])) {
      throw ConfigError("q[" + std::to_string(i) + "]", "must be a prime <= 65536");
    }
  }
  for (std::size_t i = 0; i < cfg.l.size(); ++i) {
    if (cfg.l[i] < 1 || cfg.l[i] > kMaxDegree) throw ConfigError("l[" + std::to_string(i) + "]", "must be in [1, 16]");
  }
  for (std::size_t i = 0; i < cfg.k.size(); ++i) {
    if (cfg.k[i] < 2) throw ConfigError("k[" + std::to_string(i) + "]", "must be >= 2");
  }
  for (std::size_t i = 0; i < cfg.M.size(); ++i) {
    if (cfg.M[i] < 1) throw ConfigError("M[" + std::to_string(i) + "]", "must be >= 1");
  }
  for (std::size_t i = 0; i < cfg.n.size(); ++i) {
    if (cfg.n[i] < 1) throw ConfigError("n[" + std::to_string(i) + "]", "must be >= 1");
  }
  return cfg;
}

SweepRow run_sweep_instance(std::uint32_t q, std::size_t l, std::size_t k, std::size_t M, std::size_t K,
                            std::size_t n, const std::string& topology, std::uint64_t seed,
                            std::uint64_t guard) {
  SweepRow row;
  row.q = q;
  row.l = l;
  row.k = k;
  row.M = M;
  row.K = K;
  row.n = n;
  row.topology = topology;
  row.seed = seed;

  if (K == 0) {
    row.skipped = "K must be >= 1";
    return row;
  }
  if (K >= k) {
    row.skipped = "K > k-1";
    return row;
  }
  const RecoveryMeta probe{K, k, M, l, q, 0, 0, n};
  if (!within_guard(probe, guard)) {
    row.skipped = "(q^l)^(k(M+1)) exceeds guard";
    return row;
  }
  const FieldPtr base = make_field(q, 1);
  const FieldPtr field = make_field(q, l);
  if (field->order() - 1 < K) {
    row.skipped = "fewer than K distinct nonzero points";
    return row;
  }

  const Rng rng(seed);
  Rng krng = rng.substream("kernels");
  const Network net = topologies::by_name(topology, base, n).with_random_kernels(krng);

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < net.nodes().size(); ++i) {
    if (i != net.source()) candidates.push_back(i);
  }
  if (candidates.size() < K) {
    row.skipped = "topology has fewer than K non-source nodes";
    return row;
  }
  Rng crng = rng.substream("coalition");
  for (std::size_t i = 0; i < K; ++i) {
    std::swap(candidates[i], candidates[i + crng.uniform(candidates.size() - i)]);
  }
  std::vector<std::size_t> coalition(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(K));

  // Only coalition members hold keys in a sweep instance.
  std::vector<std::optional<std::size_t>> verifiers(net.nodes().size());
  for (std::size_t i = 0; i < K; ++i) verifiers[coalition[i]] = i;
  const Network vnet = net.with_verifiers(verifiers);

  SystemParams params{field, k, M, n, {}, n > M};
  Rng prng = rng.substream("points");
  while (params.public_points.size() < K) {
    const Fel x = field->random_nonzero(prng);
    if (std::find(params.public_points.begin(), params.public_points.end(), x) == params.public_points.end()) {
      params.public_points.push_back(x);
    }
  }
  params.validate();
  const KeyMaterial keys = keygen(params, rng.substream("keys").seed());

  Rng mrng = rng.substream("messages");
  std::vector<Fel> messages;
  std::vector<TaggedPacket> packets;
  for (std::size_t i = 0; i < n; ++i) {
    messages.push_back(field->random(mrng));
    packets.push_back(tag(params, keys.source, messages.back()));
  }

  const GlobalKernels kernels = compute_global_kernels(vnet);
  const FlowState flow = simulate(params, vnet, packets);
  const CoalitionView view = coalition_view(vnet, kernels, flow, coalition);
  std::vector<VerifierKey> coalition_keys;
  for (std::size_t i = 0; i < K; ++i) coalition_keys.push_back(keys.verifiers[i]);
  const RecoverySystem system = build_recovery_system(params, view, coalition_keys);

  for (auto node : coalition) row.coalition.push_back(vnet.nodes()[node].id);
  row.r0 = system.meta.r0;
  row.h_total = system.meta.h_total;
  row.condition_held = h_condition_report(system.meta).condition_held;
  row.rank = rank(system.coeff);
  row.predicted_rank = predicted_rank(system.meta);
  row.predicted = predicted_count(system.meta);
  const SolveCount g = gauss_count(system);
  row.consistent = g.consistent;
  row.gauss = g.count;
  row.brute = brute_force_count(system, guard);
  row.key_satisfies = satisfies(system, keys.source);
  row.observation_matches =
      system.observation == mat_mul(lift(view.H, field), moore_matrix(field, messages, M));
  return row;
}

SweepResult lemma_sweep(const SweepConfig& cfg) {
  struct Task {
    std::uint32_t q;
    std::size_t l, k, M, K, n;
    std::string topology;
    std::size_t rep;
  };
  std::vector<Task> tasks;
  for (auto q : cfg.q) {
    for (auto l : cfg.l) {
      for (auto k : cfg.k) {
        for (auto M : cfg.M) {
          for (auto K : cfg.K) {
            for (const auto& topo : cfg.topologies) {
              const std::vector<std::size_t> ns = cfg.n.empty() ? std::vector<std::size_t>{M} : cfg.n;
              for (auto n : ns) {
                for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) tasks.push_back({q, l, k, M, K, n, topo, rep});
              }
            }
          }
        }
      }
    }
  }

  SweepResult result;
  result.rows.resize(tasks.size());
  const Rng master(cfg.seed);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      try {
        const std::uint64_t seed = master.substream(tuple_key(t.q, t.l, t.k, t.M, t.K, t.n, t.topology, t.rep)).seed();
        result.rows[i] = run_sweep_instance(t.q, t.l, t.k, t.M, t.K, t.n, t.topology, seed, cfg.guard);
        result.rows[i].repetition = t.rep;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(tasks.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
  if (!tasks.empty()) worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return result;
}

json sweep_to_json(const SweepConfig& cfg, const SweepResult& result) {
  json rows = json::array();
  for (const auto& r : result.rows) {
    json jr{{"q", r.q}, {"l", r.l}, {"k", r.k}, {"M", r.M}, {"K", r.K}, {"n", r.n},
            {"topology", r.topology}, {"repetition", r.repetition}, {"seed", r.seed}};
    if (r.skipped) {
      jr["skipped"] = *r.skipped;
    } else {
      jr["coalition"] = r.coalition;
      jr["r0"] = r.r0;
      jr["h_total"] = r.h_total;
      jr["condition_held"] = r.condition_held;
      jr["rank"] = r.rank;
      jr["predicted_rank"] = r.predicted_rank;
      jr["predicted_count"] = bigint_to_json(r.predicted);
      jr["gauss_count"] = bigint_to_json(r.gauss);
      jr["brute_count"] = bigint_to_json(r.brute);
      jr["consistent"] = r.consistent;
      jr["key_satisfies"] = r.key_satisfies;
      jr["observation_matches_HSn"] = r.observation_matches;
      jr["count_match"] = r.count_match();
      jr["rank_match"] = r.rank_match();
      jr["match"] = r.ok();
    }
    rows.push_back(std::move(jr));
  }
  json config{{"q", cfg.q}, {"l", cfg.l}, {"k", cfg.k}, {"M", cfg.M}, {"K", cfg.K},
              {"topologies", cfg.topologies}, {"n", cfg.n}, {"repetitions", cfg.repetitions},
              {"guard", cfg.guard}, {"seed", cfg.seed}};
  return {{"version", kReportVersion},
          {"config", std::move(config)},
          {"rows", std::move(rows)},
          {"summary",
           {{"instances", result.instances()},
            {"skipped", result.skipped()},
            {"mismatches", result.mismatches()}}}};
}

std::string sweep_to_table(const SweepResult& result) {
  std::ostringstream os;
  const std::vector<std::pair<const char*, int>> cols{
      {"q", 3},     {"l", 3},      {"k", 3},     {"M", 3},     {"K", 3},     {"n", 3},
      {"topology", 10}, {"rep", 4}, {"r0", 3},   {"H", 3},     {"H<=M", 5},  {"predicted", 12},
      {"gauss", 12}, {"brute", 12}, {"rank", 5}, {"pred_rank", 10}, {"match", 6}};
  for (const auto& [name, w] : cols) os << std::setw(w) << name << ' ';
  os << '\n';
  for (const auto& r : result.rows) {
    os << std::setw(3) << r.q << ' ' << std::setw(3) << r.l << ' ' << std::setw(3) << r.k << ' '
       << std::setw(3) << r.M << ' ' << std::setw(3) << r.K << ' ' << std::setw(3) << r.n << ' '
       << std::setw(10) << r.topology << ' ' << std::setw(4) << r.repetition << ' ';
    if (r.skipped) {
      os << "skipped: " << *r.skipped << '\n';
      continue;
    }
    os << std::setw(3) << r.r0 << ' ' << std::setw(3) << r.h_total << ' ' << std::setw(5)
       << (r.condition_held ? "yes" : "no") << ' ' << std::setw(12) << r.predicted.str() << ' '
       << std::setw(12) << r.gauss.str() << ' ' << std::setw(12) << r.brute.str() << ' ' << std::setw(5)
       << r.rank << ' ' << std::setw(10) << r.predicted_rank << ' ' << std::setw(6)
       << (r.ok() ? "true" : "false") << '\n';
  }
  os << "summary: " << result.instances() << " instances, " << result.skipped() << " skipped, "
     << result.mismatches() << " mismatches\n";
  return os.str();
}

}  // namespace ncauth
