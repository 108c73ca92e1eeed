#pragma once

// Scenario documents and report generation. Schemas are described in
// docs/schemas.md; example documents live in scenarios/.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncauth/attack.hpp"
#include "ncauth/network.hpp"
#include "ncauth/scheme.hpp"

namespace ncauth {

inline constexpr int kScenarioSchemaVersion = 1;
inline constexpr int kReportVersion = 1;
/// Layout tag of flat packets in reports: [c] ++ m ++ T_0 ++ ... ++ T_{k-1}.
inline constexpr const char* kFlatLayout = "c|m|T0..T(k-1)/v1";

enum class AttackKind { kNone, kForge, kPollute, kRecover };

const char* to_string(AttackKind kind);

struct AttackConfig {
  AttackKind kind = AttackKind::kNone;
  std::vector<std::uint32_t> coeffs;                 // forge or pollute
  std::optional<std::vector<std::uint32_t>> target;  // forge by target payload
  std::string node;                                  // pollute
  std::string edge;                                  // pollute
};

struct Scenario {
  std::uint32_t q = 2;
  std::size_t l = 1;
  std::size_t k = 2;
  std::size_t M = 1;
  std::size_t n = 1;
  std::optional<std::size_t> V;
  std::optional<std::vector<std::vector<std::uint32_t>>> public_points;
  std::optional<std::uint64_t> point_seed;

  /// Either a built-in name ("butterfly", "line", "diamond") or an inline
  /// topology document.
  nlohmann::json topology = "butterfly";
  bool random_kernels = false;

  std::optional<std::vector<std::vector<std::uint32_t>>> messages;
  std::optional<std::uint64_t> message_seed;

  std::vector<std::string> adversaries;
  AttackConfig attack;
  std::uint64_t seed = 0;
  bool unsafe_n_gt_m = false;
  std::uint64_t guard = kDefaultBruteForceGuard;
};

/// Throws ConfigError naming the offending field.
Scenario parse_scenario(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const Scenario& s);

/// Everything a scenario resolves to before any attack runs.
struct Instance {
  SystemParams params;
  Network network;
  GlobalKernels kernels;
  KeyMaterial keys;
  std::vector<Fel> messages;
  std::vector<TaggedPacket> packets;
};

Instance build_instance(const Scenario& s);

/// Runs the configured pipeline and returns the report document. Attack
/// success or failure is data in the report, never an exception; invalid
/// configurations throw ConfigError.
nlohmann::json run_scenario(const Scenario& s);

/// Source and verifier keys for the scenario.
nlohmann::json keygen_report(const Scenario& s);

/// Honest run, pollution, forgery and key recovery on the butterfly network.
nlohmann::json demo_report(std::uint64_t seed);

nlohmann::json fel_to_json(const Fel& a);
nlohmann::json bigint_to_json(const BigInt& v);

// ---- Counting sweep ----

struct SweepConfig {
  std::vector<std::uint32_t> q;
  std::vector<std::size_t> l;
  std::vector<std::size_t> k;
  std::vector<std::size_t> M;
  std::vector<std::size_t> K;
  std::vector<std::string> topologies{"butterfly"};
  /// Message counts; empty means n = M.
  std::vector<std::size_t> n;
  std::size_t repetitions = 1;
  std::uint64_t guard = kDefaultBruteForceGuard;
  std::uint64_t seed = 0;
};

SweepConfig parse_sweep(const nlohmann::json& doc);

struct SweepRow {
  std::uint32_t q = 0;
  std::size_t l = 0, k = 0, M = 0, K = 0, n = 0;
  std::string topology;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;

  std::optional<std::string> skipped;  // reason, when not run
  std::vector<std::string> coalition;
  std::size_t r0 = 0;
  std::size_t h_total = 0;
  bool condition_held = false;
  std::size_t rank = 0;
  std::size_t predicted_rank = 0;
  BigInt predicted = 0;
  BigInt gauss = 0;
  BigInt brute = 0;
  bool consistent = false;
  bool key_satisfies = false;
  bool observation_matches = false;  // observed-packet route equals H S_n

  bool count_match() const { return !skipped && predicted == gauss && gauss == brute; }
  bool rank_match() const { return !skipped && rank == predicted_rank; }
  bool ok() const {
    return count_match() && rank_match() && consistent && key_satisfies && observation_matches;
  }
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::size_t instances() const;
  std::size_t skipped() const;
  std::size_t mismatches() const;
};

/// One row per parameter tuple and repetition. Rows with K outside [1, k-1],
/// too few points or nodes, or above the guard are marked skipped. Rows run concurrently;
/// the result order is the enumeration order.
SweepResult lemma_sweep(const SweepConfig& cfg);

/// Runs a single counting instance.
SweepRow run_sweep_instance(std::uint32_t q, std::size_t l, std::size_t k, std::size_t M,
                            std::size_t K, std::size_t n, const std::string& topology,
                            std::uint64_t seed, std::uint64_t guard);

nlohmann::json sweep_to_json(const SweepConfig& cfg, const SweepResult& result);
std::string sweep_to_table(const SweepResult& result);

}  // namespace ncauth
