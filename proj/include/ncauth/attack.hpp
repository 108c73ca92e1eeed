#pragma once

// Attacks on the authentication code.
//
// Forgery: for source packets x_1..x_n and a_1 + ... + a_n = 1 in F_q, the
// combination sum a_i x_i is exactly the honest packet of sum a_i s_i, so it
// verifies everywhere.
//
// Key recovery: K colluding verifiers stack what they see into a linear
// system in the k(M+1) entries of the source key A,
//
//   (H_1 S_n; ...; H_K S_n) A = (C_1; ...; C_K),   A v(x_i) = (P_t(x_i))_t,
//
// with v(x) = (1, x, ..., x^{k-1})^T. Unknowns are ordered column by column,
// (a_{0,0}, ..., a_{M,0}, a_{0,1}, ..., a_{M,k-1}). With r_0 the rank of the
// stacked observation matrix and K <= k-1, the system has rank
// r_0 k + (M+1-r_0) K and exactly q^{l (M+1-r_0)(k-K)} solutions.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ncauth/matrix.hpp"
#include "ncauth/network.hpp"
#include "ncauth/scheme.hpp"

namespace ncauth {

struct ForgerySpec {
  std::vector<std::uint32_t> coeffs;  // over F_q, must sum to 1
};

/// Throws AttackSpecError unless the coefficients are reduced mod q and sum
/// to 1.
void validate_forgery(const ForgerySpec& spec, std::uint32_t q);

/// sum a_i x_i over source packets (headers must be 1).
TaggedPacket forge(const SystemParams& params, std::span<const TaggedPacket> packets,
                   const ForgerySpec& spec);

/// Coefficients with sum a_i = 1 and sum a_i s_i = target, or nullopt when the
/// target is outside the affine F_q-span of the messages.
std::optional<ForgerySpec> solve_target_coeffs(const ExtField& field, std::span<const Fel> messages,
                                               const Fel& target);

struct RecoveryMeta {
  std::size_t K = 0;
  std::size_t k = 0;
  std::size_t M = 0;
  std::size_t l = 0;
  std::uint32_t q = 0;
  std::size_t r0 = 0;
  std::size_t h_total = 0;
  std::size_t n = 0;
};

struct RecoverySystem {
  FfMatrix coeff;        // rows x k(M+1) over F_{q^l}
  FfMatrix rhs;          // rows x 1
  FfMatrix observation;  // stacked H_i S_n, h_total x (M+1)
  RecoveryMeta meta;
};

/// Position of a_{t,j} in the unknown vector.
inline std::size_t unknown_index(std::size_t t, std::size_t j, std::size_t M) {
  return j * (M + 1) + t;
}

/// Row (c, m, m^q, ..., m^{q^{M-1}}) for every observed packet. Equals
/// H S_n on honest flow because the coding coefficients lie in F_q.
FfMatrix observation_matrix(const SystemParams& params, std::span<const FlatPacket> observed);

/// Builds the coalition's system. `keys[i]` is the private key of
/// view.members[i]. Throws ShapeError on dimension mismatches.
RecoverySystem build_recovery_system(const SystemParams& params, const CoalitionView& view,
                                     std::span<const VerifierKey> keys);

/// True iff `key` satisfies every equation of the system.
bool satisfies(const RecoverySystem& system, const SourceKey& key);

/// q^{l (M+1-r_0)(k-K)}. Throws HypothesisError when K >= k.
BigInt predicted_count(const RecoveryMeta& meta);
/// r_0 k + (M+1-r_0) K. Throws HypothesisError when K >= k.
std::size_t predicted_rank(const RecoveryMeta& meta);

SolveCount gauss_count(const RecoverySystem& system);

inline constexpr std::uint64_t kDefaultBruteForceGuard = 1ull << 24;

/// Counts candidate keys satisfying every equation by enumerating all
/// (q^l)^{k(M+1)} of them. Throws ResourceError above the guard.
BigInt brute_force_count(const RecoverySystem& system,
                         std::uint64_t guard = kDefaultBruteForceGuard);

/// (q^l)^{k(M+1)} fits under the guard.
bool within_guard(const RecoveryMeta& meta, std::uint64_t guard);

struct HConditionReport {
  std::size_t h_total = 0;
  std::size_t M = 0;
  bool condition_held = false;  // h_total <= M
};

HConditionReport h_condition_report(const RecoveryMeta& meta);

}  // namespace ncauth
