#pragma once

// Multi-receiver authentication code for linear network coding.
//
// A trusted authority draws M+1 random polynomials P_0..P_M of degree < k over
// F_{q^l} (the rows of the source key A). Verifier i receives the evaluations
// P_t(x_i) at its public point. A message s in F_{q^l} is sent as the packet
// [1, s, T_s] where
//
//   T_s(x) = P_0(x) + s P_1(x) + s^q P_2(x) + ... + s^{q^{M-1}} P_M(x).
//
// A packet [c, m, T] is accepted by verifier i iff
//
//   T(x_i) = c P_0(x_i) + sum_{t=1..M} m^{q^{t-1}} P_t(x_i).
//
// Both sides are F_q-linear in the packet, which is what the attacks exploit.

#include <cstdint>
#include <span>
#include <vector>

#include "ncauth/field.hpp"
#include "ncauth/matrix.hpp"

namespace ncauth {

struct SystemParams {
  FieldPtr field;
  std::size_t k = 2;  // polynomial length; degree k-1
  std::size_t M = 1;  // tag dimension
  std::size_t n = 1;  // messages per key
  std::vector<Fel> public_points;  // x_1..x_V, distinct and nonzero
  bool unsafe_n_gt_m = false;

  std::size_t V() const noexcept { return public_points.size(); }
  /// Length over F_q of a flat packet: 1 + l + k*l.
  std::size_t flat_length() const noexcept;

  /// Throws ParameterError on any invariant violation.
  void validate() const;
};

/// (M+1) x k matrix; row t holds the coefficients of P_t, constant term first.
struct SourceKey {
  FfMatrix A;
};

struct VerifierKey {
  std::size_t index = 0;
  Fel point;
  std::vector<Fel> evals;  // P_0(x_i), ..., P_M(x_i)
};

struct TaggedPacket {
  std::uint32_t c = 0;  // header in F_q
  Fel m;                // payload
  std::vector<Fel> T;   // tag polynomial coefficients, constant term first

  friend bool operator==(const TaggedPacket&, const TaggedPacket&) = default;
};

using FlatPacket = std::vector<std::uint32_t>;

struct KeyMaterial {
  SourceKey source;
  std::vector<VerifierKey> verifiers;
};

KeyMaterial keygen(const SystemParams& params, std::uint64_t seed);
/// Verifier keys for a given source key.
std::vector<VerifierKey> distribute_keys(const SystemParams& params, const SourceKey& key);

/// P(x) for coefficients constant term first (Horner).
Fel eval_poly(const ExtField& f, std::span<const Fel> coeffs, const Fel& x);

/// (1, s, s^q, ..., s^{q^{M-1}}).
std::vector<Fel> moore_row(const ExtField& f, const Fel& s, std::size_t M);
/// n x (M+1) matrix with row j = moore_row(s_j).
FfMatrix moore_matrix(const FieldPtr& field, std::span<const Fel> messages, std::size_t M);

TaggedPacket tag(const SystemParams& params, const SourceKey& key, const Fel& s);
/// Coefficient j of the tag polynomial of s.
Fel tag_coefficient(const SystemParams& params, const SourceKey& key, std::size_t j, const Fel& s);

/// T(x_i) - c P_0(x_i) - sum_t m^{q^{t-1}} P_t(x_i). Zero iff the packet verifies.
Fel verification_residual(const SystemParams& params, const VerifierKey& vkey,
                          const TaggedPacket& packet);
bool verify(const SystemParams& params, const VerifierKey& vkey, const TaggedPacket& packet);

/// Coordinatewise F_q-linear combination. Throws ShapeError on length or
/// shape mismatch.
TaggedPacket combine(const SystemParams& params, std::span<const TaggedPacket> packets,
                     std::span<const std::uint32_t> coeffs);
FlatPacket combine_flat(std::uint32_t q, std::span<const FlatPacket> packets,
                        std::span<const std::uint32_t> coeffs);

/// [c] ++ to_vector(m) ++ to_vector(T_0) ++ ... ++ to_vector(T_{k-1}).
FlatPacket flatten(const SystemParams& params, const TaggedPacket& packet);
/// Inverse of flatten; throws ShapeError on a wrong length.
TaggedPacket parse_flat(const SystemParams& params, std::span<const std::uint32_t> flat);

bool is_zero_packet(const TaggedPacket& packet);

}  // namespace ncauth
