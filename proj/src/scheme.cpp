#include "ncauth/scheme.hpp"

#include <string>

#include "ncauth/errors.hpp"

namespace ncauth {

std::size_t SystemParams::flat_length() const noexcept {
  const std::size_t l = field->degree();
  return 1 + l + k * l;
}

void SystemParams::validate() const {
  if (!field) throw ParameterError("params: missing field");
  if (k < 2) throw ParameterError("params: k must be >= 2");
  if (M < 1) throw ParameterError("params: M must be >= 1");
  if (n < 1) throw ParameterError("params: n must be >= 1");
  if (public_points.empty()) throw ParameterError("params: need at least one verifier (V >= 1)");
  if (n > M && !unsafe_n_gt_m) {
    throw ParameterError("params: n = " + std::to_string(n) + " exceeds M = " + std::to_string(M) +
                         " (each key authenticates at most M messages; pass the unsafe flag to override)");
  }
  for (std::size_t i = 0; i < public_points.size(); ++i) {
    field->validate(public_points[i]);
    if (public_points[i].is_zero()) throw ParameterError("params: public point must be nonzero");
    for (std::size_t j = 0; j < i; ++j) {
      if (public_points[i] == public_points[j]) {
        throw ParameterError("params: public points must be distinct");
      }
    }
  }
}

Fel eval_poly(const ExtField& f, std::span<const Fel> coeffs, const Fel& x) {
  Fel acc = f.zero();
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = f.add(f.mul(acc, x), coeffs[i]);
  return acc;
}

std::vector<VerifierKey> distribute_keys(const SystemParams& params, const SourceKey& key) {
  const ExtField& f = *params.field;
  std::vector<VerifierKey> out;
  out.reserve(params.V());
  for (std::size_t i = 0; i < params.V(); ++i) {
    VerifierKey vk{i, params.public_points[i], {}};
    vk.evals.reserve(params.M + 1);
    for (std::size_t t = 0; t <= params.M; ++t) {
      vk.evals.push_back(eval_poly(f, key.A.row(t), params.public_points[i]));
    }
    out.push_back(std::move(vk));
  }
  return out;
}

KeyMaterial keygen(const SystemParams& params, std::uint64_t seed) {
  params.validate();
  Rng rng(seed);
  FfMatrix A(params.field, params.M + 1, params.k);
  for (std::size_t t = 0; t <= params.M; ++t) {
    for (std::size_t j = 0; j < params.k; ++j) A(t, j) = params.field->random(rng);
  }
  SourceKey source{std::move(A)};
  auto verifiers = distribute_keys(params, source);
  return {std::move(source), std::move(verifiers)};
}

std::vector<Fel> moore_row(const ExtField& f, const Fel& s, std::size_t M) {
  std::vector<Fel> row;
  row.reserve(M + 1);
  row.push_back(f.one());
  Fel p = s;
  for (std::size_t t = 1; t <= M; ++t) {
    row.push_back(p);
    p = f.frobenius(p, 1);
  }
  return row;
}

FfMatrix moore_matrix(const FieldPtr& field, std::span<const Fel> messages, std::size_t M) {
  FfMatrix S(field, messages.size(), M + 1);
  for (std::size_t j = 0; j < messages.size(); ++j) {
    const auto row = moore_row(*field, messages[j], M);
    for (std::size_t t = 0; t <= M; ++t) S(j, t) = row[t];
  }
  return S;
}

namespace {

void check_key(const SystemParams& params, const SourceKey& key) {
  if (key.A.rows() != params.M + 1 || key.A.cols() != params.k) {
    throw ShapeError("source key must be (M+1) x k");
  }
}

Fel tag_coefficient_from_row(const ExtField& f, const SourceKey& key, std::span<const Fel> phi,
                             std::size_t j) {
  Fel acc = f.zero();
  for (std::size_t t = 0; t < phi.size(); ++t) acc = f.add(acc, f.mul(phi[t], key.A(t, j)));
  return acc;
}

}  // namespace

TaggedPacket tag(const SystemParams& params, const SourceKey& key, const Fel& s) {
  check_key(params, key);
  const ExtField& f = *params.field;
  f.validate(s);
  const auto phi = moore_row(f, s, params.M);
  TaggedPacket p{1, s, {}};
  p.T.reserve(params.k);
  for (std::size_t j = 0; j < params.k; ++j) p.T.push_back(tag_coefficient_from_row(f, key, phi, j));
  return p;
}

Fel tag_coefficient(const SystemParams& params, const SourceKey& key, std::size_t j, const Fel& s) {
  check_key(params, key);
  if (j >= params.k) throw ShapeError("tag coefficient index out of range");
  return tag_coefficient_from_row(*params.field, key, moore_row(*params.field, s, params.M), j);
}

Fel verification_residual(const SystemParams& params, const VerifierKey& vkey,
                          const TaggedPacket& packet) {
  const ExtField& f = *params.field;
  if (vkey.evals.size() != params.M + 1) throw ShapeError("verifier key must hold M+1 evaluations");
  if (packet.T.size() != params.k) throw ShapeError("tag must have k coefficients");
  Fel expected = f.scale(packet.c, vkey.evals[0]);
  Fel power = packet.m;
  for (std::size_t t = 1; t <= params.M; ++t) {
    expected = f.add(expected, f.mul(power, vkey.evals[t]));
    power = f.frobenius(power, 1);
  }
  return f.sub(eval_poly(f, packet.T, vkey.point), expected);
}

bool verify(const SystemParams& params, const VerifierKey& vkey, const TaggedPacket& packet) {
  return verification_residual(params, vkey, packet).is_zero();
}

FlatPacket combine_flat(std::uint32_t q, std::span<const FlatPacket> packets,
                        std::span<const std::uint32_t> coeffs) {
  if (packets.size() != coeffs.size()) {
    throw ShapeError("combine: " + std::to_string(packets.size()) + " packets but " +
                     std::to_string(coeffs.size()) + " coefficients");
  }
  if (packets.empty()) throw ShapeError("combine: no packets");
  FlatPacket out(packets.front().size(), 0);
  for (std::size_t i = 0; i < packets.size(); ++i) {
    if (packets[i].size() != out.size()) throw ShapeError("combine: packets differ in length");
    const std::uint64_t a = coeffs[i] % q;
    if (a == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] = static_cast<std::uint32_t>((out[j] + a * packets[i][j]) % q);
    }
  }
  return out;
}

TaggedPacket combine(const SystemParams& params, std::span<const TaggedPacket> packets,
                     std::span<const std::uint32_t> coeffs) {
  std::vector<FlatPacket> flats;
  flats.reserve(packets.size());
  for (const auto& p : packets) flats.push_back(flatten(params, p));
  return parse_flat(params, combine_flat(params.field->q(), flats, coeffs));
}

FlatPacket flatten(const SystemParams& params, const TaggedPacket& packet) {
  const ExtField& f = *params.field;
  if (packet.T.size() != params.k) throw ShapeError("flatten: tag must have k coefficients");
  if (packet.c >= f.q()) throw ParameterError("flatten: header not reduced mod q");
  FlatPacket out;
  out.reserve(params.flat_length());
  out.push_back(packet.c);
  const auto append = [&](const Fel& e) {
    const auto v = f.to_vector(e);
    out.insert(out.end(), v.begin(), v.end());
  };
  append(packet.m);
  for (const auto& t : packet.T) append(t);
  return out;
}

TaggedPacket parse_flat(const SystemParams& params, std::span<const std::uint32_t> flat) {
  const ExtField& f = *params.field;
  if (flat.size() != params.flat_length()) {
    throw ShapeError("flat packet has length " + std::to_string(flat.size()) + ", expected " +
                     std::to_string(params.flat_length()));
  }
  const std::size_t l = f.degree();
  TaggedPacket p;
  p.c = flat[0] % f.q();
  p.m = f.to_field(flat.subspan(1, l));
  p.T.reserve(params.k);
  for (std::size_t j = 0; j < params.k; ++j) p.T.push_back(f.to_field(flat.subspan(1 + l + j * l, l)));
  return p;
}

bool is_zero_packet(const TaggedPacket& packet) {
  if (packet.c != 0 || !packet.m.is_zero()) return false;
  for (const auto& t : packet.T) {
    if (!t.is_zero()) return false;
  }
  return true;
}

}  // namespace ncauth
