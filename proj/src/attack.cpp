#include "ncauth/attack.hpp"

#include <string>
#include <utility>

#include "ncauth/errors.hpp"

namespace ncauth {

void validate_forgery(const ForgerySpec& spec, std::uint32_t q) {
  if (spec.coeffs.empty()) throw AttackSpecError("forgery: no coefficients");
  std::uint64_t sum = 0;
  for (auto c : spec.coeffs) {
    if (c >= q) throw AttackSpecError("forgery: coefficient " + std::to_string(c) + " not reduced mod q");
    sum += c;
  }
  if (sum % q != 1) {
    throw AttackSpecError("forgery: coefficients sum to " + std::to_string(sum % q) + ", must sum to 1");
  }
}

TaggedPacket forge(const SystemParams& params, std::span<const TaggedPacket> packets,
                   const ForgerySpec& spec) {
  validate_forgery(spec, params.field->q());
  if (spec.coeffs.size() != packets.size()) {
    throw AttackSpecError("forgery: " + std::to_string(spec.coeffs.size()) + " coefficients for " +
                          std::to_string(packets.size()) + " packets");
  }
  for (const auto& p : packets) {
    if (p.c != 1) throw AttackSpecError("forgery: packets must be source packets with header 1");
  }
  return combine(params, packets, spec.coeffs);
}

std::optional<ForgerySpec> solve_target_coeffs(const ExtField& field, std::span<const Fel> messages,
                                               const Fel& target) {
  const std::size_t l = field.degree();
  const std::size_t n = messages.size();
  if (n == 0) return std::nullopt;
  const FieldPtr base = make_field(field.q(), 1);
  // Rows 0..l-1: payload coordinates; row l: the sum-to-one constraint.
  FfMatrix coeff(base, l + 1, n);
  FfMatrix rhs(base, l + 1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = field.to_vector(messages[i]);
    for (std::size_t r = 0; r < l; ++r) coeff(r, i) = base->embed(v[r]);
    coeff(l, i) = base->one();
  }
  const auto t = field.to_vector(target);
  for (std::size_t r = 0; r < l; ++r) rhs(r, 0) = base->embed(t[r]);
  rhs(l, 0) = base->one();
  const auto x = solve_particular(coeff, rhs);
  if (!x) return std::nullopt;
  ForgerySpec spec;
  for (std::size_t i = 0; i < n; ++i) spec.coeffs.push_back((*x)(i, 0)[0]);
  return spec;
}

FfMatrix observation_matrix(const SystemParams& params, std::span<const FlatPacket> observed) {
  const ExtField& f = *params.field;
  FfMatrix D(params.field, observed.size(), params.M + 1);
  for (std::size_t r = 0; r < observed.size(); ++r) {
    const TaggedPacket p = parse_flat(params, observed[r]);
    const auto row = moore_row(f, p.m, params.M);
    D(r, 0) = f.embed(p.c);
    for (std::size_t t = 1; t <= params.M; ++t) D(r, t) = row[t];
  }
  return D;
}

RecoverySystem build_recovery_system(const SystemParams& params, const CoalitionView& view,
                                     std::span<const VerifierKey> keys) {
  const ExtField& f = *params.field;
  const std::size_t K = view.members.size();
  const std::size_t k = params.k;
  const std::size_t M = params.M;
  if (keys.size() != K) {
    throw ShapeError("recovery: " + std::to_string(keys.size()) + " keys for " + std::to_string(K) +
                     " coalition members");
  }
  if (view.observed.size() != view.h_total || view.H.rows() != view.h_total) {
    throw ShapeError("recovery: observations do not match the stacked kernel rows");
  }
  for (const auto& key : keys) {
    if (key.evals.size() != M + 1) throw ShapeError("recovery: verifier key must hold M+1 evaluations");
  }

  const FfMatrix D = observation_matrix(params, view.observed);
  const std::size_t unknowns = k * (M + 1);
  const std::size_t rows = k * view.h_total + (M + 1) * K;
  FfMatrix coeff(params.field, rows, unknowns);
  FfMatrix rhs(params.field, rows, 1);

  std::size_t row = 0;
  for (const auto& member : view.members) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t e = 0; e < member.row_count; ++e, ++row) {
        const std::size_t obs = member.row_begin + e;
        for (std::size_t t = 0; t <= M; ++t) coeff(row, unknown_index(t, j, M)) = D(obs, t);
        rhs(row, 0) = parse_flat(params, view.observed[obs]).T[j];
      }
    }
  }
  for (const auto& key : keys) {
    for (std::size_t t = 0; t <= M; ++t, ++row) {
      Fel p = f.one();
      for (std::size_t j = 0; j < k; ++j) {
        coeff(row, unknown_index(t, j, M)) = p;
        p = f.mul(p, key.point);
      }
      rhs(row, 0) = key.evals[t];
    }
  }

  RecoveryMeta meta{K, k, M, f.degree(), f.q(), rank(D), view.h_total, view.H.cols()};
  return {std::move(coeff), std::move(rhs), D, meta};
}

bool satisfies(const RecoverySystem& system, const SourceKey& key) {
  const std::size_t M = system.meta.M;
  FfMatrix x(system.coeff.field_ptr(), system.coeff.cols(), 1);
  for (std::size_t t = 0; t <= M; ++t) {
    for (std::size_t j = 0; j < system.meta.k; ++j) x(unknown_index(t, j, M), 0) = key.A(t, j);
  }
  return mat_mul(system.coeff, x) == system.rhs;
}

namespace {

void check_hypothesis(const RecoveryMeta& meta) {
  if (meta.K >= meta.k) {
    throw HypothesisError("counting formula needs K <= k-1 (K = " + std::to_string(meta.K) +
                          ", k = " + std::to_string(meta.k) + ")");
  }
  if (meta.r0 > meta.M + 1) throw HypothesisError("r_0 exceeds M+1");
}

}  // namespace

BigInt predicted_count(const RecoveryMeta& meta) {
  check_hypothesis(meta);
  BigInt q = meta.q;
  return boost::multiprecision::pow(
      q, static_cast<unsigned>(meta.l * (meta.M + 1 - meta.r0) * (meta.k - meta.K)));
}

std::size_t predicted_rank(const RecoveryMeta& meta) {
  check_hypothesis(meta);
  return meta.r0 * meta.k + (meta.M + 1 - meta.r0) * meta.K;
}

SolveCount gauss_count(const RecoverySystem& system) { return solve_count(system.coeff, system.rhs); }

bool within_guard(const RecoveryMeta& meta, std::uint64_t guard) {
  BigInt total = 1;
  for (std::size_t i = 0; i < meta.l * meta.k * (meta.M + 1); ++i) {
    total *= meta.q;
    if (total > guard) return false;
  }
  return true;
}

BigInt brute_force_count(const RecoverySystem& system, std::uint64_t guard) {
  const ExtField& f = system.coeff.field();
  const std::size_t unknowns = system.coeff.cols();
  const std::size_t rows = system.coeff.rows();
  BigInt total = field_power(f, unknowns);
  if (total > guard) {
    throw ResourceError("brute force: " + total.str() + " candidates exceed the guard of " +
                        std::to_string(guard));
  }
  const std::vector<Fel> elems = f.enumerate();
  const std::uint32_t Q = static_cast<std::uint32_t>(elems.size());
  if (Q > 4096) throw ResourceError("brute force: field too large for lookup tables");

  // Element indices and lookup tables: sum[a][b], neg[a], and per nonzero
  // coefficient c the products c * elems[v].
  std::vector<std::uint32_t> sum(static_cast<std::size_t>(Q) * Q), neg(Q);
  for (std::uint32_t a = 0; a < Q; ++a) {
    neg[a] = static_cast<std::uint32_t>(f.index(f.neg(elems[a])));
    for (std::uint32_t b = 0; b < Q; ++b) {
      sum[std::size_t{a} * Q + b] = static_cast<std::uint32_t>(f.index(f.add(elems[a], elems[b])));
    }
  }
  struct Term {
    std::size_t row;
    std::vector<std::uint32_t> product;  // index of coeff * elems[v]
  };
  std::vector<std::vector<Term>> by_column(unknowns);
  for (std::size_t c = 0; c < unknowns; ++c) {
    for (std::size_t r = 0; r < rows; ++r) {
      const Fel& a = system.coeff(r, c);
      if (a.is_zero()) continue;
      Term term{r, std::vector<std::uint32_t>(Q)};
      for (std::uint32_t v = 0; v < Q; ++v) {
        term.product[v] = static_cast<std::uint32_t>(f.index(f.mul(a, elems[v])));
      }
      by_column[c].push_back(std::move(term));
    }
  }
  std::vector<std::uint32_t> target(rows);
  for (std::size_t r = 0; r < rows; ++r) target[r] = static_cast<std::uint32_t>(f.index(system.rhs(r, 0)));

  // Odometer over all assignments, last unknown fastest; each step updates
  // only the rows touched by the changed unknowns.
  std::vector<std::uint32_t> value(unknowns, 0);
  std::vector<std::uint32_t> lhs(rows, 0);  // index 0 is the zero element
  std::size_t mismatches = 0;
  for (std::size_t r = 0; r < rows; ++r) mismatches += target[r] != 0;

  std::uint64_t count = 0;
  while (true) {
    if (mismatches == 0) ++count;
    std::size_t pos = unknowns;
    bool done = true;
    while (pos-- > 0) {
      const std::uint32_t old_v = value[pos];
      const std::uint32_t new_v = old_v + 1 == Q ? 0 : old_v + 1;
      value[pos] = new_v;
      for (const Term& term : by_column[pos]) {
        std::uint32_t& cur = lhs[term.row];
        const bool was_ok = cur == target[term.row];
        const std::uint32_t delta = sum[std::size_t{term.product[new_v]} * Q + neg[term.product[old_v]]];
        cur = sum[std::size_t{cur} * Q + delta];
        const bool is_ok = cur == target[term.row];
        if (was_ok && !is_ok) ++mismatches;
        if (!was_ok && is_ok) --mismatches;
      }
      if (new_v != 0) {
        done = false;
        break;
      }
    }
    if (done) break;
  }
  return BigInt(count);
}

HConditionReport h_condition_report(const RecoveryMeta& meta) {
  return {meta.h_total, meta.M, meta.h_total <= meta.M};
}

}  // namespace ncauth
