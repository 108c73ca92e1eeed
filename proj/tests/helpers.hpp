#pragma once

#include <algorithm>
#include <vector>

#include "ncauth/scheme.hpp"

namespace testing_helpers {

using namespace ncauth;

inline std::vector<Fel> distinct_points(const ExtField& f, std::size_t V, Rng& rng) {
  std::vector<Fel> pts;
  while (pts.size() < V) {
    const Fel x = f.random_nonzero(rng);
    if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
  }
  return pts;
}

/// V is capped at q^l - 1, the number of available nonzero points.
inline SystemParams random_params(std::uint32_t q, std::size_t l, std::size_t k, std::size_t M,
                                  std::size_t n, std::size_t V, Rng& rng) {
  const FieldPtr f = make_field(q, l);
  V = std::min<std::uint64_t>(V, f->order() - 1);
  SystemParams p{f, k, M, n, distinct_points(*f, V, rng), n > M};
  p.validate();
  return p;
}

inline std::vector<Fel> random_messages(const ExtField& f, std::size_t n, Rng& rng) {
  std::vector<Fel> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(f.random(rng));
  return out;
}

inline std::vector<std::uint32_t> random_sum_one(std::uint32_t q, std::size_t n, Rng& rng) {
  std::vector<std::uint32_t> a(n);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    a[i] = static_cast<std::uint32_t>(rng.uniform(q));
    sum += a[i];
  }
  a[n - 1] = static_cast<std::uint32_t>((1 + q - sum % q) % q);
  return a;
}

}  // namespace testing_helpers
