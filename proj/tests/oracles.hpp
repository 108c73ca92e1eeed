#pragma once

// Slow, independent reference implementations used only by the tests. Nothing
// here calls into the library's arithmetic.

#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using Poly = std::vector<std::int64_t>;  // constant term first

inline std::int64_t md(std::int64_t a, std::int64_t q) { return ((a % q) + q) % q; }

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Remainder of a by monic b, by schoolbook long division.
inline Poly rem(Poly a, const Poly& b, std::int64_t q) {
  for (auto& c : a) c = md(c, q);
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const std::int64_t lead = a.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = md(a[shift + i] - lead * b[i], q);
    trim(a);
  }
  return a;
}

/// Every monic polynomial of degree d over F_q, in the library's order
/// (constant term compared first).
inline std::vector<Poly> monic_of_degree(std::int64_t q, std::size_t d) {
  std::vector<Poly> out;
  std::int64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= q;
  for (std::int64_t idx = 0; idx < total; ++idx) {
    Poly p(d + 1, 0);
    std::int64_t x = idx;
    for (std::size_t i = d; i-- > 0;) {  // constant term is the most significant digit
      p[i] = x % q;
      x /= q;
    }
    p[d] = 1;
    out.push_back(p);
  }
  return out;
}

/// Trial division against all monic polynomials of degree 1..deg/2.
inline bool irreducible_by_trial(const Poly& f, std::int64_t q) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    for (const Poly& g : monic_of_degree(q, d)) {
      if (rem(f, g, q).empty()) return false;
    }
  }
  return true;
}

inline Poly smallest_irreducible(std::int64_t q, std::size_t l) {
  for (const Poly& p : monic_of_degree(q, l)) {
    if (irreducible_by_trial(p, q)) return p;
  }
  return {};
}

/// Naive F_q[w]/(f) arithmetic on coordinate vectors.
struct NaiveField {
  std::int64_t q;
  Poly f;  // monic, degree l
  std::size_t l() const { return f.size() - 1; }

  std::vector<std::int64_t> mul(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const {
    Poly prod(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
    }
    Poly r = rem(prod, f, q);
    r.resize(l(), 0);
    return r;
  }
  std::vector<std::int64_t> add(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const {
    std::vector<std::int64_t> r(l());
    for (std::size_t i = 0; i < l(); ++i) r[i] = md(a[i] + b[i], q);
    return r;
  }
  std::vector<std::int64_t> pow(std::vector<std::int64_t> a, std::uint64_t e) const {
    std::vector<std::int64_t> r(l(), 0);
    r[0] = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
};

/// Calls visit on every vector in {0..Q-1}^len (last coordinate fastest).
inline void for_each_tuple(std::size_t len, std::uint32_t Q,
                           const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
  std::vector<std::uint32_t> v(len, 0);
  while (true) {
    visit(v);
    std::size_t pos = len;
    while (pos > 0) {
      --pos;
      if (++v[pos] < Q) break;
      v[pos] = 0;
      if (pos == 0) return;
    }
    if (len == 0) return;
  }
}

}  // namespace oracle
