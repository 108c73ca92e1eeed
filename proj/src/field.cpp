#include "ncauth/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "ncauth/errors.hpp"

namespace ncauth {

Fel::Fel(std::span<const std::uint32_t> coords) : size_(coords.size()) {
  if (coords.size() > kMaxDegree) {
    throw ShapeError("element has " + std::to_string(coords.size()) + " coordinates, max " +
                     std::to_string(kMaxDegree));
  }
  std::copy(coords.begin(), coords.end(), c_.begin());
}

bool Fel::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.begin() + size_, [](std::uint32_t v) { return v == 0; });
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace poly {

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t q) {
  // q is prime: a^{q-2}.
  std::uint64_t r = 1, b = a % q, e = q - 2;
  while (e) {
    if (e & 1) r = r * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::size_t deg(const Poly& p) { return p.empty() ? 0 : p.size() - 1; }

Poly sub(Poly a, const Poly& b, std::uint32_t q) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + q - b[i]) % q;
  trim(a);
  return a;
}

Poly mul(const Poly& a, const Poly& b, std::uint32_t q) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % q);
    }
  }
  trim(r);
  return r;
}

Poly powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t q) {
  Poly r{1};
  base = mod(std::move(base), m, q);
  while (e) {
    if (e & 1) r = mulmod(r, base, m, q);
    base = mulmod(base, base, m, q);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::pair<Poly, Poly> divmod(Poly a, const Poly& b, std::uint32_t q) {
  trim(a);
  if (a.size() < b.size()) return {Poly{}, a};
  const std::uint32_t lead_inv = inv_mod(b.back(), q);
  Poly quot(a.size() - b.size() + 1, 0);
  for (std::size_t i = a.size(); i-- >= b.size();) {
    const std::uint64_t c = std::uint64_t{a[i]} * lead_inv % q;
    if (c == 0) continue;
    const std::size_t shift = i + 1 - b.size();
    quot[shift] = static_cast<std::uint32_t>(c);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::uint64_t sub = c * b[j] % q;
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + q - sub) % q);
    }
  }
  trim(a);
  trim(quot);
  return {quot, a};
}

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly mod(Poly a, const Poly& m, std::uint32_t q) { return divmod(std::move(a), m, q).second; }

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t q) {
  return mod(mul(a, b, q), m, q);
}

Poly gcd(Poly a, Poly b, std::uint32_t q) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, q);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint32_t li = inv_mod(a.back(), q);
    for (auto& c : a) c = static_cast<std::uint32_t>(std::uint64_t{c} * li % q);
  }
  return a;
}

bool is_irreducible(const Poly& f, std::uint32_t q) {
  const std::size_t n = deg(f);
  if (n == 0) return false;
  if (n == 1) return true;
  const Poly x{0, 1};
  Poly h = x;
  for (std::size_t i = 1; i <= n / 2; ++i) {
    h = powmod(h, q, f, q);
    const Poly g = gcd(sub(h, x, q), f, q);
    if (deg(g) > 0) return false;
  }
  return true;
}

}  // namespace poly

namespace {

poly::Poly find_modulus(std::uint32_t q, std::size_t l) {
  // Odometer over (c_0, ..., c_{l-1}) with c_0 most significant.
  poly::Poly cand(l + 1, 0);
  cand[l] = 1;
  while (true) {
    if ((l == 1 || cand[0] != 0) && poly::is_irreducible(cand, q)) return cand;
    std::size_t pos = l;
    while (pos > 0) {
      --pos;
      if (++cand[pos] < q) break;
      cand[pos] = 0;
      if (pos == 0) throw InternalError("no irreducible polynomial found");
    }
  }
}

}  // namespace

ExtField::ExtField(std::uint32_t q, std::size_t l) : q_(q), l_(l) {
  if (q > kMaxPrime || !is_prime(q)) {
    throw ParameterError("q = " + std::to_string(q) + " is not a prime <= 65536");
  }
  if (l < 1 || l > kMaxDegree) {
    throw ParameterError("extension degree l = " + std::to_string(l) + " outside [1, 16]");
  }
  modulus_ = find_modulus(q, l);
}

std::uint64_t ExtField::order() const {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < l_; ++i) {
    if (r > UINT64_MAX / q_) throw ResourceError("field order q^l exceeds 64 bits");
    r *= q_;
  }
  return r;
}

Fel ExtField::zero() const {
  std::array<std::uint32_t, kMaxDegree> z{};
  return Fel(std::span(z.data(), l_));
}

Fel ExtField::one() const { return embed(1); }

Fel ExtField::embed(std::uint64_t c) const {
  Fel r = zero();
  r[0] = static_cast<std::uint32_t>(c % q_);
  return r;
}

Fel ExtField::generator() const {
  Fel r = zero();
  if (l_ > 1) r[1] = 1;
  return r;
}

Fel ExtField::add(const Fel& a, const Fel& b) const {
  Fel r = zero();
  for (std::size_t i = 0; i < l_; ++i) r[i] = add_base(a[i], b[i]);
  return r;
}

Fel ExtField::sub(const Fel& a, const Fel& b) const {
  Fel r = zero();
  for (std::size_t i = 0; i < l_; ++i) r[i] = add_base(a[i], q_ - b[i]);
  return r;
}

Fel ExtField::neg(const Fel& a) const { return sub(zero(), a); }

Fel ExtField::scale(std::uint32_t alpha, const Fel& a) const {
  Fel r = zero();
  for (std::size_t i = 0; i < l_; ++i) r[i] = mul_base(alpha % q_, a[i]);
  return r;
}

Fel ExtField::mul(const Fel& a, const Fel& b) const {
  std::array<std::uint64_t, 2 * kMaxDegree> prod{};
  for (std::size_t i = 0; i < l_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < l_; ++j) {
      prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % q_;
    }
  }
  // Reduce with the monic modulus: w^l = -(m_0 + ... + m_{l-1} w^{l-1}).
  for (std::size_t d = 2 * l_ - 1; d-- > l_;) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (std::size_t i = 0; i < l_; ++i) {
      prod[d - l_ + i] = (prod[d - l_ + i] + q_ - c * modulus_[i] % q_) % q_;
    }
  }
  Fel r = zero();
  for (std::size_t i = 0; i < l_; ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
  return r;
}

std::uint32_t ExtField::inv_base(std::uint32_t a) const {
  if (a % q_ == 0) throw DivisionByZero("inverse of zero in F_q");
  std::uint64_t r = 1, b = a % q_, e = q_ - 2;
  while (e) {
    if (e & 1) r = r * b % q_;
    b = b * b % q_;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

Fel ExtField::inv(const Fel& a) const {
  if (a.is_zero()) throw DivisionByZero("inverse of zero field element");
  if (l_ == 1) return embed(inv_base(a[0]));
  // Extended Euclid on (modulus, a): track s with s * a = r (mod modulus).
  using poly::Poly;
  Poly r0(modulus_.begin(), modulus_.end());
  Poly r1(a.coords().begin(), a.coords().end());
  poly::trim(r1);
  Poly s0{}, s1{1};
  while (r1.size() > 1) {
    auto [quot, rem] = poly::divmod(r0, r1, q_);
    // s2 = s0 - quot * s1
    Poly prod(quot.size() + s1.size(), 0);
    for (std::size_t i = 0; i < quot.size(); ++i) {
      for (std::size_t j = 0; j < s1.size(); ++j) {
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{quot[i]} * s1[j]) % q_);
      }
    }
    Poly s2 = s0;
    if (s2.size() < prod.size()) s2.resize(prod.size(), 0);
    for (std::size_t i = 0; i < prod.size(); ++i) s2[i] = (s2[i] + q_ - prod[i]) % q_;
    poly::trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw InternalError("modulus is not irreducible");
  const std::uint32_t ci = inv_base(r1[0]);
  Fel r = zero();
  const Poly s = poly::mod(s1, Poly(modulus_.begin(), modulus_.end()), q_);
  for (std::size_t i = 0; i < s.size(); ++i) r[i] = mul_base(s[i], ci);
  return r;
}

Fel ExtField::pow(const Fel& a, std::uint64_t e) const {
  Fel r = one();
  Fel b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Fel ExtField::frobenius(const Fel& a, std::uint64_t i) const {
  Fel r = a;
  for (std::uint64_t t = 0; t < i % l_; ++t) r = pow(r, q_);
  return r;
}

bool ExtField::in_base_field(const Fel& a) const {
  for (std::size_t i = 1; i < l_; ++i) {
    if (a[i] != 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> ExtField::to_vector(const Fel& a) const {
  validate(a);
  return {a.coords().begin(), a.coords().end()};
}

Fel ExtField::to_field(std::span<const std::uint32_t> v) const {
  if (v.size() != l_) {
    throw ShapeError("expected " + std::to_string(l_) + " coordinates, got " +
                     std::to_string(v.size()));
  }
  Fel r = zero();
  for (std::size_t i = 0; i < l_; ++i) r[i] = v[i] % q_;
  return r;
}

std::uint64_t ExtField::index(const Fel& a) const {
  (void)order();
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < l_; ++i) idx = idx * q_ + a[i];
  return idx;
}

Fel ExtField::from_index(std::uint64_t idx) const {
  if (idx >= order()) throw ParameterError("element index out of range");
  Fel r = zero();
  for (std::size_t i = l_; i-- > 0;) {
    r[i] = static_cast<std::uint32_t>(idx % q_);
    idx /= q_;
  }
  return r;
}

std::vector<Fel> ExtField::enumerate() const {
  std::uint64_t n = 0;
  try {
    n = order();
  } catch (const ResourceError&) {
    n = UINT64_MAX;
  }
  if (n > kEnumerationLimit) throw ResourceError("field too large to enumerate (q^l > 2^20)");
  std::vector<Fel> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(from_index(i));
  return out;
}

Fel ExtField::random(Rng& rng) const {
  Fel r = zero();
  for (std::size_t i = 0; i < l_; ++i) r[i] = static_cast<std::uint32_t>(rng.uniform(q_));
  return r;
}

Fel ExtField::random_nonzero(Rng& rng) const {
  Fel r = random(rng);
  while (r.is_zero()) r = random(rng);
  return r;
}

void ExtField::validate(const Fel& a) const {
  if (a.size() != l_) {
    throw ShapeError("element has " + std::to_string(a.size()) + " coordinates, field degree is " +
                     std::to_string(l_));
  }
  for (std::size_t i = 0; i < l_; ++i) {
    if (a[i] >= q_) throw ParameterError("coordinate not reduced mod q");
  }
}

FieldPtr make_field(std::uint32_t q, std::size_t l) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::size_t>, FieldPtr> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{q, l}];
  if (!slot) {
    try {
      slot = std::make_shared<const ExtField>(q, l);
    } catch (...) {
      cache.erase({q, l});
      throw;
    }
  }
  return slot;
}

Fel arith(const ExtField& f, ArithOp op, const Fel& a, const std::variant<Fel, std::uint64_t>& b) {
  f.validate(a);
  auto elem = [&]() -> const Fel& {
    const Fel* p = std::get_if<Fel>(&b);
    if (!p) throw ParameterError("operation requires a field element operand");
    f.validate(*p);
    return *p;
  };
  switch (op) {
    case ArithOp::kAdd: return f.add(a, elem());
    case ArithOp::kSub: return f.sub(a, elem());
    case ArithOp::kMul: return f.mul(a, elem());
    case ArithOp::kInv: return f.inv(a);
    case ArithOp::kPow: {
      const auto* e = std::get_if<std::uint64_t>(&b);
      if (!e) throw ParameterError("pow requires an exponent operand");
      return f.pow(a, *e);
    }
  }
  throw InternalError("unknown arithmetic op");
}

}  // namespace ncauth
