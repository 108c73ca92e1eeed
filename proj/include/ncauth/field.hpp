#pragma once

// Arithmetic in F_q (q prime) and its degree-l extension F_{q^l}.
//
// Elements are coordinate vectors in the power basis 1, w, ..., w^{l-1} of
// F_q[w]/(f(w)), where f is the lexicographically smallest monic irreducible
// of degree l (coefficients compared constant term first). The coordinate map
// is the fixed F_q-linear isomorphism F_q^l <-> F_{q^l}.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "ncauth/rng.hpp"

namespace ncauth {

inline constexpr std::size_t kMaxDegree = 16;
inline constexpr std::uint32_t kMaxPrime = 1u << 16;
inline constexpr std::uint64_t kEnumerationLimit = 1ull << 20;

/// Element of F_{q^l}: exactly l coordinates, each reduced mod q.
class Fel {
 public:
  Fel() = default;
  explicit Fel(std::span<const std::uint32_t> coords);

  std::size_t size() const noexcept { return size_; }
  std::uint32_t operator[](std::size_t i) const { return c_[i]; }
  std::uint32_t& operator[](std::size_t i) { return c_[i]; }
  std::span<const std::uint32_t> coords() const noexcept { return {c_.data(), size_}; }

  bool is_zero() const noexcept;

  friend bool operator==(const Fel&, const Fel&) = default;
  friend auto operator<=>(const Fel&, const Fel&) = default;

 private:
  std::array<std::uint32_t, kMaxDegree> c_{};
  std::size_t size_ = 0;
};

class ExtField {
 public:
  /// Builds F_{q^l}. Throws ParameterError if q is not a prime <= 2^16 or l is
  /// outside [1, 16].
  ExtField(std::uint32_t q, std::size_t l);

  std::uint32_t q() const noexcept { return q_; }
  std::size_t degree() const noexcept { return l_; }
  /// l+1 coefficients, constant term first, leading coefficient 1.
  std::span<const std::uint32_t> modulus() const noexcept { return modulus_; }

  /// q^l; throws ResourceError if it does not fit in 64 bits.
  std::uint64_t order() const;

  Fel zero() const;
  Fel one() const;
  /// Image of c (mod q) under F_q -> F_{q^l}.
  Fel embed(std::uint64_t c) const;
  /// The class of w, i.e. the coordinate vector (0, 1, 0, ...). For l = 1 this
  /// is the zero element.
  Fel generator() const;

  Fel add(const Fel& a, const Fel& b) const;
  Fel sub(const Fel& a, const Fel& b) const;
  Fel neg(const Fel& a) const;
  Fel mul(const Fel& a, const Fel& b) const;
  /// alpha * a for alpha in F_q.
  Fel scale(std::uint32_t alpha, const Fel& a) const;
  /// Throws DivisionByZero on zero.
  Fel inv(const Fel& a) const;
  Fel pow(const Fel& a, std::uint64_t e) const;
  /// a^{q^i}.
  Fel frobenius(const Fel& a, std::uint64_t i = 1) const;

  bool in_base_field(const Fel& a) const;

  std::vector<std::uint32_t> to_vector(const Fel& a) const;
  /// Throws ShapeError unless the input has exactly l coordinates; reduces
  /// each coordinate mod q.
  Fel to_field(std::span<const std::uint32_t> v) const;

  /// Mixed-radix index of a, coordinate 0 most significant. Inverse of
  /// from_index; both require q^l to fit in 64 bits.
  std::uint64_t index(const Fel& a) const;
  Fel from_index(std::uint64_t idx) const;

  /// All q^l elements in lexicographic coordinate order, starting with 0.
  /// Throws ResourceError when q^l exceeds 2^20.
  std::vector<Fel> enumerate() const;

  Fel random(Rng& rng) const;
  Fel random_nonzero(Rng& rng) const;

  /// Throws ShapeError/ParameterError if a is not a valid element here.
  void validate(const Fel& a) const;

  std::uint32_t add_base(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>((std::uint64_t{a} + b) % q_);
  }
  std::uint32_t mul_base(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>((std::uint64_t{a} * b) % q_);
  }
  std::uint32_t inv_base(std::uint32_t a) const;

  friend bool operator==(const ExtField& a, const ExtField& b) noexcept {
    return a.q_ == b.q_ && a.l_ == b.l_;
  }

 private:
  std::uint32_t q_;
  std::size_t l_;
  std::vector<std::uint32_t> modulus_;
};

using FieldPtr = std::shared_ptr<const ExtField>;

/// Shared handle to F_{q^l}; same (q, l) always yields the same modulus.
FieldPtr make_field(std::uint32_t q, std::size_t l);

bool is_prime(std::uint64_t n);

enum class ArithOp { kAdd, kSub, kMul, kInv, kPow };

/// Dispatcher over the field operations; `b` is an element for add/sub/mul,
/// an exponent for pow, and ignored for inv.
Fel arith(const ExtField& f, ArithOp op, const Fel& a, const std::variant<Fel, std::uint64_t>& b);

/// Polynomial helpers over F_q, coefficients constant term first. Exposed for
/// the modulus search and for tests.
namespace poly {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& p);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t q);
Poly mod(Poly a, const Poly& m, std::uint32_t q);
/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b, std::uint32_t q);
Poly gcd(Poly a, Poly b, std::uint32_t q);
/// Ben-Or irreducibility test for a monic polynomial.
bool is_irreducible(const Poly& f, std::uint32_t q);

}  // namespace poly

}  // namespace ncauth
