#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ncauth {

/// Seeded pseudorandom stream with named substreams.
///
/// Uniform integers are drawn by rejection sampling directly on the
/// mt19937_64 output so that a given seed produces the same values with any
/// standard library (std::uniform_int_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next() { return engine_(); }

  /// Uniform value in [0, bound). bound must be nonzero.
  std::uint64_t uniform(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % bound;
  }

  /// Independent stream derived from this stream's seed and a name. Does not
  /// advance this stream.
  Rng substream(std::string_view name) const {
    return Rng(splitmix(seed_ ^ splitmix(fnv1a(name))));
  }

  Rng substream(std::uint64_t index) const {
    return Rng(splitmix(seed_ + 0x9e3779b97f4a7c15ULL * (index + 1)));
  }

 private:
  static constexpr std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace ncauth
