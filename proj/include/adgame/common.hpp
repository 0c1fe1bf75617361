#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace adgame {

/// Malformed or out-of-contract input: bad graph, index, file, or topology
/// class a routine does not support.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A solver refused to start because its enumeration guard would be exceeded.
struct LimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Locale-independent float formatting, default 12 significant digits.
inline std::string format_double(double v, int digits = 12) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

/// splitmix64. 64-bit state, fixed update rule, so seeded runs reproduce
/// bit-for-bit on every platform (std::uniform_int_distribution does not).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound), bound >= 1. Rejection sampling keeps the
  /// distribution exactly uniform.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw InvalidInput("SplitMix64::below: bound must be >= 1");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace adgame
