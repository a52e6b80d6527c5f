#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include "mm1040/money.hpp"

namespace mm1040 {

// Deterministic RNG wrapper. The raw std::mt19937_64 stream is bit-exact
// across standard libraries; bounded draws go through Lemire's multiply-shift
// so results do not depend on std::uniform_int_distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform over [0, n), n >= 1
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("empty draw range");
    using u128 = unsigned __int128;
    std::uint64_t x = next_u64();
    u128 m = static_cast<u128>(x) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = -n % n;
      while (lo < threshold) {
        x = next_u64();
        m = static_cast<u128>(x) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // uniform integer in [lo, hi], inclusive
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("inverted draw range");
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return (next_u64() & 1u) != 0; }

  // uniform whole-dollar amount in [lo, hi] (bounds in cents)
  Cents whole_dollars(Cents lo, Cents hi) {
    const std::int64_t d = range(lo / kCentsPerDollar, hi / kCentsPerDollar);
    return d * kCentsPerDollar;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mm1040
