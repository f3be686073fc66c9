#pragma once

// Counter-based random numbers (Philox4x32-10). A stream is addressed by
// (key, stream, lane); any block of any stream can be computed directly, so
// work can be split across threads without changing the numbers drawn.

#include <array>
#include <cstdint>
#include <limits>

namespace kalpha {

using PhiloxBlock = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxBlock philox4x32(PhiloxBlock counter, PhiloxKey key);

std::uint64_t splitmix64(std::uint64_t x);

class CounterRng {
 public:
  using result_type = std::uint32_t;

  CounterRng(std::uint64_t key, std::uint64_t stream, std::uint32_t lane = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();
  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1).
  double uniform_open();
  // Uniform integer in [0, bound), bound > 0, unbiased (Lemire).
  std::uint64_t below(std::uint64_t bound);
  // Standard normal deviate via the Marsaglia polar method.
  double normal();

 private:
  void refill();

  PhiloxKey key_;
  PhiloxBlock counter_;
  PhiloxBlock buffer_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace kalpha
