#pragma once

#include <cstdint>
#include <limits>

namespace photostat {

// Counter-based generator: output k is a SplitMix64 finalizer of key + k * golden.
// Streams derived from (seed, stream) are disjoint with overwhelming probability.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform on (0, 1), never exactly 0 or 1.
  double uniform();
  // Exp(1) variate.
  double exponential();

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return ctr_; }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

std::uint64_t mix64(std::uint64_t z);
// Key for a named substream of a master seed.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream);

}  // namespace photostat
