#include "photostat/rng.hpp"

#include <cmath>

namespace photostat {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed + kGolden) ^ mix64(stream * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull));
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(derive_stream(seed, stream)) {}

CounterRng::result_type CounterRng::operator()() { return mix64(key_ + (++ctr_) * kGolden); }

double CounterRng::uniform() { return ((*this)() >> 11) * 0x1.0p-53 + 0x1.0p-54; }

double CounterRng::exponential() { return -std::log(uniform()); }

}  // namespace photostat
