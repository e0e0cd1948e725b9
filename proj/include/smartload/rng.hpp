#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace smartload {

/// SplitMix64 finalizer; used to derive independent streams from (seed, index).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

// mt19937_64 output is fully specified by the standard; the std distributions are
// not, so range mapping is done here to keep draws identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi] (Lemire multiply-shift, bias < 2^-40 for small ranges).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto range = static_cast<unsigned __int128>(static_cast<std::uint64_t>(hi - lo) + 1);
    return lo + static_cast<std::int64_t>((static_cast<unsigned __int128>(next()) * range) >> 64);
  }

  /// Standard normal via Box-Muller.
  double normal() {
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  double log_uniform(double lo, double hi) {
    const double v = std::exp(std::log(lo) + uniform01() * (std::log(hi) - std::log(lo)));
    return v < lo ? lo : (v > hi ? hi : v);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace smartload
