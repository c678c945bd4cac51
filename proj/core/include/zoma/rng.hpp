#pragma once

#include <cstdint>
#include <random>

namespace zoma {

/// Independent named random streams derived from one master seed.
enum class Stream : std::uint64_t {
  kChannel = 1,
  kNoise = 2,
  kDirection = 3,
  kInitCandidates = 4,
  kTraining = 5,
};

/// SplitMix64 finalizer; used to decorrelate derived seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for stream `stream` of trial `trial`, sub-index `sub` (e.g. a method
/// or sweep point), under `master`. Distinct tuples give unrelated seeds.
constexpr std::uint64_t derive_seed(std::uint64_t master, Stream stream,
                                    std::uint64_t trial = 0,
                                    std::uint64_t sub = 0) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ static_cast<std::uint64_t>(stream));
  h = mix64(h ^ trial);
  h = mix64(h ^ sub);
  return h;
}

/// A deterministic pseudorandom stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  double normal(double mean, double stddev) {
    return std::normal_distribution<double>(mean, stddev)(engine_);
  }

  /// Uniform integer in [0, n).
  int index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(engine_); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace zoma
