#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace eeg {

/// SplitMix64 finalizer; used only for deriving seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of replica `replica` within experiment stream `tag` under `master`.
///
/// Splitting rule:
///   h = splitmix64(master)
///   h = splitmix64(h ^ splitmix64(tag + 1))
///   seed = splitmix64(h + replica)
/// Replica seeds depend only on (master, tag, replica), never on scheduling.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t tag,
                          std::uint64_t replica) noexcept;

/// Replica-local random stream. Conversions from raw 64-bit output to
/// doubles are done here rather than via <random> distributions so that
/// results are identical across standard library implementations.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t operator()() { return engine_(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Exponential with the given rate (> 0).
  double exponential(double rate);

  /// Unit exponential.
  double exponential() { return exponential(1.0); }

  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace eeg
