#include "eeg/rng.hpp"

#include <cmath>

#include "eeg/errors.hpp"

namespace eeg {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t tag,
                          std::uint64_t replica) noexcept {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ splitmix64(tag + 1));
  return splitmix64(h + replica);
}

double Stream::exponential(double rate) {
  if (!(rate > 0.0)) throw InputError("exponential rate must be positive");
  // 1 - u lies in (0, 1], so the log is finite.
  return -std::log1p(-uniform()) / rate;
}

}  // namespace eeg
