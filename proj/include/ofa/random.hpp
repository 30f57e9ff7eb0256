#pragma once

#include <cstdint>
#include <random>

namespace ofa {

struct RngSeed {
  std::uint64_t value = 0;

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// mix(base, index) = splitmix64(base + 0x9E3779B97F4A7C15 * (index + 1)).
// Used for trial seeds and for per-purpose stream splitting.
RngSeed mix_seed(RngSeed base, std::uint64_t index) noexcept;

// Fixed stream ids. A trial seed feeds the workload generator through
// kWorkloadStream and every policy run through kPolicyStream, so all
// policies in a trial see the same sequence and an independent coin supply.
inline constexpr std::uint64_t kWorkloadStream = 0;
inline constexpr std::uint64_t kPolicyStream = 1;

// Random stream with platform-independent derived draws. The std::
// distributions are implementation-defined, so the helpers below only touch
// the raw engine output.
class RngStream {
 public:
  explicit RngStream(RngSeed seed) : engine_(seed.value) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  // Standard normal draw (Box-Muller, one variate per call).
  double standard_normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace ofa
