#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace doxa {

/// The generator every fuzz path draws from. The sequence is fixed so that
/// another implementation can reproduce a model from its seed:
///   state' = state * 6364136223846793005 + 1442695040888963407 (mod 2^64)
///   output = state' >> 32
///   below(n) = output mod n
class Rng {
 public:
  using Engine = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0>;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint32_t next() { return static_cast<std::uint32_t>(engine_() >> 32); }
  std::size_t below(std::size_t n) { return next() % n; }
  /// Uniform in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return (next() >> 31) != 0; }

  /// Fisher-Yates, drawing below(i + 1) for i from n - 1 down to 1.
  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(out[i - 1], out[below(i)]);
    return out;
  }

 private:
  Engine engine_;
};

/// splitmix64 finalizer over base + index * golden gamma.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace doxa
