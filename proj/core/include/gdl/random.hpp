// Deterministic pseudorandom stream.
//
// std::mt19937_64 output is fixed by the standard but the distribution
// classes are not, so bounded draws are done here to keep seeds portable.
#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace gdl {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  bool coin() { return (engine_() >> 63) != 0; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Mixes a base seed with a stream index so parallel samples stay independent.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace gdl
