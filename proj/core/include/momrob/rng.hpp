#ifndef MOMROB_RNG_HPP_
#define MOMROB_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace momrob {

struct RngSeed {
  std::uint64_t value = 0;
  friend bool operator==(RngSeed, RngSeed) = default;
};

/// Child seed for an independent stream: splitmix64(master ^ splitmix64(stream)).
/// Used for per-run seeds in experiments and per-step partition seeds in
/// descent, so any single run or step can be replayed in isolation.
RngSeed derive_seed(RngSeed master, std::uint64_t stream);

std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard <random> distributions are not portable across
/// library implementations, so every distribution used here is implemented
/// on top of the raw 64-bit output:
///   - uniform():       (next >> 11) * 2^-53, in [0, 1)
///   - uniform_index(): rejection sampling on the top bits (unbiased)
///   - normal():        Box-Muller, second variate cached
///   - shuffle():       Fisher-Yates from the back
class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  std::size_t uniform_index(std::size_t n);
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[uniform_index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace momrob

#endif  // MOMROB_RNG_HPP_
