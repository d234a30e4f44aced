#ifndef SPGOF_RNG_HPP
#define SPGOF_RNG_HPP

#include <array>
#include <cstdint>

namespace spgof {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3").
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// SplitMix64 finaliser, used to derive stream keys.
std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based random stream identified by (seed, stream index).
///
/// The output depends only on those two numbers and on how many values have
/// been drawn, never on the thread that draws them. substream(k) derives an
/// independent child stream, e.g. one per simulated pattern of a test.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index);

  RngStream substream(std::uint64_t k) const;

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) {
    const double x = lo + (hi - lo) * uniform();
    return x < hi ? x : hi;
  }
  /// Uniform integer in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  std::uint64_t poisson(double mean);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  explicit RngStream(std::uint64_t key);

  std::uint64_t key_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

}  // namespace spgof

#endif  // SPGOF_RNG_HPP
