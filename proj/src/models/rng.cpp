#include "spgof/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace spgof {

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  constexpr std::uint64_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
  constexpr std::uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += w0;
      key[1] += w1;
    }
    const std::uint64_t p0 = m0 * ctr[0];
    const std::uint64_t p1 = m1 * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
  }
  return ctr;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_index)
    : key_(splitmix64(splitmix64(seed) ^ stream_index)) {}

RngStream::RngStream(std::uint64_t key) : key_(key) {}

RngStream RngStream::substream(std::uint64_t k) const { return RngStream(splitmix64(key_ + splitmix64(k + 1))); }

std::uint64_t RngStream::next_u64() {
  if (used_ >= 4) {
    buffer_ = philox4x32({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32), 0u, 0u},
                         {static_cast<std::uint32_t>(key_), static_cast<std::uint32_t>(key_ >> 32)});
    ++block_;
    used_ = 0;
  }
  const std::uint64_t lo = buffer_[static_cast<std::size_t>(used_)];
  const std::uint64_t hi = buffer_[static_cast<std::size_t>(used_ + 1)];
  used_ += 2;
  return (hi << 32) | lo;
}

double RngStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("below(0)");
  // Rejection keeps the result exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x < limit) return x % n;
  }
}

std::uint64_t RngStream::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw std::invalid_argument("poisson mean must be finite and >= 0");
  // Sum of independent Poisson variates with mean at most 10, each drawn by
  // multiplying uniforms (Knuth); avoids any dependence on lgamma.
  std::uint64_t total = 0;
  while (mean > 0.0) {
    const double chunk = std::min(mean, 10.0);
    mean -= chunk;
    const double limit = std::exp(-chunk);
    double product = uniform();
    while (product >= limit) {
      ++total;
      product *= uniform();
    }
  }
  return total;
}

}  // namespace spgof
