#pragma once

#include <cmath>
#include <cstdint>

namespace cltlab {

// Splitting rule: replicate r is generated by an xoshiro256** instance whose
// four state words are words 4r, 4r+1, 4r+2, 4r+3 of the splitmix64 output
// sequence seeded with the experiment seed. splitmix64 state advances by a
// fixed increment per word, so stream r is reachable in O(1) and replicate
// results do not depend on thread scheduling.
inline constexpr const char* rng_algorithm_id = "xoshiro256** / splitmix64 block seeding (4 words per replicate)";

class splitmix64 {
 public:
  explicit splitmix64(std::uint64_t seed, std::uint64_t start_word = 0)
      : state_(seed + start_word * increment) {}

  std::uint64_t next() {
    state_ += increment;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t increment = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
};

class xoshiro256 {
 public:
  xoshiro256(std::uint64_t seed, std::uint64_t stream) {
    splitmix64 sm(seed, stream * 4);
    s_[0] = sm.next();
    s_[1] = sm.next();
    s_[2] = sm.next();
    s_[3] = sm.next();
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9e3779b97f4a7c15ULL;
  }

  std::uint64_t next() {
    std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // [0, 1)
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // (0, 1]
  double uniform01_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  // Standard normal via Box-Muller; consumes two words per draw.
  double gaussian() {
    double u1 = uniform01_pos();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4];
};

}  // namespace cltlab
