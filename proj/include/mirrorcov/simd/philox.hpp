#pragma once

#include <cstdint>

namespace mirrorcov::simd {

// Philox-4x32, 10 rounds. Counter-based: the stream is a pure function of
// (key, counter), so any trajectory/step pair can be generated in isolation
// and the draw order never depends on lane width or thread count. Kept
// scalar on purpose; integer code is bit-identical everywhere.
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  struct Block {
    std::uint32_t x[4];
    std::uint64_t lo64() const {
      return static_cast<std::uint64_t>(x[1]) << 32 | x[0];
    }
    std::uint64_t hi64() const {
      return static_cast<std::uint64_t>(x[3]) << 32 | x[2];
    }
  };

  static Block generate(const std::uint32_t counter[4], const std::uint32_t key[2]) {
    std::uint32_t c0 = counter[0], c1 = counter[1], c2 = counter[2], c3 = counter[3];
    std::uint32_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
      std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c0;
      std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c2;
      std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      std::uint32_t n0 = hi1 ^ c1 ^ k0;
      std::uint32_t n1 = lo1;
      std::uint32_t n2 = hi0 ^ c3 ^ k1;
      std::uint32_t n3 = lo0;
      c0 = n0; c1 = n1; c2 = n2; c3 = n3;
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    return {{c0, c1, c2, c3}};
  }

  // Draw layout used by the ensemble: counter = (step lo, step hi,
  // trajectory, stream), key = seed. Stream 0 is the per-step dynamics
  // noise, stream 1 the initial-state draw.
  static Block at(std::uint64_t seed, std::uint64_t step, std::uint32_t trajectory,
                  std::uint32_t stream) {
    std::uint32_t counter[4] = {static_cast<std::uint32_t>(step),
                                static_cast<std::uint32_t>(step >> 32), trajectory, stream};
    std::uint32_t key[2] = {static_cast<std::uint32_t>(seed),
                            static_cast<std::uint32_t>(seed >> 32)};
    return generate(counter, key);
  }
};

}  // namespace mirrorcov::simd
