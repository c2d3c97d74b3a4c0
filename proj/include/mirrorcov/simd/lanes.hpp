#pragma once

#include <bit>
#include <cmath>
#include <cstdint>

// Lane abstraction for the ensemble kernels. Every operation used by the
// stepping code is IEEE-754 correctly rounded (add, sub, mul, div, sqrt,
// fused multiply-add) or exact (bit casts, shifts, floor, select), so a
// kernel instantiated over any lane type produces bit-identical trajectories.

namespace mirrorcov::simd {

struct ScalarTag {};

template <class Tag>
struct Lanes;

template <>
struct Lanes<ScalarTag> {
  static constexpr int width = 1;
  using D = double;
  using I = std::uint64_t;
  using M = bool;

  static D load(const double* p) { return *p; }
  static void store(double* p, D x) { *p = x; }
  static I load_bits(const std::uint64_t* p) { return *p; }
  static D set1(double x) { return x; }
  static I set1_bits(std::uint64_t x) { return x; }

  static D add(D a, D b) { return a + b; }
  static D sub(D a, D b) { return a - b; }
  static D mul(D a, D b) { return a * b; }
  static D div(D a, D b) { return a / b; }
  static D fma(D a, D b, D c) { return std::fma(a, b, c); }
  static D sqrt(D a) { return std::sqrt(a); }
  static D floor(D a) { return std::floor(a); }
  static D neg(D a) { return -a; }

  static M cmp_gt(D a, D b) { return a > b; }
  static M cmp_eq(D a, D b) { return a == b; }
  static D select(M m, D if_true, D if_false) { return m ? if_true : if_false; }

  static I shr(I a, int n) { return a >> n; }
  static I and_bits(I a, I b) { return a & b; }
  static I or_bits(I a, I b) { return a | b; }
  static D cast_to_double(I a) { return std::bit_cast<double>(a); }
  static I cast_to_bits(D a) { return std::bit_cast<std::uint64_t>(a); }
};

}  // namespace mirrorcov::simd
