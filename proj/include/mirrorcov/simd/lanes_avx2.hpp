#pragma once

// AVX2 lane specialization. Include only from translation units compiled
// with -mavx2 -mfma.

#include <immintrin.h>

#include "mirrorcov/simd/lanes.hpp"

namespace mirrorcov::simd {

struct Avx2Tag {};

template <>
struct Lanes<Avx2Tag> {
  static constexpr int width = 4;
  using D = __m256d;
  using I = __m256i;
  using M = __m256d;

  static D load(const double* p) { return _mm256_loadu_pd(p); }
  static void store(double* p, D x) { _mm256_storeu_pd(p, x); }
  static I load_bits(const std::uint64_t* p) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
  }
  static D set1(double x) { return _mm256_set1_pd(x); }
  static I set1_bits(std::uint64_t x) {
    return _mm256_set1_epi64x(static_cast<long long>(x));
  }

  static D add(D a, D b) { return _mm256_add_pd(a, b); }
  static D sub(D a, D b) { return _mm256_sub_pd(a, b); }
  static D mul(D a, D b) { return _mm256_mul_pd(a, b); }
  static D div(D a, D b) { return _mm256_div_pd(a, b); }
  static D fma(D a, D b, D c) { return _mm256_fmadd_pd(a, b, c); }
  static D sqrt(D a) { return _mm256_sqrt_pd(a); }
  static D floor(D a) { return _mm256_floor_pd(a); }
  static D neg(D a) { return _mm256_xor_pd(a, _mm256_set1_pd(-0.0)); }

  static M cmp_gt(D a, D b) { return _mm256_cmp_pd(a, b, _CMP_GT_OQ); }
  static M cmp_eq(D a, D b) { return _mm256_cmp_pd(a, b, _CMP_EQ_OQ); }
  static D select(M m, D if_true, D if_false) {
    return _mm256_blendv_pd(if_false, if_true, m);
  }

  static I shr(I a, int n) { return _mm256_srli_epi64(a, n); }
  static I and_bits(I a, I b) { return _mm256_and_si256(a, b); }
  static I or_bits(I a, I b) { return _mm256_or_si256(a, b); }
  static D cast_to_double(I a) { return _mm256_castsi256_pd(a); }
  static I cast_to_bits(D a) { return _mm256_castpd_si256(a); }
};

}  // namespace mirrorcov::simd
