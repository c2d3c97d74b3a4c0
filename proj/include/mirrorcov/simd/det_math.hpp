#pragma once

#include "mirrorcov/simd/lanes.hpp"

// Deterministic elementary functions for the ensemble kernels. libm's log and
// sincos are not bit-stable across implementations, so the Gaussian draw uses
// these fixed polynomial evaluations instead; every operation is correctly
// rounded or exact, making the whole pipeline reproduce bit-for-bit on any
// lane type and platform.

namespace mirrorcov::simd {

namespace detail {
inline constexpr std::uint64_t kExpOne = 0x3FF0000000000000ull;
inline constexpr std::uint64_t kMantMask = 0x000FFFFFFFFFFFFFull;
inline constexpr std::uint64_t kIntMagicBits = 0x4330000000000000ull;  // 2^52
inline constexpr double kIntMagic = 4503599627370496.0;                // 2^52
inline constexpr double kTiny = 1.1102230246251565e-16;                // 2^-53
inline constexpr double kLn2 = 0.6931471805599453;
inline constexpr double kSqrt2 = 1.4142135623730951;
inline constexpr double kHalfPi = 1.5707963267948966;
}  // namespace detail

// 52 high bits of a u64 draw to a uniform double in (0, 1), exactly
// (bits >> 12) * 2^-52 + 2^-53.
template <class Tag>
inline typename Lanes<Tag>::D to_unit_interval(typename Lanes<Tag>::I bits) {
  using L = Lanes<Tag>;
  auto one_to_two = L::cast_to_double(
      L::or_bits(L::shr(bits, 12), L::set1_bits(detail::kExpOne)));
  return L::add(L::sub(one_to_two, L::set1(1.0)), L::set1(detail::kTiny));
}

// Exact small nonnegative integers (< 2^52) held in a u64 lane to double.
template <class Tag>
inline typename Lanes<Tag>::D small_int_to_double(typename Lanes<Tag>::I v) {
  using L = Lanes<Tag>;
  return L::sub(L::cast_to_double(L::or_bits(v, L::set1_bits(detail::kIntMagicBits))),
                L::set1(detail::kIntMagic));
}

// Natural log for x in (0, 1]. Mantissa split at sqrt(2), then the atanh
// series 2s(1 + s^2/3 + ...) with s = (m-1)/(m+1), |s| <= sqrt(2)-1 over
// sqrt(2)+1; terms through s^23 leave the truncation below one ulp.
template <class Tag>
inline typename Lanes<Tag>::D det_log_unit(typename Lanes<Tag>::D x) {
  using L = Lanes<Tag>;
  auto bits = L::cast_to_bits(x);
  auto e = small_int_to_double<Tag>(L::shr(bits, 52));
  auto m = L::cast_to_double(
      L::or_bits(L::and_bits(bits, L::set1_bits(detail::kMantMask)),
                 L::set1_bits(detail::kExpOne)));
  auto big = L::cmp_gt(m, L::set1(detail::kSqrt2));
  m = L::select(big, L::mul(m, L::set1(0.5)), m);
  e = L::select(big, L::add(e, L::set1(1.0)), e);
  e = L::sub(e, L::set1(1023.0));

  auto s = L::div(L::sub(m, L::set1(1.0)), L::add(m, L::set1(1.0)));
  auto w = L::mul(s, s);
  auto p = L::set1(2.0 / 23.0);
  p = L::fma(w, p, L::set1(2.0 / 21.0));
  p = L::fma(w, p, L::set1(2.0 / 19.0));
  p = L::fma(w, p, L::set1(2.0 / 17.0));
  p = L::fma(w, p, L::set1(2.0 / 15.0));
  p = L::fma(w, p, L::set1(2.0 / 13.0));
  p = L::fma(w, p, L::set1(2.0 / 11.0));
  p = L::fma(w, p, L::set1(2.0 / 9.0));
  p = L::fma(w, p, L::set1(2.0 / 7.0));
  p = L::fma(w, p, L::set1(2.0 / 5.0));
  p = L::fma(w, p, L::set1(2.0 / 3.0));
  p = L::fma(w, p, L::set1(2.0));
  return L::fma(e, L::set1(detail::kLn2), L::mul(s, p));
}

// sin and cos of 2 pi u for u in [0, 1). Quadrant folding; Taylor series on
// |x| <= pi/4 through x^19 (sin) and x^18 (cos).
template <class Tag>
inline void det_sincos_turns(typename Lanes<Tag>::D u, typename Lanes<Tag>::D& sin_out,
                             typename Lanes<Tag>::D& cos_out) {
  using L = Lanes<Tag>;
  auto t = L::mul(u, L::set1(4.0));
  auto j = L::floor(L::add(t, L::set1(0.5)));
  auto f = L::sub(t, j);
  auto x = L::mul(f, L::set1(detail::kHalfPi));
  auto w = L::mul(x, x);

  auto sp = L::set1(-1.0 / 121645100408832000.0);
  sp = L::fma(w, sp, L::set1(1.0 / 355687428096000.0));
  sp = L::fma(w, sp, L::set1(-1.0 / 1307674368000.0));
  sp = L::fma(w, sp, L::set1(1.0 / 6227020800.0));
  sp = L::fma(w, sp, L::set1(-1.0 / 39916800.0));
  sp = L::fma(w, sp, L::set1(1.0 / 362880.0));
  sp = L::fma(w, sp, L::set1(-1.0 / 5040.0));
  sp = L::fma(w, sp, L::set1(1.0 / 120.0));
  sp = L::fma(w, sp, L::set1(-1.0 / 6.0));
  sp = L::fma(w, sp, L::set1(1.0));
  auto s = L::mul(x, sp);

  auto cp = L::set1(-1.0 / 6402373705728000.0);
  cp = L::fma(w, cp, L::set1(1.0 / 20922789888000.0));
  cp = L::fma(w, cp, L::set1(-1.0 / 87178291200.0));
  cp = L::fma(w, cp, L::set1(1.0 / 479001600.0));
  cp = L::fma(w, cp, L::set1(-1.0 / 3628800.0));
  cp = L::fma(w, cp, L::set1(1.0 / 40320.0));
  cp = L::fma(w, cp, L::set1(-1.0 / 720.0));
  cp = L::fma(w, cp, L::set1(1.0 / 24.0));
  cp = L::fma(w, cp, L::set1(-1.0 / 2.0));
  cp = L::fma(w, cp, L::set1(1.0));
  auto c = cp;

  // quadrant j mod 4: 0 -> (s, c), 1 -> (c, -s), 2 -> (-s, -c), 3 -> (-c, s)
  auto jm = L::sub(j, L::mul(L::set1(4.0), L::floor(L::mul(j, L::set1(0.25)))));
  auto is1 = L::cmp_eq(jm, L::set1(1.0));
  auto is2 = L::cmp_eq(jm, L::set1(2.0));
  auto is3 = L::cmp_eq(jm, L::set1(3.0));
  sin_out = L::select(is1, c, L::select(is2, L::neg(s), L::select(is3, L::neg(c), s)));
  cos_out = L::select(is1, L::neg(s), L::select(is2, L::neg(c), L::select(is3, s, c)));
}

// Box-Muller from two u64 draws: z0 = r cos(2 pi u2), z1 = r sin(2 pi u2),
// r = sqrt(-2 ln u1).
template <class Tag>
inline void normal_pair(typename Lanes<Tag>::I bits1, typename Lanes<Tag>::I bits2,
                        typename Lanes<Tag>::D& z0, typename Lanes<Tag>::D& z1) {
  using L = Lanes<Tag>;
  auto u1 = to_unit_interval<Tag>(bits1);
  auto u2 = to_unit_interval<Tag>(bits2);
  auto r = L::sqrt(L::mul(L::set1(-2.0), det_log_unit<Tag>(u1)));
  typename Lanes<Tag>::D s, c;
  det_sincos_turns<Tag>(u2, s, c);
  z0 = L::mul(r, c);
  z1 = L::mul(r, s);
}

// Identifier recorded in outputs so downstream users can tell which noise
// pipeline produced a dataset.
inline constexpr const char* kNoiseAlgorithm =
    "philox4x32-10/unit-open-53/det-log-atanh23/det-sincos-quadrant/box-muller-trig";

}  // namespace mirrorcov::simd
