#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mirrorcov/montecarlo.hpp"
#include "mirrorcov/simd/det_math.hpp"
#include "mirrorcov/simd/dispatch.hpp"
#include "mirrorcov/simd/philox.hpp"

using namespace mirrorcov;
using doctest::Approx;

namespace {

// Known-answer blocks for the 10-round 4x32 counter generator.
struct Kat {
  std::uint32_t counter[4];
  std::uint32_t key[2];
  std::uint32_t expect[4];
};

const Kat kKats[] = {
    {{0, 0, 0, 0}, {0, 0}, {0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}},
    {{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
     {0xffffffffu, 0xffffffffu},
     {0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}},
    {{0x243F6A88u, 0x85A308D3u, 0x13198A2Eu, 0x03707344u},
     {0xA4093822u, 0x299F31D0u},
     {0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}},
};

EnsembleResult run_small(int n_traj, int jobs, KernelChoice kernel, std::uint64_t seed) {
  ModeSpec m = testutil::small_mode();
  SystemMatrices s = SystemMatrices::from_mode(m, MeasurementChannel::AmplitudeX);
  Cov2 V = steady_state_analytic(filter_coefficients(m, MeasurementChannel::AmplitudeX), m.Q);
  KalmanGain K = kalman_gain(V, s);
  return run_ensemble(s, K, 1.0, 1.0, n_traj, 1e-3, 500, 1500, seed, jobs, kernel);
}

bool same_moments(const EnsembleResult& a, const EnsembleResult& b) {
  return a.moments.second.v11 == b.moments.second.v11 &&
         a.moments.second.v12 == b.moments.second.v12 &&
         a.moments.second.v22 == b.moments.second.v22 &&
         a.moments.mean_q == b.moments.mean_q && a.moments.mean_p == b.moments.mean_p;
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("counter generator known answers") {
  for (const Kat& kat : kKats) {
    simd::Philox4x32::Block b = simd::Philox4x32::generate(kat.counter, kat.key);
    for (int i = 0; i < 4; ++i) CHECK(b.x[i] == kat.expect[i]);
  }
  simd::Philox4x32::Block b = simd::Philox4x32::generate(kKats[0].counter, kKats[0].key);
  CHECK(b.lo64() == (static_cast<std::uint64_t>(0xe169c58du) << 32 | 0x6627e8d5u));
  CHECK(b.hi64() == (static_cast<std::uint64_t>(0x9b00dbd8u) << 32 | 0xbc57ac4cu));
}

TEST_CASE("draw layout separates seed, step, trajectory, and stream") {
  auto same = [](const simd::Philox4x32::Block& a, const simd::Philox4x32::Block& b) {
    return std::memcmp(a.x, b.x, sizeof a.x) == 0;
  };
  auto base = simd::Philox4x32::at(42, 7, 3, 0);
  CHECK(same(base, simd::Philox4x32::at(42, 7, 3, 0)));
  CHECK_FALSE(same(base, simd::Philox4x32::at(43, 7, 3, 0)));
  CHECK_FALSE(same(base, simd::Philox4x32::at(42, 8, 3, 0)));
  CHECK_FALSE(same(base, simd::Philox4x32::at(42, 7, 4, 0)));
  CHECK_FALSE(same(base, simd::Philox4x32::at(42, 7, 3, 1)));
  // 64-bit step and seed are split across words, not truncated
  CHECK_FALSE(same(simd::Philox4x32::at(1ull << 40, 0, 0, 0),
                   simd::Philox4x32::at(0, 0, 0, 0)));
  CHECK_FALSE(same(simd::Philox4x32::at(0, 1ull << 40, 0, 0),
                   simd::Philox4x32::at(0, 0, 0, 0)));
}

TEST_CASE("unit-interval mapping is open at both ends") {
  using Tag = simd::ScalarTag;
  const double tiny = 1.1102230246251565e-16;  // 2^-53
  CHECK(simd::to_unit_interval<Tag>(0ull) == tiny);
  CHECK(simd::to_unit_interval<Tag>(~0ull) == 1.0 - tiny);
  for (int k = 0; k < 2000; ++k) {
    auto blk = simd::Philox4x32::at(9, static_cast<std::uint64_t>(k), 0, 0);
    double u = simd::to_unit_interval<Tag>(blk.lo64());
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("deterministic log matches libm") {
  using Tag = simd::ScalarTag;
  CHECK(simd::det_log_unit<Tag>(1.0) == 0.0);
  CHECK(simd::det_log_unit<Tag>(0.5) == Approx(std::log(0.5)).epsilon(1e-15));
  for (int k = 0; k < 5000; ++k) {
    auto blk = simd::Philox4x32::at(11, static_cast<std::uint64_t>(k), 0, 0);
    double u = simd::to_unit_interval<Tag>(blk.lo64());
    double ours = simd::det_log_unit<Tag>(u);
    double ref = std::log(u);
    CHECK(std::abs(ours - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("deterministic sincos matches libm") {
  using Tag = simd::ScalarTag;
  const double two_pi = 6.283185307179586476925286766559;
  auto check_at = [&](double u) {
    double s, c;
    simd::det_sincos_turns<Tag>(u, s, c);
    CHECK(std::abs(s - std::sin(two_pi * u)) <= 1e-13);
    CHECK(std::abs(c - std::cos(two_pi * u)) <= 1e-13);
    CHECK(s * s + c * c == Approx(1.0).epsilon(1e-14));
  };
  for (int k = 0; k < 997; ++k) check_at(k / 997.0);
  for (double u : {0.0, 0.25, 0.5, 0.75, 0.125, 0.999999}) check_at(u);
}

TEST_CASE("normal pairs have the right first two moments") {
  using Tag = simd::ScalarTag;
  const int n = 1 << 16;
  double sum = 0, sumsq = 0, cross = 0;
  for (int k = 0; k < n; ++k) {
    auto blk = simd::Philox4x32::at(123, static_cast<std::uint64_t>(k), 0, 0);
    double z0, z1;
    simd::normal_pair<Tag>(blk.lo64(), blk.hi64(), z0, z1);
    sum += z0 + z1;
    sumsq += z0 * z0 + z1 * z1;
    cross += z0 * z1;
  }
  CHECK(std::abs(sum / (2 * n)) < 0.02);
  CHECK(std::abs(sumsq / (2 * n) - 1.0) < 0.03);
  CHECK(std::abs(cross / n) < 0.03);
}

TEST_CASE("kernel registry") {
  simd::KernelInfo sc = simd::scalar_kernel();
  CHECK(sc.run != nullptr);
  CHECK(std::string(sc.name) == "scalar");
  simd::KernelInfo av = simd::avx2_kernel();
  if (simd::avx2_compiled_in() && simd::avx2_runtime_supported()) {
    CHECK(av.run != nullptr);
    CHECK(std::string(av.name) == "avx2");
  } else {
    CHECK(av.run == nullptr);
  }
  CHECK(std::string(simd::kNoiseAlgorithm).find("philox4x32-10") == 0);
}

TEST_CASE("block splitting does not change trajectories") {
  // One call over eight trajectories must equal two calls over four each:
  // the noise is keyed on global indices, never on block position.
  simd::StepParams sp;
  sp.omega_dt = 0.013;
  sp.gamma_dt = 0.009;
  sp.c1_dt = 0.004;
  sp.K1 = 0.21;
  sp.K2 = 0.12;
  sp.sw = 0.05;
  sp.sv0 = 0.03;
  sp.sv1 = 0.04;
  const int n = 8;
  auto make = [&](std::vector<double>& store, simd::BlockArrays& b) {
    store.assign(14 * n, 0.0);
    double* base = store.data();
    b.q = base;
    b.p = base + n;
    b.qh = base + 2 * n;
    b.ph = base + 3 * n;
    b.a11 = base + 4 * n;
    b.a12 = base + 5 * n;
    b.a22 = base + 6 * n;
    b.aq = base + 7 * n;
    b.ap = base + 8 * n;
    b.c11 = base + 9 * n;
    b.c12 = base + 10 * n;
    b.c22 = base + 11 * n;
    b.cq = base + 12 * n;
    b.cp = base + 13 * n;
    b.n = n;
    for (int i = 0; i < n; ++i) {
      b.q[i] = 0.1 * i;
      b.p[i] = -0.05 * i;
    }
  };
  auto offset = [&](const simd::BlockArrays& b, int at) {
    simd::BlockArrays h = b;
    h.q += at; h.p += at; h.qh += at; h.ph += at;
    h.a11 += at; h.a12 += at; h.a22 += at; h.aq += at; h.ap += at;
    h.c11 += at; h.c12 += at; h.c22 += at; h.cq += at; h.cp += at;
    h.n = 4;
    return h;
  };
  std::vector<simd::KernelInfo> kernels{simd::scalar_kernel()};
  if (simd::avx2_kernel().run) kernels.push_back(simd::avx2_kernel());
  for (const simd::KernelInfo& k : kernels) {
    std::vector<double> whole_store, split_store;
    simd::BlockArrays whole, split;
    make(whole_store, whole);
    make(split_store, split);
    k.run(sp, whole, 99, 0, 0, 200, true);
    k.run(sp, offset(split, 0), 99, 0, 0, 200, true);
    k.run(sp, offset(split, 4), 99, 4, 0, 200, true);
    CHECK(std::memcmp(whole_store.data(), split_store.data(),
                      whole_store.size() * sizeof(double)) == 0);
  }
}

TEST_CASE("vector and scalar kernels produce identical ensembles") {
  if (!simd::avx2_kernel().run) {
    MESSAGE("vector kernel unavailable on this machine; equivalence not exercised");
    return;
  }
  EnsembleResult a = run_small(257, 1, KernelChoice::Scalar, 77);
  EnsembleResult b = run_small(257, 1, KernelChoice::Avx2, 77);
  CHECK(a.kernel == "scalar");
  CHECK(b.kernel == "avx2");
  CHECK(same_moments(a, b));
  CHECK(a.moments.second_se.v11 == b.moments.second_se.v11);
}

TEST_CASE("thread count does not change the result") {
  EnsembleResult j1 = run_small(257, 1, KernelChoice::Scalar, 31);
  EnsembleResult j3 = run_small(257, 3, KernelChoice::Scalar, 31);
  EnsembleResult j8 = run_small(257, 8, KernelChoice::Scalar, 31);
  CHECK(same_moments(j1, j3));
  CHECK(same_moments(j1, j8));
  if (simd::avx2_kernel().run) {
    EnsembleResult v1 = run_small(203, 1, KernelChoice::Avx2, 31);
    EnsembleResult v5 = run_small(203, 5, KernelChoice::Avx2, 31);
    CHECK(same_moments(v1, v5));
  }
}

}  // TEST_SUITE
