#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "mirrorcov/constants.hpp"
#include "mirrorcov/gaussian.hpp"

using namespace mirrorcov;
using doctest::Approx;

namespace {

struct ReferenceStates {
  Cov2 vplus{1.3752824258078107, 0.85577813361258193, 1.4032207990213235};
  Cov2 vminus{2.911565431850351, 2.6892738574483466, 3.261247859164103};
  double omega_plus = 6700.4864556357388;
  double omega_minus = 3239.3213058491542;
  double ref() const { return std::sqrt(omega_plus * omega_minus); }
};

}  // namespace

TEST_SUITE("gaussian") {

TEST_CASE("renormalization is a determinant-preserving rescale") {
  Cov2 V{2.0, 0.5, 1.5};
  double f = 3.7;
  Cov2 W = renormalize_covariance(V, 10.0, 37.0);
  CHECK(W.v11 == Approx(V.v11 * f).epsilon(1e-15));
  CHECK(W.v22 == Approx(V.v22 / f).epsilon(1e-15));
  CHECK(W.v12 == V.v12);
  CHECK(W.det() == Approx(V.det()).epsilon(1e-14));
  // same frequency: identity
  Cov2 same = renormalize_covariance(V, 10.0, 10.0);
  CHECK(same.v11 == V.v11);
}

TEST_CASE("reference point entanglement through the matrix path") {
  ReferenceStates st;
  double ref = st.ref();
  Cov4 joint = combine_modes(renormalize_covariance(st.vplus, st.omega_plus, ref),
                             renormalize_covariance(st.vminus, st.omega_minus, ref), ref);
  EntanglementReport ent = entanglement_from_matrix(joint);
  CHECK(ent.Sigma == Approx(6.016413759082338).epsilon(1e-11));
  CHECK(ent.det4 == Approx(2.71004246669982).epsilon(1e-11));
  CHECK(ent.nu_tilde2 == Approx(0.49041694322420193).epsilon(1e-11));
  CHECK(ent.epsilon_cr == Approx(0.5139596359439379).epsilon(1e-11));
  CHECK(ent.E_N == ent.epsilon_cr);
}

TEST_CASE("closed form agrees with the matrix path") {
  PhysicalParams p = testutil::reference_point();
  ModeSpec plus = mode_quantities(p, ModeLabel::Common);
  ModeSpec minus = mode_quantities(p, ModeLabel::Differential);
  for (auto ch : {MeasurementChannel::AmplitudeX, MeasurementChannel::PhaseY}) {
    FilterCoefficients fp = filter_coefficients(plus, ch);
    FilterCoefficients fm = filter_coefficients(minus, ch);
    Cov2 vp = steady_state_analytic(fp, plus.Q);
    Cov2 vm = steady_state_analytic(fm, minus.Q);
    double ref = std::sqrt(plus.omega_m * minus.omega_m);
    Cov4 joint = combine_modes(renormalize_covariance(vp, plus.omega_m, ref),
                               renormalize_covariance(vm, minus.omega_m, ref), ref);
    double matrix = entanglement_from_matrix(joint).epsilon_cr;
    double closed = epsilon_cr_closed_form(fp, plus.Q, fm, minus.Q);
    CHECK(std::abs(matrix - closed) <= 1e-9);
  }
  FilterCoefficients fpx = filter_coefficients(plus, MeasurementChannel::AmplitudeX);
  FilterCoefficients fmx = filter_coefficients(minus, MeasurementChannel::AmplitudeX);
  CHECK(epsilon_cr_closed_form(fpx, plus.Q, fmx, minus.Q) ==
        Approx(0.5139596359439379).epsilon(1e-10));
  FilterCoefficients fpy = filter_coefficients(plus, MeasurementChannel::PhaseY);
  FilterCoefficients fmy = filter_coefficients(minus, MeasurementChannel::PhaseY);
  CHECK(epsilon_cr_closed_form(fpy, plus.Q, fmy, minus.Q) ==
        Approx(0.15323829190148583).epsilon(1e-10));
}

TEST_CASE("the entanglement verdict does not depend on the reference choice") {
  ReferenceStates st;
  double last = 0;
  int k = 0;
  for (double ref : {st.ref(), st.omega_plus, st.omega_minus, 1234.5}) {
    Cov4 joint = combine_modes(renormalize_covariance(st.vplus, st.omega_plus, ref),
                               renormalize_covariance(st.vminus, st.omega_minus, ref), ref);
    double eps = entanglement_from_matrix(joint).epsilon_cr;
    if (k++) CHECK(eps == Approx(last).epsilon(1e-10));
    last = eps;
  }
}

TEST_CASE("identical modes never pass the partial-transpose test") {
  testutil::ModeSampler sampler(13);
  for (int i = 0; i < 50; ++i) {
    ModeSpec m = sampler.next();
    FilterCoefficients fc = filter_coefficients(m, MeasurementChannel::AmplitudeX);
    Cov2 V = steady_state_analytic(fc, m.Q);
    Cov4 joint = combine_modes(V, V, m.omega_m);
    EntanglementReport ent = entanglement_from_matrix(joint);
    CHECK(ent.epsilon_cr <= 1e-12);
    CHECK(ent.E_N == 0);
  }
}

TEST_CASE("unclipped and clipped entanglement measures") {
  ReferenceStates st;
  double ref = st.ref();
  Cov4 joint = combine_modes(renormalize_covariance(st.vplus, st.omega_plus, ref),
                             renormalize_covariance(st.vminus, st.omega_minus, ref), ref);
  EntanglementReport ent = entanglement_from_matrix(joint);
  CHECK(ent.E_N == std::max(0.0, ent.epsilon_cr));
  Cov4 sep = combine_modes(st.vminus, st.vminus, st.omega_minus);
  EntanglementReport none = entanglement_from_matrix(sep);
  CHECK(none.epsilon_cr < 0);
  CHECK(none.E_N == 0);
}

TEST_CASE("squeezing eigenvalues at the reference point") {
  ReferenceStates st;
  SqueezeEigs em = squeeze_eigenvalues(st.vminus);
  CHECK(em.e_min == Approx(0.39145519318974253).epsilon(1e-12));
  CHECK(em.e_max == Approx(5.781358097824711).epsilon(1e-12));
  SqueezeEigs ep = squeeze_eigenvalues(st.vplus);
  CHECK(ep.e_min == Approx(0.5333594742663724).epsilon(1e-12));
  CHECK(ep.e_max == Approx(2.2451437505627623).epsilon(1e-12));
  // invariants: product is the determinant, sum the trace
  CHECK(em.e_min * em.e_max == Approx(st.vminus.det()).epsilon(1e-12));
  CHECK(em.e_min + em.e_max == Approx(st.vminus.trace()).epsilon(1e-12));
}

TEST_CASE("squeezing angle diagonalizes the covariance") {
  ReferenceStates st;
  SqueezeAngle am = squeezing_angle(st.vminus);
  CHECK(am.theta == Approx(0.7529367067284322).epsilon(1e-12));
  SqueezeAngle ap = squeezing_angle(st.vplus);
  CHECK(ap.theta == Approx(0.7772372011409789).epsilon(1e-12));
  for (const Cov2& V : {st.vminus, st.vplus, Cov2{3.0, -1.2, 0.9}}) {
    SqueezeAngle a = squeezing_angle(V);
    SqueezeEigs e = squeeze_eigenvalues(V);
    CHECK(a.theta >= 0);
    CHECK(a.theta <= kPi / 2);
    double c = std::cos(a.rotation), s = std::sin(a.rotation);
    // R V R^T with the counterclockwise R = [[c, -s], [s, c]]
    double d11 = c * c * V.v11 - 2 * c * s * V.v12 + s * s * V.v22;
    double d22 = s * s * V.v11 + 2 * c * s * V.v12 + c * c * V.v22;
    double d12 = s * c * (V.v11 - V.v22) + (c * c - s * s) * V.v12;
    CHECK(d11 == Approx(e.e_min).epsilon(1e-9));
    CHECK(d22 == Approx(e.e_max).epsilon(1e-9));
    CHECK(std::abs(d12) < 1e-9 * e.e_max);
  }
  SqueezeAngle iso = squeezing_angle(Cov2{2.0, 0.0, 2.0});
  CHECK(iso.degenerate);
}

TEST_CASE("purity") {
  ReferenceStates st;
  CHECK(purity(st.vminus) == Approx(0.664728095778653).epsilon(1e-12));
  CHECK(purity(st.vplus) == Approx(0.9138352713067663).epsilon(1e-12));
  CHECK(purity(Cov2{1.0, 0.0, 1.0}) == Approx(1.0));
  // Mixing at a balanced splitter preserves the total purity.
  double ref = st.ref();
  Cov2 rp = renormalize_covariance(st.vplus, st.omega_plus, ref);
  Cov2 rm = renormalize_covariance(st.vminus, st.omega_minus, ref);
  Cov4 joint = combine_modes(rp, rm, ref);
  CHECK(purity4(joint) == Approx(purity(st.vplus) * purity(st.vminus)).epsilon(1e-10));
}

TEST_CASE("one-sigma contour points satisfy the ellipse equation") {
  for (const Cov2& V : {Cov2{1.0, 0.0, 1.0}, Cov2{2.911565431850351, 2.6892738574483466,
                                                  3.261247859164103},
                        Cov2{0.8, -0.3, 2.0}}) {
    WignerEllipse e = wigner_ellipse(V, 64);
    REQUIRE(e.points.size() == 64);
    double det = V.det();
    for (const auto& pt : e.points) {
      double q = pt[0], p = pt[1];
      // quadratic form with the inverse covariance
      double form = (V.v22 * q * q - 2 * V.v12 * q * p + V.v11 * p * p) / det;
      CHECK(form == Approx(1.0).epsilon(1e-10));
    }
    CHECK(e.angle >= 0);
    CHECK(e.angle < kPi);
    CHECK(e.semi_minor <= e.semi_major);
  }
  WignerEllipse circle = wigner_ellipse(Cov2{1.0, 0.0, 1.0}, 8);
  CHECK(circle.semi_minor == Approx(1.0));
  CHECK(circle.semi_major == Approx(1.0));
  CHECK(circle.degenerate);
}

TEST_CASE("mean-frequency normalization rotates the contour") {
  // Rescaling the common mode from its own frequency to the two-mode
  // arithmetic mean changes the ellipse orientation but not its area: the
  // rescale is determinant-preserving, so only the shape tilts.
  ReferenceStates st;
  double wref = 0.5 * (st.omega_plus + st.omega_minus);
  WignerEllipse own = wigner_ellipse(st.vplus, 32);
  WignerEllipse mean =
      wigner_ellipse(renormalize_covariance(st.vplus, st.omega_plus, wref), 32);
  CHECK(std::abs(mean.angle - own.angle) > 0.01);
  CHECK(mean.semi_minor * mean.semi_major ==
        Approx(own.semi_minor * own.semi_major).epsilon(1e-12));
}

TEST_CASE("dimensional covariance restores units") {
  Cov2 V{2.0, 0.5, 3.0};
  double mass = 7.71e-6, omega = 140.0;
  auto d = dimensional_covariance(V, mass, omega);
  CHECK(d[0] == Approx(kHbar / (2 * mass * omega) * 2.0).epsilon(1e-14));
  CHECK(d[1] == Approx(kHbar / 2 * 0.5).epsilon(1e-14));
  CHECK(d[2] == Approx(kHbar * mass * omega / 2 * 3.0).epsilon(1e-14));
}

TEST_CASE("physicality guard") {
  CHECK_NOTHROW(require_physical(Cov2{1.0, 0.0, 1.0}));
  CHECK_NOTHROW(require_physical(Cov2{2.0, 0.9, 1.5}));
  CHECK_THROWS_AS(require_physical(Cov2{0.5, 0.0, 0.5}), NonPhysicalState);
  CHECK_THROWS_AS(require_physical(Cov2{-1.0, 0.0, 2.0}), NonPhysicalState);
  CHECK_THROWS_AS(require_physical(Cov2{4.0, 3.9999, 4.0}), NonPhysicalState);
}

}  // TEST_SUITE
