#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "squeeze/analysis.hpp"
#include "squeeze/errors.hpp"

namespace squeeze {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kXi = 2666.6666666666665;  // reference couplings

SystemParams reference_params() {
  SystemParams p;
  p.lambda_g = p.lambda_e = p.omega_rabi = 3e5;
  p.delta = 4.5e6;
  p.big_delta = 1.6e5;
  p.gamma_a = 1e2;
  p.gamma_c = 1e3;
  p.profile = GaussianProfile{6e-3, 100.26513098524};
  return p;
}

OffResonantInputs strong(double coupling, double r0 = 0.0, double phi0 = 0.0) {
  return {coupling, kXi, 0.0, r0, phi0, 3.2e5};
}

// --- quadrature statistics ---

TEST(QuadratureStats, Vacuum) {
  const QuadratureStats s = quadrature_stats(StateVector::fock(FockBasis(10), 0));
  EXPECT_DOUBLE_EQ(s.var_min, 0.25);
  EXPECT_DOUBLE_EQ(s.var_max, 0.25);
  EXPECT_DOUBLE_EQ(s.squeezing_pct, 0.0);
}

TEST(QuadratureStats, CoherentStateIsMinimumUncertainty) {
  const FockBasis basis(40);
  const QuadratureStats s = quadrature_stats(coherent_state(basis, 2.0));
  EXPECT_NEAR(s.var_min, 0.25, 1e-9);
  EXPECT_NEAR(s.var_max, 0.25, 1e-9);
  EXPECT_NEAR(s.mean.real(), 2.0, 1e-9);
}

TEST(QuadratureStats, SqueezedVacuumReferenceValue) {
  const FockBasis basis(127);
  const StateVector sv = apply_squeeze(StateVector::fock(basis, 0), SqueezeTransform(1.0666666666666667, kPi / 2));
  const QuadratureStats s = quadrature_stats(sv);
  EXPECT_NEAR(s.var_min, 0.029610457253450923, 1e-7);
  EXPECT_NEAR(s.squeezing_pct, 88.1558, 1e-3);
  EXPECT_NEAR(squeeze_factor_from_variance(s.var_min), 1.0666666666666667, 1e-6);
  // Squeezed quadrature sits at phi / 2.
  EXPECT_NEAR(std::abs(wrap_angle(2.0 * (s.phi_min - kPi / 4))), 0.0, 1e-9);
  EXPECT_NEAR(squeeze_angle_from_stats(s), kPi / 2, 1e-9);
}

TEST(QuadratureStats, AgreesWithBruteForceScan) {
  std::mt19937_64 rng(21);
  const FockBasis basis(30);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector psi(basis, BasisKind::Fock, oracle::random_state(basis.dim(), rng, 8));
    const QuadratureStats s = quadrature_stats(psi);
    EXPECT_NEAR(s.var_min, oracle::min_variance_scan(psi.amplitudes()), 1e-10);
    EXPECT_NEAR(quadrature_variance(psi, s.phi_min), s.var_min, 1e-12);
    for (const double th : {0.0, 0.4, 1.3}) {
      EXPECT_NEAR(quadrature_variance(psi, th), oracle::variance_at(psi.amplitudes(), th), 1e-10);
    }
  }
}

TEST(QuadratureStats, InvariantUnderRotationAndDisplacementOfVariance) {
  const FockBasis basis(63);
  const SqueezeTransform s(0.7, 0.3);
  const double base = quadrature_stats(apply_squeeze(StateVector::fock(basis, 0), s)).var_min;
  const double rotated =
      quadrature_stats(apply_squeeze(StateVector::fock(basis, 0), SqueezeTransform(0.7, 0.3, 1.1)))
          .var_min;
  const double displaced = quadrature_stats(apply_squeeze(coherent_state(basis, 0.8), s)).var_min;
  EXPECT_NEAR(rotated, base, 1e-12);
  EXPECT_NEAR(displaced, base, 1e-8);
}

TEST(QuadratureStats, HeisenbergFloorOnRandomStates) {
  std::mt19937_64 rng(5);
  const FockBasis basis(20);
  for (int trial = 0; trial < 50; ++trial) {
    const StateVector psi(basis, BasisKind::Fock, oracle::random_state(basis.dim(), rng, 12));
    const QuadratureStats s = quadrature_stats(psi);
    EXPECT_GE(s.var_min * s.var_max, 1.0 / 16.0 - 1e-12);
  }
}

TEST(QuadratureStats, RejectsAtomFockState) {
  const FockBasis basis(3);
  EXPECT_THROW(quadrature_stats(StateVector::product(Level::i, StateVector::fock(basis, 0))),
               DimensionMismatch);
}

// --- off-resonant squeeze ---

TEST(OffResonant, IdentityAtTimeZero) {
  for (const double p : {1.1, 2.0, 10.0, 100.0, -3.0}) {
    EXPECT_LT(off_resonant_point(strong(p), 0.0).r, 1e-12) << p;
  }
}

TEST(OffResonant, MatchesExactBogoliubovValues) {
  const double t = 2e-4;
  const std::vector<std::pair<double, double>> table = {
      {1.1, 0.9517721710341155},  {1.5, 1.0048153033133265},  {2.0, 1.0318647940046106},
      {10.0, 1.065274347533773},  {100.0, 1.0666527434374677}, {1000.0, 1.0666665274343712}};
  for (const auto& [p, r] : table) {
    EXPECT_NEAR(off_resonant_point(strong(p), t).r, r, 1e-11) << p;
  }
}

TEST(OffResonant, AgreesWithBogoliubovOracleOverTime) {
  for (const double p : {1.05, 1.5, 3.0, -2.0}) {
    for (int k = 0; k <= 20; ++k) {
      const double t = 2.5e-5 * k;
      const double r = off_resonant_point(strong(p), t).r;
      const double ref = oracle::bogoliubov_vacuum_r(2.0 * kXi / p, kXi, t);
      EXPECT_NEAR(r, ref, 1e-10 * std::max(1.0, ref)) << p << " " << t;
    }
  }
}

TEST(OffResonant, ApproachesResonantFactorForLargeCoupling) {
  const double t = 2e-4;
  const double ratio = off_resonant_point(strong(1e3), t).r / on_resonant_factor(kXi, t);
  EXPECT_NEAR(ratio, 1.0, 1e-4);
  for (const double p : {3.0, 10.0, 30.0, 100.0}) {
    const double rr = off_resonant_point(strong(p), t).r / on_resonant_factor(kXi, t);
    EXPECT_LT(std::abs(rr - 1.0), 10.0 / (p * p)) << p;
  }
}

TEST(OffResonant, MonotoneInTime) {
  double prev = -1.0;
  for (int k = 0; k < 100; ++k) {
    const double t = 5e-4 * k / 99.0;
    const double r = off_resonant_point(strong(1.5), t).r;
    EXPECT_GE(r, prev);
    prev = r;
  }
}

TEST(OffResonant, PhaseCosineInRange) {
  for (int k = 1; k <= 40; ++k) {
    const double c = off_resonant_point(strong(1.3), 1e-5 * k).phase_cosine;
    EXPECT_LE(std::abs(c), 1.0);
  }
}

TEST(OffResonant, SeriesIsContinuousInPhase) {
  std::vector<double> times;
  for (int k = 1; k <= 60; ++k) times.push_back(5e-6 * k);
  const auto series = off_resonant_series(strong(2.0), times);
  ASSERT_EQ(series.size(), times.size());
  for (std::size_t k = 0; k < series.size(); ++k) {
    EXPECT_NEAR(series[k].r(), off_resonant_point(strong(2.0), times[k]).r, 1e-15);
  }
}

TEST(OffResonant, RegimeErrors) {
  EXPECT_THROW(off_resonant_point(strong(0.5), 1e-4), RegimeError);
  EXPECT_THROW(off_resonant_point(strong(1.0), 1e-4), RegimeError);
  EXPECT_THROW(off_resonant_point(strong(std::numeric_limits<double>::infinity()), 1e-4),
               RegimeError);
  EXPECT_EQ(strong(1.0).regime(), CouplingRegime::Critical);
  EXPECT_EQ(strong(0.3).regime(), CouplingRegime::Weak);
  EXPECT_EQ(strong(-4.0).regime(), CouplingRegime::Strong);
}

TEST(OffResonant, BranchErrorWhenConstantBelowOne) {
  // C = cosh 2 r0 + P cos(phi0 - theta) sinh 2 r0 < 1 for P cos < -tanh r0.
  EXPECT_THROW(off_resonant_point(strong(2.0, 0.3, kPi), 1e-4), BranchError);
  EXPECT_NO_THROW(off_resonant_point(strong(2.0, 0.3, 0.0), 1e-4));
}

TEST(OffResonant, InputsFromEffectiveParams) {
  SystemParams p = reference_params();
  p.big_delta = 1.55e5;
  const OffResonantInputs in = OffResonantInputs::from(derive_effective(p));
  EXPECT_NEAR(in.coupling, 4.0 * kXi / 5e3, 1e-9);
  EXPECT_NEAR(in.nu, 1.55e5, 1e-9);
}

// --- sweep ---

TEST(Fig2Sweep, ShapeAndSymmetry) {
  const EffectiveParams eff = derive_effective(reference_params());
  const double t = 2e-4;
  std::vector<double> grid;
  for (int k = -4; k <= 4; ++k) grid.push_back(2.0 * eff.chi + 2e3 * k);
  const auto rows = fig2_sweep(eff, t, grid);
  ASSERT_EQ(rows.size(), grid.size());
  EXPECT_EQ(rows[4].flag, SweepFlag::Resonant);
  EXPECT_DOUBLE_EQ(rows[4].ratio, 1.0);
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(rows[k].flag, SweepFlag::None);
    EXPECT_NEAR(rows[k].ratio, rows[8 - k].ratio, 1e-12);
    EXPECT_LT(rows[k].ratio, rows[k + 1].ratio);
    EXPECT_LT(rows[k].ratio, 1.0);
    EXPECT_DOUBLE_EQ(rows[k].r_on, 1.0666666666666667);
  }
}

TEST(Fig2Sweep, FlagsWeakPoints) {
  const EffectiveParams eff = derive_effective(reference_params());
  const SweepRow row = fig2_point(eff, 2e-4, 2.0 * eff.chi + 2e4);  // |P| = 0.53
  EXPECT_EQ(row.flag, SweepFlag::NotStrong);
  EXPECT_TRUE(std::isnan(row.r_off));
  EXPECT_TRUE(std::isnan(row.ratio));
  EXPECT_THROW(fig2_point(eff, 0.0, 1.6e5), std::invalid_argument);
}

// --- dissipation ---

TEST(Decay, ReferenceValues) {
  const DecayInputs open{1e2, 1e4, kXi, 2e-4};
  EXPECT_NEAR(decayed_squeeze_factor(open), 1.0613510667554138, 1e-12);
  const DecayInputs open_cav{1e2, 1e3, kXi, 2e-4};
  EXPECT_NEAR(decayed_variance(open_cav), 0.06981941065702549, 1e-12);
  EXPECT_NEAR(squeezing_percent(decayed_variance(open_cav)), 72.07, 0.01);

  const DecayInputs closed{5e3, 10.0, kXi, 2e-4};
  EXPECT_NEAR(decayed_squeeze_factor(closed), 0.8394012592797153, 1e-12);
  EXPECT_NEAR(decayed_variance(closed), 0.04705561719925941, 1e-12);
  EXPECT_NEAR(squeezing_percent(decayed_variance(closed)), 81.18, 0.01);
}

TEST(Decay, NoDampingLimit) {
  const DecayInputs none{0.0, 0.0, kXi, 2e-4};
  EXPECT_DOUBLE_EQ(decayed_squeeze_factor(none), on_resonant_factor(kXi, 2e-4));
  EXPECT_NEAR(decayed_variance(none), 0.029610457253450923, 1e-15);
  // The series branch agrees with the closed form right at the switchover.
  const double ga = 0.999e-8 / 2e-4;
  const double x = 0.5 * ga * 2e-4;
  EXPECT_NEAR(decayed_squeeze_factor({ga, 0.0, kXi, 2e-4}),
              on_resonant_factor(kXi, 2e-4) * -std::expm1(-x) / x, 1e-15);
}

TEST(Decay, MonotoneInRates) {
  double prev_r = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 10; ++i) {
    const double ga = 1e3 * i;
    const double r = decayed_squeeze_factor({ga, 0.0, kXi, 2e-4});
    EXPECT_LT(r, prev_r);
    prev_r = r;
    double prev_v = 0.0;
    for (int j = 0; j <= 10; ++j) {
      const double v = decayed_variance({ga, 1e3 * j, kXi, 2e-4});
      EXPECT_GT(v, prev_v);
      EXPECT_LE(v, 0.25);
      prev_v = v;
    }
  }
  EXPECT_THROW(decayed_squeeze_factor({-1.0, 0.0, kXi, 1e-4}), ParameterError);
}

// --- Gaussian profile ---

TEST(Profile, MatchesErfOracle) {
  const SystemParams p = reference_params();
  const double tau = 2e-4;
  const double expected =
      2.0 * kXi * oracle::gaussian_squared_transit(6e-3, p.profile->speed_mps, tau);
  const double r = profile_squeeze_factor(p, tau);
  EXPECT_NEAR(r, expected, 1e-12);
  EXPECT_NEAR(r, 0.3996674967060809, 1e-12);
  EXPECT_NEAR(squeezing_percent(std::exp(-2.0 * r) / 4.0), 55.04, 0.01);
}

TEST(Profile, LongerTransitWithScaledSpeed) {
  const SystemParams p = reference_params();
  SystemParams slow = p;
  slow.profile = rescale_transit(*p.profile, 2e-4, 5e-4);
  EXPECT_NEAR(profile_squeeze_factor(slow, 5e-4), 0.9991687417652023, 1e-12);
}

TEST(Profile, LimitsAndBounds) {
  SystemParams p = reference_params();
  for (const double v : {1e-3, 10.0, 100.0, 1e3}) {
    p.profile->speed_mps = v;
    EXPECT_LE(profile_squeeze_factor(p, 2e-4), on_resonant_factor(kXi, 2e-4) * (1 + 1e-14));
  }
  p.profile->speed_mps = 0.0;
  EXPECT_NEAR(profile_squeeze_factor(p, 2e-4), on_resonant_factor(kXi, 2e-4), 1e-12);
  p.profile->speed_mps = 100.0;
  EXPECT_NEAR(profile_squeeze_factor(p, 2e-4), 0.40072, 1e-5);

  p.profile.reset();
  EXPECT_THROW(profile_squeeze_factor(p, 2e-4), ProfileMissing);
}

}  // namespace
}  // namespace squeeze
