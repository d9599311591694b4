#include "squeeze/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "squeeze/errors.hpp"

namespace squeeze {
namespace {

constexpr double kRegimeGuard = 1e-9;
constexpr double kBranchGuard = 1e-9;

// acosh(1 + d) for d >= 0 without losing digits near d = 0.
double acosh1p(double d) { return std::log1p(d + std::sqrt(d * (d + 2.0))); }

}  // namespace

double quadrature_variance(const StateVector& psi, double theta) {
  const QuadratureStats s = quadrature_stats(psi);
  // Var(X_theta) = [1 + 2N + 2 Re(e^{-2 i theta} M)] / 4 with the centred
  // moments N, M; recover them from the extremes and the minimizing angle.
  const double mid = 0.5 * (s.var_min + s.var_max);
  const double half_span = 0.5 * (s.var_max - s.var_min);
  return mid - half_span * std::cos(2.0 * (theta - s.phi_min));
}

QuadratureStats quadrature_stats(const StateVector& psi) {
  if (psi.kind() != BasisKind::Fock) {
    throw DimensionMismatch("quadrature_stats: expects a Fock-only state");
  }
  const auto& c = psi.amplitudes();
  const int d = psi.dim();
  Complex mean_a = 0.0;
  Complex mean_a2 = 0.0;
  double mean_n = 0.0;
  for (int n = 0; n < d; ++n) {
    mean_n += n * std::norm(c(n));
    if (n + 1 < d) mean_a += std::conj(c(n)) * c(n + 1) * std::sqrt(n + 1.0);
    if (n + 2 < d) mean_a2 += std::conj(c(n)) * c(n + 2) * std::sqrt((n + 1.0) * (n + 2.0));
  }
  // Centred moments; the 2x2 covariance of (x, p) has eigenvalues
  // (1 + 2N -/+ 2|M|) / 4.
  const double centred_n = mean_n - std::norm(mean_a);
  const Complex centred_m = mean_a2 - mean_a * mean_a;

  QuadratureStats s;
  s.mean = mean_a;
  s.var_min = (1.0 + 2.0 * centred_n - 2.0 * std::abs(centred_m)) / 4.0;
  s.var_max = (1.0 + 2.0 * centred_n + 2.0 * std::abs(centred_m)) / 4.0;
  double phi = 0.5 * (std::arg(centred_m) - std::numbers::pi);
  if (phi <= -std::numbers::pi / 2.0) phi += std::numbers::pi;
  s.phi_min = std::abs(centred_m) > 0.0 ? phi : 0.0;
  s.squeezing_pct = squeezing_percent(s.var_min);
  return s;
}

double squeezing_percent(double variance) { return 100.0 * (1.0 - 4.0 * variance); }

double squeeze_factor_from_variance(double var_min) {
  if (!(var_min > 0.0)) return std::numeric_limits<double>::infinity();
  return std::max(0.0, -0.5 * std::log(4.0 * var_min));
}

double squeeze_angle_from_stats(const QuadratureStats& stats) {
  return wrap_angle(2.0 * stats.phi_min);
}

std::string_view to_string(CouplingRegime regime) {
  switch (regime) {
    case CouplingRegime::Strong: return "strong";
    case CouplingRegime::Weak: return "weak";
    case CouplingRegime::Critical: return "critical";
  }
  return "?";
}

OffResonantInputs OffResonantInputs::from(const EffectiveParams& eff, double r0, double phi0) {
  return {eff.coupling, eff.xi_modulus(), eff.theta(), r0, phi0, eff.nu};
}

CouplingRegime OffResonantInputs::regime() const {
  const double p = std::abs(coupling);
  if (std::abs(p - 1.0) <= 1e-12) return CouplingRegime::Critical;
  return p > 1.0 ? CouplingRegime::Strong : CouplingRegime::Weak;
}

double off_resonant_constant(const OffResonantInputs& in) {
  return std::cosh(2.0 * in.r0) +
         in.coupling * std::cos(in.phi0 - in.theta) * std::sinh(2.0 * in.r0);
}

OffResonantPoint off_resonant_point(const OffResonantInputs& in, double t) {
  const double p = in.coupling;
  if (!std::isfinite(p)) {
    throw RegimeError("off-resonant formulas need a finite coupling parameter; the drive is "
                      "resonant, use the on-resonant squeeze");
  }
  const double p2m1 = p * p - 1.0;
  if (p2m1 < kRegimeGuard) {
    throw RegimeError("coupling parameter |P| = " + std::to_string(std::abs(p)) +
                      " is not in the strong regime (|P|^2 - 1 >= 1e-9 required)");
  }
  const double c = off_resonant_constant(in);
  if (c < 1.0) {
    throw BranchError("initial squeeze gives C = " + std::to_string(c) +
                      " < 1; the strong-coupling solution has no real branch");
  }
  const double abs_p = std::abs(p);
  const double s = std::sqrt(p2m1 * (c * c - 1.0));

  // cosh(2r) = [e^h / 4 + P^2 (C^2 + P^2 - 1) e^{-h} - C] / (P^2 - 1) with
  //   h = -(sqrt(P^2 - 1) / |P|) 4 |xi| t + ln[2 |P| (S + C |P|)].
  // Writing u = e^h, m = C + P^2 - 1, the numerator minus (P^2 - 1) factors as
  //   [(u - 2m)^2 + 4 (P^2 - 1)(C - 1)^2] / (4u),
  // which is evaluated directly so cosh(2r) - 1 keeps full relative precision.
  const double u0 = 2.0 * abs_p * (s + c * abs_p);
  const double u0_minus_2m = 2.0 * abs_p * s + 2.0 * (c - 1.0) * p2m1;
  const double x = -std::sqrt(p2m1) / abs_p * 4.0 * in.xi_modulus * t;
  const double u = u0 * std::exp(x);
  const double gap = u0 * std::expm1(x) + u0_minus_2m;
  const double excess = (gap * gap + 4.0 * p2m1 * (c - 1.0) * (c - 1.0)) / (4.0 * u * p2m1);

  OffResonantPoint point;
  point.r = 0.5 * acosh1p(excess);

  const double sinh2r = std::sqrt(excess * (excess + 2.0));
  if (sinh2r > 0.0) {
    const double cosine = ((c - 1.0) - excess) / (p * sinh2r);
    if (std::abs(cosine) > 1.0 + kBranchGuard) {
      throw BranchError("phase equation has |cos| = " + std::to_string(std::abs(cosine)) + " > 1");
    }
    point.phase_cosine = std::clamp(cosine, -1.0, 1.0);
  }
  return point;
}

SqueezeTransform off_resonant_squeeze(const OffResonantInputs& in, double t) {
  const OffResonantPoint point = off_resonant_point(in, t);
  const double phi = std::acos(point.phase_cosine) - in.nu * t + in.theta;
  return {point.r, phi};
}

std::vector<SqueezeTransform> off_resonant_series(const OffResonantInputs& in,
                                                  std::span<const double> times) {
  std::vector<SqueezeTransform> out;
  out.reserve(times.size());
  for (const double t : times) {
    const OffResonantPoint point = off_resonant_point(in, t);
    const double base = std::acos(point.phase_cosine);
    const double shift = -in.nu * t + in.theta;
    double phi = wrap_angle(base + shift);
    if (!out.empty()) {
      const double other = wrap_angle(-base + shift);
      const double prev = out.back().phi();
      if (std::abs(wrap_angle(other - prev)) < std::abs(wrap_angle(phi - prev))) phi = other;
    }
    out.emplace_back(point.r, phi);
  }
  return out;
}

SweepRow fig2_point(const EffectiveParams& eff, double t, double big_delta) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("fig2 sweep needs t > 0 for the ratio r_off / r_on");
  }
  SweepRow row;
  row.big_delta = big_delta;
  row.r_on = on_resonant_factor(eff.xi_modulus(), t);
  const double offset = 2.0 * eff.chi - big_delta;
  const double scale = std::max(std::abs(2.0 * eff.chi), std::abs(big_delta));
  if (std::abs(offset) <= kResonanceTolerance * scale) {
    row.coupling = std::numeric_limits<double>::infinity();
    row.r_off = row.r_on;
    row.ratio = 1.0;
    row.flag = SweepFlag::Resonant;
    return row;
  }
  row.coupling = 4.0 * eff.xi_modulus() / offset;
  OffResonantInputs in{row.coupling, eff.xi_modulus(), eff.theta(), 0.0, 0.0,
                       eff.nu - eff.big_delta + big_delta};
  if (row.coupling * row.coupling - 1.0 < kRegimeGuard) {
    row.r_off = std::numeric_limits<double>::quiet_NaN();
    row.ratio = std::numeric_limits<double>::quiet_NaN();
    row.flag = SweepFlag::NotStrong;
    return row;
  }
  row.r_off = off_resonant_point(in, t).r;
  row.ratio = row.r_off / row.r_on;
  return row;
}

std::vector<SweepRow> fig2_sweep(const EffectiveParams& eff, double t,
                                 std::span<const double> delta_grid) {
  std::vector<SweepRow> rows;
  rows.reserve(delta_grid.size());
  for (const double big_delta : delta_grid) rows.push_back(fig2_point(eff, t, big_delta));
  return rows;
}

double decayed_squeeze_factor(const DecayInputs& in) {
  if (in.gamma_a < 0.0 || in.gamma_c < 0.0 || in.xi_modulus < 0.0 || in.t < 0.0) {
    throw ParameterError("decay inputs must be >= 0");
  }
  const double x = 0.5 * in.gamma_a * in.t;
  // (1 - e^{-x}) / x, by series below the switchover.
  const double shape = in.gamma_a * in.t < 1e-8 ? 1.0 - 0.5 * x : -std::expm1(-x) / x;
  return 2.0 * in.xi_modulus * in.t * shape;
}

double decayed_variance(const DecayInputs& in) {
  const double r = decayed_squeeze_factor(in);
  return 0.25 * (1.0 + std::expm1(-2.0 * r) * std::exp(-in.gamma_c * in.t));
}

double profile_squeeze_factor(const SystemParams& p, double tau) {
  if (!p.profile) {
    throw ProfileMissing("profile_squeeze_factor: waist_m and speed_mps are required");
  }
  if (!(tau > 0.0)) {
    throw ParameterError("profile_squeeze_factor: tau must be positive");
  }
  const double scale = 2.0 * std::abs(p.omega_rabi) / (p.delta * p.delta);
  auto xi_of_t = [&](double t) {
    const CouplingPair c = profile_coupling(p, t, tau);
    return scale * std::abs(c.lambda_g) * std::abs(c.lambda_e);
  };
  double error = 0.0;
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(xi_of_t, 0.0, tau, 15, 1e-12,
                                                                    &error);
  return 2.0 * integral;
}

GaussianProfile rescale_transit(const GaussianProfile& profile, double reference_tau, double tau) {
  if (!(reference_tau > 0.0) || !(tau > 0.0)) {
    throw ParameterError("rescale_transit: transit times must be positive");
  }
  return {profile.waist_m, profile.speed_mps * reference_tau / tau};
}

}  // namespace squeeze
