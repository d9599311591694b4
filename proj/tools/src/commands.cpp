#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "manifest.hpp"
#include "ordered_pool.hpp"
#include "squeeze/analysis.hpp"
#include "squeeze/dynamics.hpp"
#include "squeeze/errors.hpp"
#include "squeeze/format.hpp"
#include "squeeze/params_io.hpp"
#include "validation.hpp"

namespace squeeze::cli {
namespace {

using nlohmann::ordered_json;

void check_params(const SystemParams& p, RunManifest& manifest) {
  p.validate();
  if (auto w = p.dispersive_warning()) manifest.warn(*w);
}

std::filesystem::path prepare_output(const CommonOptions& common, const std::string& name) {
  std::filesystem::create_directories(common.out_dir);
  return common.out_dir / name;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

double parse_number(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParameterError("bad number '" + text + "' in " + what);
  return value;
}

struct SeriesRow {
  double t;
  double var_min;
  double pop_i;
};

void write_json(const std::filesystem::path& path, const ordered_json& j) {
  std::ofstream out = open_output(path);
  out << j.dump(2) << '\n';
}

void report_files(std::ostream& out, const std::filesystem::path& data,
                  const std::filesystem::path& manifest) {
  out << "wrote " << data.string() << " (manifest " << manifest.filename().string() << ")\n";
}

}  // namespace

Complex parse_initial(const std::string& spec) {
  if (spec == "vacuum") return 0.0;
  const std::string prefix = "coherent:";
  if (spec.rfind(prefix, 0) != 0) {
    throw ParameterError("--initial must be 'vacuum' or 'coherent:RE[,IM]', got '" + spec + "'");
  }
  const std::string body = spec.substr(prefix.size());
  const auto comma = body.find(',');
  if (comma == std::string::npos) return parse_number(body, "--initial");
  return {parse_number(body.substr(0, comma), "--initial"),
          parse_number(body.substr(comma + 1), "--initial")};
}

int cmd_resonant(const CommonOptions& common, const ResonantOptions& opt, std::ostream& out) {
  SystemParams p = load_params(common.config);
  RunManifest manifest("resonant", p);
  check_params(p, manifest);
  if (!(opt.t_final >= 0.0)) throw ParameterError("--t-final must be >= 0");
  if (opt.samples < 1) throw ParameterError("--samples must be >= 1");

  const FockBasis basis = p.basis();
  const EffectiveParams eff = derive_effective(p);
  const StateVector field0 = coherent_state(basis, parse_initial(opt.initial));
  const char* backend_name[] = {"analytic", "effective", "full"};
  manifest.set_option("backend", backend_name[static_cast<int>(opt.backend)]);
  manifest.set_option("initial", opt.initial);
  manifest.set_option("t_final", sci(opt.t_final));

  const int samples = opt.t_final > 0.0 ? std::max(2, opt.samples) : 1;
  std::vector<SeriesRow> rows;
  const bool full = opt.backend == Backend::Full;

  if (opt.backend == Backend::Analytic) {
    if (!eff.resonant) {
      throw RegimeError("analytic backend needs a resonant drive (big_delta = 2 chi = " +
                        sci(2.0 * eff.chi) + "); use --backend effective");
    }
    if (opt.trajectory) throw ParameterError("--trajectory needs a numeric backend");
    for (int k = 0; k < samples; ++k) {
      const double t = samples == 1 ? 0.0 : opt.t_final * k / (samples - 1);
      rows.push_back({t, 0.25 * std::exp(-2.0 * on_resonant_factor(eff.xi_modulus(), t)), 0.0});
    }
  } else {
    const DrivenHamiltonian h = full ? DrivenHamiltonian(FullHamiltonian(p, basis))
                                     : DrivenHamiltonian(EffectiveModeHamiltonian(eff, basis));
    const StateVector psi0 = full ? StateVector::product(Level::i, field0) : field0;
    EvolutionConfig cfg;
    cfg.t_final = opt.t_final;
    cfg.stability_limit = 0.02;
    cfg.leakage_policy = LeakagePolicy::Record;
    if (opt.t_final > 0.0) {
      const double interval = opt.t_final / (samples - 1);
      const double dt_max = stable_time_step(h, cfg.stability_limit);
      const long per_sample = static_cast<long>(std::ceil(interval / dt_max));
      cfg.dt = interval / static_cast<double>(per_sample);
      cfg.record_every = static_cast<int>(per_sample);
    }
    const Trajectory traj = evolve_td(psi0, h, cfg);
    if (traj.leakage_flagged) {
      manifest.warn("Fock-tail population leakage reached " + sci(traj.max_leakage) +
                    " (threshold " + sci(kLeakageThreshold) + "); raise n_max");
    }
    for (const auto& sample : traj.samples) {
      if (full) {
        const StateVector block = sample.state.block(Level::i).normalized();
        rows.push_back({sample.t, quadrature_stats(block).var_min, sample.state.population(Level::i)});
      } else {
        rows.push_back({sample.t, quadrature_stats(sample.state).var_min, 0.0});
      }
    }
    if (opt.trajectory) {
      std::ofstream tout = open_output(*opt.trajectory);
      write_trajectory_csv(tout, traj, opt.amplitudes);
      const auto tm = manifest.write_for(*opt.trajectory);
      report_files(out, *opt.trajectory, tm);
    }
  }

  const auto path = prepare_output(common, "resonant.csv");
  {
    std::ofstream csv = open_output(path);
    csv << "t,r,var_min,squeezing_pct" << (full ? ",pop_i" : "") << '\n';
    for (const auto& row : rows) {
      csv << sci(row.t) << ',' << sci(squeeze_factor_from_variance(row.var_min)) << ','
          << sci(row.var_min) << ',' << sci(squeezing_percent(row.var_min));
      if (full) csv << ',' << sci(row.pop_i);
      csv << '\n';
    }
  }
  const auto mpath = manifest.write_for(path);
  const SeriesRow& last = rows.back();
  out << "t = " << sci(last.t) << "  r = " << sci(squeeze_factor_from_variance(last.var_min))
      << "  var_min = " << sci(last.var_min) << "  squeezing = " << sci(squeezing_percent(last.var_min))
      << " %\n";
  report_files(out, path, mpath);
  return kExitOk;
}

int cmd_offres(const CommonOptions& common, const OffresOptions& opt, std::ostream& out) {
  SystemParams p = load_params(common.config);
  RunManifest manifest("offres", p);
  check_params(p, manifest);
  const EffectiveParams eff = derive_effective(p);
  if (!(opt.t > 0.0)) throw ParameterError("--t must be positive");

  std::vector<double> grid;
  if (opt.grid) {
    const std::string& g = *opt.grid;
    const auto c1 = g.find(':');
    const auto c2 = g.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw ParameterError("--grid must look like lo:hi:n, got '" + g + "'");
    }
    const double lo = parse_number(g.substr(0, c1), "--grid");
    const double hi = parse_number(g.substr(c1 + 1, c2 - c1 - 1), "--grid");
    const double n = parse_number(g.substr(c2 + 1), "--grid");
    if (n < 1 || n != std::floor(n)) throw ParameterError("--grid point count must be a positive integer");
    const int count = static_cast<int>(n);
    for (int k = 0; k < count; ++k) grid.push_back(count == 1 ? lo : lo + (hi - lo) * k / (count - 1));
    manifest.set_option("grid", g);
  } else {
    // Symmetric about 2 chi, even count so the resonance itself is skipped,
    // and confined to |P| > 1 / 0.95.
    const int half = std::max(1, opt.points / 2);
    const double reach = 0.95 * 4.0 * eff.xi_modulus();
    for (int k = half - 1; k >= 0; --k) grid.push_back(2.0 * eff.chi - reach * (k + 0.5) / half);
    for (int k = 0; k < half; ++k) grid.push_back(2.0 * eff.chi + reach * (k + 0.5) / half);
    manifest.set_option("grid", "default:" + std::to_string(2 * half));
  }
  manifest.set_option("t", sci(opt.t));

  const auto rows = ordered_map<SweepRow>(grid.size(), common.jobs,
                                          [&](std::size_t i) { return fig2_point(eff, opt.t, grid[i]); });
  int weak = 0;
  for (const auto& row : rows) weak += row.flag == SweepFlag::NotStrong;
  if (weak > 0) {
    manifest.warn(std::to_string(weak) + " grid point(s) outside the strong-coupling regime; r_off and ratio are nan");
  }

  const auto path = prepare_output(common, "offres.csv");
  {
    std::ofstream csv = open_output(path);
    csv << "delta_big,p_coupling,r_off,r_on,ratio\n";
    for (const auto& row : rows) {
      csv << sci(row.big_delta) << ',' << sci(row.coupling) << ',' << sci(row.r_off) << ','
          << sci(row.r_on) << ',' << sci(row.ratio) << '\n';
    }
  }
  const auto mpath = manifest.write_for(path);
  out << rows.size() << " detunings, " << weak << " flagged\n";
  report_files(out, path, mpath);
  return kExitOk;
}

int cmd_dissipation(const CommonOptions& common, const DissipationOptions& opt, std::ostream& out) {
  SystemParams p = load_params(common.config);
  RunManifest manifest("dissipation", p);
  check_params(p, manifest);
  const EffectiveParams eff = derive_effective(p);

  // Rates quoted for open (high-Q) and closed microwave cavities.
  DecayInputs in{p.gamma_a, p.gamma_c, eff.xi_modulus(), opt.t};
  const char* cavity = "custom";
  if (opt.cavity == Cavity::Open) {
    in.gamma_a = 1e2;
    in.gamma_c = 1e3;
    cavity = "open";
  } else if (opt.cavity == Cavity::Closed) {
    in.gamma_a = 5e3;
    in.gamma_c = 10.0;
    cavity = "closed";
  }
  manifest.set_option("cavity", cavity);
  manifest.set_option("t", sci(opt.t));

  const double r = decayed_squeeze_factor(in);
  const double var = decayed_variance(in);
  ordered_json j;
  j["cavity"] = cavity;
  j["gamma_a"] = rounded(in.gamma_a);
  j["gamma_c"] = rounded(in.gamma_c);
  j["t"] = rounded(opt.t);
  j["r_tilde"] = rounded(r);
  j["variance"] = rounded(var);
  j["squeezing_pct"] = rounded(squeezing_percent(var));

  const auto path = prepare_output(common, "dissipation.json");
  write_json(path, j);
  const auto mpath = manifest.write_for(path);
  out << "r_tilde = " << sci(r) << "  variance = " << sci(var)
      << "  squeezing = " << sci(squeezing_percent(var)) << " %\n";
  report_files(out, path, mpath);
  return kExitOk;
}

int cmd_profile(const CommonOptions& common, const ProfileOptions& opt, std::ostream& out) {
  SystemParams p = load_params(common.config);
  RunManifest manifest("profile", p);
  check_params(p, manifest);
  if (!p.profile) throw ProfileMissing("profile needs waist_m and speed_mps in " + common.config.string());
  if (opt.reference_tau) {
    p.profile = rescale_transit(*p.profile, *opt.reference_tau, opt.tau);
    manifest.set_option("reference_tau", sci(*opt.reference_tau));
  }
  manifest.set_option("tau", sci(opt.tau));
  const EffectiveParams eff = derive_effective(p);

  const double r = profile_squeeze_factor(p, opt.tau);
  const double var = 0.25 * std::exp(-2.0 * r);
  ordered_json j;
  j["tau"] = rounded(opt.tau);
  j["speed_mps"] = rounded(p.profile->speed_mps);
  j["waist_m"] = rounded(p.profile->waist_m);
  j["r_prime"] = rounded(r);
  j["variance"] = rounded(var);
  j["squeezing_pct"] = rounded(squeezing_percent(var));
  j["r_on"] = rounded(on_resonant_factor(eff.xi_modulus(), opt.tau));

  const auto path = prepare_output(common, "profile.json");
  write_json(path, j);
  const auto mpath = manifest.write_for(path);
  out << "r' = " << sci(r) << "  variance = " << sci(var)
      << "  squeezing = " << sci(squeezing_percent(var)) << " %\n";
  report_files(out, path, mpath);
  return kExitOk;
}

int cmd_validate(const CommonOptions& common, const ValidateOptions& opt, std::ostream& out) {
  SystemParams p = load_params(common.config);
  RunManifest manifest("validate", p);
  check_params(p, manifest);
  manifest.set_option("t", sci(opt.t));

  const std::vector<Check> checks = run_invariant_suite(p, opt.t);
  bool all = true;
  ordered_json list = ordered_json::array();
  for (const auto& c : checks) {
    all = all && c.passed;
    out << (c.passed ? "PASS " : "FAIL ") << c.name << "  residual = " << sci(c.residual)
        << "  tolerance = " << sci(c.tolerance) << '\n';
    ordered_json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["residual"] = rounded(c.residual);
    j["tolerance"] = rounded(c.tolerance);
    if (!c.detail.empty()) j["detail"] = c.detail;
    list.push_back(j);
  }
  ordered_json report;
  report["passed"] = all;
  report["checks"] = list;
  const auto path = prepare_output(common, "validate.json");
  write_json(path, report);
  const auto mpath = manifest.write_for(path);
  report_files(out, path, mpath);
  return all ? kExitOk : kExitValidation;
}

}  // namespace squeeze::cli
