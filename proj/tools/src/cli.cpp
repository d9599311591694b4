#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "commands.hpp"
#include "squeeze/errors.hpp"

namespace squeeze::cli {
namespace {

// SQUEEZE_SIM_JOBS wins over --jobs; 0 means hardware concurrency.
unsigned resolve_jobs(unsigned flag) {
  unsigned jobs = flag;
  if (const char* env = std::getenv("SQUEEZE_SIM_JOBS")) {
    const std::string text(env);
    unsigned parsed = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), parsed);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ParameterError("SQUEEZE_SIM_JOBS must be a non-negative integer, got '" + text + "'");
    }
    jobs = parsed;
  }
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  return jobs;
}

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("config", common.config, "Parameter file (key = value)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out-dir", common.out_dir, "Directory for output files")
      ->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Squeezed cavity field from a driven three-level atom", "squeeze-sim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SQUEEZE_VERSION);

  CommonOptions common;
  unsigned jobs_flag = 1;
  app.add_option("-j,--jobs", jobs_flag, "Worker threads for sweeps (0 = all cores)")
      ->capture_default_str();

  ResonantOptions res;
  auto* resonant = app.add_subcommand("resonant", "Squeezing time series for a single atom passage");
  add_common(resonant, common);
  resonant->add_option("--t-final", res.t_final, "Interaction time in s")->capture_default_str();
  resonant->add_option("--initial", res.initial, "vacuum or coherent:RE[,IM]")->capture_default_str();
  const std::map<std::string, Backend> backends{
      {"analytic", Backend::Analytic}, {"effective", Backend::Effective}, {"full", Backend::Full}};
  resonant->add_option("--backend", res.backend, "analytic, effective or full")
      ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case));
  resonant->add_option("--samples", res.samples, "Rows in the time series")->capture_default_str();
  resonant->add_option("--trajectory", res.trajectory, "Also write the numerical trajectory CSV here");
  resonant->add_flag("--amplitudes", res.amplitudes, "Include Fock amplitudes in the trajectory CSV");

  OffresOptions off;
  auto* offres = app.add_subcommand("offres", "Off-resonant squeeze ratio versus drive detuning");
  add_common(offres, common);
  offres->add_option("--t", off.t, "Interaction time in s")->capture_default_str();
  offres->add_option("--grid", off.grid, "Detuning grid lo:hi:n in s^-1 (default: around 2 chi)");
  offres->add_option("--points", off.points, "Default grid size (rounded down to even)")
      ->capture_default_str();

  DissipationOptions dis;
  auto* dissipation = app.add_subcommand("dissipation", "Squeezing with atomic and cavity decay");
  add_common(dissipation, common);
  dissipation->add_option("--t", dis.t, "Interaction time in s")->capture_default_str();
  const std::map<std::string, Cavity> cavities{
      {"open", Cavity::Open}, {"closed", Cavity::Closed}, {"custom", Cavity::Custom}};
  dissipation->add_option("--cavity", dis.cavity, "open, closed or custom (rates from config)")
      ->transform(CLI::CheckedTransformer(cavities, CLI::ignore_case));

  ProfileOptions prof;
  auto* profile = app.add_subcommand("profile", "Squeezing with the Gaussian mode profile");
  add_common(profile, common);
  profile->add_option("--tau", prof.tau, "Transit time in s")->capture_default_str();
  profile->add_option("--reference-tau", prof.reference_tau,
                      "Transit time the configured speed belongs to; speed is scaled by ref/tau");

  ValidateOptions val;
  auto* validate = app.add_subcommand("validate", "Run the invariant suite on a configuration");
  add_common(validate, common);
  validate->add_option("--t", val.t, "Interaction time in s")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    common.jobs = resolve_jobs(jobs_flag);
    if (resonant->parsed()) return cmd_resonant(common, res, out);
    if (offres->parsed()) return cmd_offres(common, off, out);
    if (dissipation->parsed()) return cmd_dissipation(common, dis, out);
    if (profile->parsed()) return cmd_profile(common, prof, out);
    if (validate->parsed()) return cmd_validate(common, val, out);
  } catch (const std::exception& e) {
    err << "squeeze-sim: error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace squeeze::cli
