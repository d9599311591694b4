#include "manifest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "squeeze/errors.hpp"
#include "squeeze/format.hpp"

namespace squeeze::cli {

using nlohmann::ordered_json;

double rounded(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(sci(x));
}

namespace {

ordered_json complex_json(Complex z) { return {rounded(z.real()), rounded(z.imag())}; }

// JSON has no infinity; resonant coupling is reported as null.
ordered_json finite_or_null(double x) { return std::isfinite(x) ? ordered_json(rounded(x)) : nullptr; }

ordered_json params_json(const SystemParams& p) {
  ordered_json j;
  j["lambda_g"] = complex_json(p.lambda_g);
  j["lambda_e"] = complex_json(p.lambda_e);
  j["omega_rabi"] = complex_json(p.omega_rabi);
  j["delta"] = rounded(p.delta);
  j["big_delta"] = rounded(p.big_delta);
  j["omega_cavity"] = rounded(p.omega_cavity);
  j["gamma_a"] = rounded(p.gamma_a);
  j["gamma_c"] = rounded(p.gamma_c);
  if (p.profile) {
    j["waist_m"] = rounded(p.profile->waist_m);
    j["speed_mps"] = rounded(p.profile->speed_mps);
  }
  j["n_max"] = p.n_max;
  return j;
}

ordered_json effective_json(const SystemParams& p) {
  const EffectiveParams e = derive_effective(p);
  ordered_json j;
  j["chi"] = rounded(e.chi);
  j["varpi"] = rounded(e.varpi);
  j["xi"] = complex_json(e.xi);
  j["xi_modulus"] = rounded(e.xi_modulus());
  j["nu"] = rounded(e.nu);
  j["coupling"] = finite_or_null(e.coupling);
  j["resonant"] = e.resonant;
  return j;
}

}  // namespace

RunManifest::RunManifest(std::string command, const SystemParams& params)
    : command_(std::move(command)), params_(params), start_(std::chrono::steady_clock::now()) {}

void RunManifest::warn(const std::string& message) {
  if (std::find(warnings_.begin(), warnings_.end(), message) == warnings_.end()) {
    warnings_.push_back(message);
  }
}

void RunManifest::set_option(const std::string& key, const std::string& value) {
  options_.emplace_back(key, value);
}

std::filesystem::path RunManifest::write_for(const std::filesystem::path& output) const {
  ordered_json j;
  j["command"] = command_;
  j["output"] = output.filename().string();
  j["version"] = SQUEEZE_VERSION;
  ordered_json opts = ordered_json::object();
  for (const auto& [k, v] : options_) opts[k] = v;
  j["options"] = opts;
  j["params"] = params_json(params_);
  j["effective"] = effective_json(params_);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
  j["duration_s"] = elapsed.count();
  j["warnings"] = warnings_;

  std::filesystem::path path = output;
  path += ".manifest.json";
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  return path;
}

}  // namespace squeeze::cli
