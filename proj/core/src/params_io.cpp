#include "squeeze/params_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "squeeze/errors.hpp"

namespace squeeze {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "lambda_g_re", "lambda_g_im", "lambda_e_re", "lambda_e_im", "omega_rabi_re",
      "omega_rabi_im", "delta",     "big_delta",   "omega_cavity", "gamma_a",
      "gamma_c",     "waist_m",     "speed_mps",   "n_max"};
  return keys;
}

double parse_double(const std::string& text, const std::string& source, int line) {
  // strtod accepts the scientific forms written by write_params; from_chars
  // for double is not available on every supported standard library.
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw ConfigError(source, line, "expected a number, got '" + text + "'");
  }
  return v;
}

std::string format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

SystemParams read_params(std::istream& in, const std::string& source) {
  std::map<std::string, std::pair<std::string, int>> entries;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source, line_no, "expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!known_keys().contains(key)) {
      throw ConfigError(source, line_no, "unknown key '" + key + "'");
    }
    if (entries.contains(key)) {
      throw ConfigError(source, line_no, "duplicate key '" + key + "'");
    }
    entries.emplace(key, std::make_pair(value, line_no));
  }

  auto number = [&](const std::string& key, double fallback) {
    const auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    return parse_double(it->second.first, source, it->second.second);
  };
  auto required = [&](const std::string& key) {
    if (!entries.contains(key)) {
      throw ConfigError(source, line_no, "missing required key '" + key + "'");
    }
    return number(key, 0.0);
  };

  SystemParams p;
  p.lambda_g = {required("lambda_g_re"), number("lambda_g_im", 0.0)};
  p.lambda_e = {required("lambda_e_re"), number("lambda_e_im", 0.0)};
  p.omega_rabi = {required("omega_rabi_re"), number("omega_rabi_im", 0.0)};
  p.delta = required("delta");
  p.big_delta = required("big_delta");
  p.omega_cavity = number("omega_cavity", 0.0);
  p.gamma_a = number("gamma_a", 0.0);
  p.gamma_c = number("gamma_c", 0.0);

  if (const auto it = entries.find("n_max"); it != entries.end()) {
    const std::string& text = it->second.first;
    int n = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw ConfigError(source, it->second.second, "n_max must be an integer, got '" + text + "'");
    }
    p.n_max = n;
  }

  if (entries.contains("waist_m")) {
    p.profile = GaussianProfile{required("waist_m"), number("speed_mps", 0.0)};
  } else if (entries.contains("speed_mps")) {
    throw ConfigError(source, entries.at("speed_mps").second, "speed_mps given without waist_m");
  }
  return p;
}

SystemParams load_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path.string(), 0, "cannot open config file");
  }
  return read_params(in, path.string());
}

void write_params(std::ostream& out, const SystemParams& p) {
  out << "lambda_g_re = " << format(p.lambda_g.real()) << '\n'
      << "lambda_g_im = " << format(p.lambda_g.imag()) << '\n'
      << "lambda_e_re = " << format(p.lambda_e.real()) << '\n'
      << "lambda_e_im = " << format(p.lambda_e.imag()) << '\n'
      << "omega_rabi_re = " << format(p.omega_rabi.real()) << '\n'
      << "omega_rabi_im = " << format(p.omega_rabi.imag()) << '\n'
      << "delta = " << format(p.delta) << '\n'
      << "big_delta = " << format(p.big_delta) << '\n'
      << "omega_cavity = " << format(p.omega_cavity) << '\n'
      << "gamma_a = " << format(p.gamma_a) << '\n'
      << "gamma_c = " << format(p.gamma_c) << '\n';
  if (p.profile) {
    out << "waist_m = " << format(p.profile->waist_m) << '\n'
        << "speed_mps = " << format(p.profile->speed_mps) << '\n';
  }
  out << "n_max = " << p.n_max << '\n';
}

}  // namespace squeeze
