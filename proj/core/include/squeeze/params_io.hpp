#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "squeeze/model.hpp"

namespace squeeze {

// Flat "key = value" config, one entry per line, '#' starts a comment.
// Keys: lambda_g_re, lambda_g_im, lambda_e_re, lambda_e_im, omega_rabi_re,
// omega_rabi_im, delta, big_delta, omega_cavity, gamma_a, gamma_c, waist_m,
// speed_mps, n_max. The profile is present when waist_m is given.
// Errors carry the offending line number (ConfigError).
SystemParams read_params(std::istream& in, const std::string& source = "<config>");
SystemParams load_params(const std::filesystem::path& path);

void write_params(std::ostream& out, const SystemParams& p);

}  // namespace squeeze
