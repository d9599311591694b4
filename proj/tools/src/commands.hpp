#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "squeeze/hilbert.hpp"

namespace squeeze::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitValidation = 2;

struct CommonOptions {
  std::filesystem::path config;
  std::filesystem::path out_dir = ".";
  unsigned jobs = 1;
};

enum class Backend { Analytic, Effective, Full };

struct ResonantOptions {
  double t_final = 2e-4;
  std::string initial = "vacuum";  // vacuum | coherent:RE[,IM]
  Backend backend = Backend::Analytic;
  int samples = 21;
  std::optional<std::filesystem::path> trajectory;
  bool amplitudes = false;
};

struct OffresOptions {
  double t = 2e-4;
  std::optional<std::string> grid;  // lo:hi:n
  int points = 40;
};

enum class Cavity { Open, Closed, Custom };

struct DissipationOptions {
  double t = 2e-4;
  Cavity cavity = Cavity::Custom;
};

struct ProfileOptions {
  double tau = 2e-4;
  std::optional<double> reference_tau;
};

struct ValidateOptions {
  double t = 2e-4;
};

// Each returns the process exit code; file outputs land in common.out_dir.
int cmd_resonant(const CommonOptions& common, const ResonantOptions& opt, std::ostream& out);
int cmd_offres(const CommonOptions& common, const OffresOptions& opt, std::ostream& out);
int cmd_dissipation(const CommonOptions& common, const DissipationOptions& opt, std::ostream& out);
int cmd_profile(const CommonOptions& common, const ProfileOptions& opt, std::ostream& out);
int cmd_validate(const CommonOptions& common, const ValidateOptions& opt, std::ostream& out);

// "vacuum" or "coherent:RE[,IM]".
Complex parse_initial(const std::string& spec);

}  // namespace squeeze::cli
