#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>

#include "cmclab/pinch.hpp"

namespace cmclab::cli {

struct RunConfig {
  double c = 0.0;
  double H = 0.0;
  std::optional<double> u0;
  int a = 1;
  std::optional<double> R;
  double R_max = std::numeric_limits<double>::infinity();
  /// Meridian length; commands pick their own default when unset.
  std::optional<double> s_max;
  double ds = 1e-3;
  std::size_t n_s = 101;
  std::size_t n_theta = 64;
  std::size_t n_gb = 2000;
  PinchTolerances tol;
  std::string chart = "projective";
  bool all_contacts = false;
  bool mesh = false;
  unsigned jobs = 1;
  std::string out;
};

/// Overwrites fields of `cfg` with the keys present in a JSON object. Keys
/// use the flag names with '-' replaced by '_'. Throws IoError on unknown keys
/// or wrong value types.
void apply_json(RunConfig& cfg, const std::string& json_text);

/// Throws OutOfDomain when a tolerance is not positive or a grid is too small.
void validate(const RunConfig& cfg);

/// Explicit out, then CMCLAB_OUT, then the working directory.
std::filesystem::path output_dir(const RunConfig& cfg);

std::string to_json(const RunConfig& cfg);

}  // namespace cmclab::cli
