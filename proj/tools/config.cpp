#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include <fmt/format.h>

#include "json.hpp"

namespace cmclab::cli {

using json = nlohmann::ordered_json;

void apply_json(RunConfig& cfg, const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::IoError, fmt::format("config is not valid JSON: {}", e.what()));
  }
  if (!j.is_object()) throw Error(ErrorCode::IoError, "config must be a JSON object");

  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "c") cfg.c = value.get<double>();
      else if (key == "H") cfg.H = value.get<double>();
      else if (key == "u0") cfg.u0 = value.is_null() ? std::nullopt : std::optional(value.get<double>());
      else if (key == "a") cfg.a = value.get<int>();
      else if (key == "R") cfg.R = value.is_null() ? std::nullopt : std::optional(value.get<double>());
      else if (key == "R_max") {
        cfg.R_max = value.is_null() ? std::numeric_limits<double>::infinity() : value.get<double>();
      }
      else if (key == "s_max") cfg.s_max = value.is_null() ? std::nullopt : std::optional(value.get<double>());
      else if (key == "ds") cfg.ds = value.get<double>();
      else if (key == "n_s") cfg.n_s = value.get<std::size_t>();
      else if (key == "n_theta") cfg.n_theta = value.get<std::size_t>();
      else if (key == "n_gb") cfg.n_gb = value.get<std::size_t>();
      else if (key == "tol_eq") cfg.tol.eq = value.get<double>();
      else if (key == "tol_umb") cfg.tol.umb = value.get<double>();
      else if (key == "tol_r") cfg.tol.r = value.get<double>();
      else if (key == "chart") cfg.chart = value.get<std::string>();
      else if (key == "all_contacts") cfg.all_contacts = value.get<bool>();
      else if (key == "mesh") cfg.mesh = value.get<bool>();
      else if (key == "jobs") cfg.jobs = value.get<unsigned>();
      else if (key == "out") cfg.out = value.get<std::string>();
      else throw Error(ErrorCode::IoError, fmt::format("unknown config key '{}'", key));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::IoError, fmt::format("config key '{}': {}", key, e.what()));
    }
  }
}

void validate(const RunConfig& cfg) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::OutOfDomain, msg); };
  if (!std::isfinite(cfg.c) || !std::isfinite(cfg.H)) fail("c and H must be finite");
  if (cfg.a != 1 && cfg.a != -1) fail("a must be +1 or -1");
  if (!(cfg.ds > 0.0)) fail("ds must be positive");
  if (cfg.s_max && !(*cfg.s_max > 0.0)) fail("s-max must be positive");
  if (!(cfg.R_max > 0.0)) fail("R-max must be positive");
  if (!(cfg.tol.eq > 0.0) || !(cfg.tol.umb > 0.0) || !(cfg.tol.r > 0.0)) {
    fail("tolerances must be positive");
  }
  if (cfg.n_s < 3) fail("n-s must be at least 3");
  if (cfg.n_theta < 3) fail("n-theta must be at least 3");
  if (cfg.n_gb < 3) fail("n-gb must be at least 3");
  if (cfg.jobs == 0) fail("jobs must be at least 1");
}

std::filesystem::path output_dir(const RunConfig& cfg) {
  if (!cfg.out.empty()) return cfg.out;
  if (const char* env = std::getenv("CMCLAB_OUT"); env != nullptr && *env != '\0') return env;
  return std::filesystem::current_path();
}

std::string to_json(const RunConfig& cfg) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json j{{"c", cfg.c},
         {"H", cfg.H},
         {"u0", opt(cfg.u0)},
         {"a", cfg.a},
         {"R", opt(cfg.R)},
         {"R_max", std::isfinite(cfg.R_max) ? json(cfg.R_max) : json(nullptr)},
         {"s_max", opt(cfg.s_max)},
         {"ds", cfg.ds},
         {"n_s", cfg.n_s},
         {"n_theta", cfg.n_theta},
         {"n_gb", cfg.n_gb},
         {"tol_eq", cfg.tol.eq},
         {"tol_umb", cfg.tol.umb},
         {"tol_r", cfg.tol.r},
         {"chart", cfg.chart},
         {"all_contacts", cfg.all_contacts},
         {"mesh", cfg.mesh},
         {"jobs", cfg.jobs}};
  return j.dump(2);
}

}  // namespace cmclab::cli
