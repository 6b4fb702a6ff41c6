#pragma once

#include <filesystem>
#include <ostream>

#include "cmclab/error.hpp"
#include "config.hpp"

namespace cmclab::cli {

inline constexpr int kExitDomain = 10;
inline constexpr int kExitBreakdown = 11;
inline constexpr int kExitIo = 12;
inline constexpr int kExitNoContact = 13;
inline constexpr int kExitCheckFailed = 20;

int exit_code(ErrorCode code) noexcept;

/// Each command writes its files into output_dir(cfg) and returns the exit
/// status. Library errors propagate as cmclab::Error.
int cmd_delaunay(const RunConfig& cfg, std::ostream& log);
int cmd_freeboundary(const RunConfig& cfg, std::ostream& log);
int cmd_cap(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const std::filesystem::path& dir, std::ostream& log);

}  // namespace cmclab::cli
