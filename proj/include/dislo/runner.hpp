#pragma once

#include <filesystem>
#include <string>

#include "dislo/config.hpp"

namespace dislo {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kOutputRootEnv = "DISLOSIM_OUTPUT_ROOT";

/// output_dir resolved against the DISLOSIM_OUTPUT_ROOT override when the
/// configured path is relative.
std::filesystem::path resolve_output_dir(const std::string& output_dir);

/// Dispatches the configured model, writes its snapshot and diagnostics CSVs
/// plus a manifest.json (effective config, version, wall time). The CSV
/// outputs are deterministic: identical config + seed gives bit-identical
/// files; the manifest records wall time and is exempt. Throws dislo errors
/// on model failures.
void run_simulation(const SimConfig& config);

}  // namespace dislo
