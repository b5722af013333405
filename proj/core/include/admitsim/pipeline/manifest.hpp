#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "admitsim/pipeline/config.hpp"

namespace admitsim::pipeline {

/// Lower-case hex SHA-256 of a byte string or a file's contents.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Writes manifest.json: the hash of the rendered configuration, library
/// versions, and every file in the directory with its checksum. Contains no
/// timestamps, so identical runs produce identical manifests.
void write_manifest(const std::filesystem::path& dir, const std::string& command, const ExperimentConfig& config);

/// Writes run_log.json with wall-clock seconds per stage; listed in the
/// manifest without a checksum.
void write_run_log(const std::filesystem::path& dir, const std::string& command,
                   const std::vector<std::pair<std::string, double>>& timings);

inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kRunLogFile = "run_log.json";

}  // namespace admitsim::pipeline
