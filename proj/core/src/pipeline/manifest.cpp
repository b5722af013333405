#include "admitsim/pipeline/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <Eigen/Core>
#include <boost/version.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "admitsim/common.hpp"

#ifndef ADMITSIM_VERSION
#define ADMITSIM_VERSION "unknown"
#endif

namespace admitsim::pipeline {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot read {}", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(fmt::format("cannot write {}", path.string()));
  out << j.dump(2) << "\n";
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  std::string hex;
  for (unsigned int k = 0; k < len; ++k) hex += fmt::format("{:02x}", digest[k]);
  return hex;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

void write_manifest(const std::filesystem::path& dir, const std::string& command, const ExperimentConfig& config) {
  nlohmann::ordered_json m;
  const std::string rendered = render_config(config);
  m["command"] = command;
  m["preset"] = config.preset;
  m["seed"] = config.seed ? nlohmann::ordered_json(*config.seed) : nlohmann::ordered_json();
  m["config_sha256"] = sha256_hex(rendered);
  m["versions"] = {{"admitsim", ADMITSIM_VERSION},
                   {"eigen", fmt::format("{}.{}.{}", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION)},
                   {"boost", BOOST_LIB_VERSION},
                   {"fmt", FMT_VERSION}};

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto name = entry.path().filename().string();
    if (name == kManifestFile) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  auto& artifacts = m["artifacts"] = nlohmann::ordered_json::array();
  for (const auto& f : files) {
    nlohmann::ordered_json a;
    a["file"] = f.filename().string();
    if (f.filename() == kRunLogFile) {
      a["sha256"] = nullptr;
      a["note"] = "timings; differs between runs";
    } else {
      a["sha256"] = sha256_file(f);
      a["bytes"] = std::filesystem::file_size(f);
    }
    artifacts.push_back(a);
  }

  const auto rates_path = dir / "outcome_rates.json";
  if (std::filesystem::exists(rates_path)) {
    m["calibration"] = nlohmann::ordered_json::parse(read_file(rates_path));
  }
  write_json(dir / kManifestFile, m);
}

void write_run_log(const std::filesystem::path& dir, const std::string& command,
                   const std::vector<std::pair<std::string, double>>& timings) {
  nlohmann::ordered_json j;
  j["command"] = command;
  auto& t = j["timings_seconds"] = nlohmann::ordered_json::object();
  for (const auto& [stage, seconds] : timings) t[stage] = seconds;
  write_json(dir / kRunLogFile, j);
}

}  // namespace admitsim::pipeline
