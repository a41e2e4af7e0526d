#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "semcom/channel.hpp"
#include "semcom/experiments.hpp"

namespace semcom::cli {

// Reads and parses a JSON config file; parse failures surface as
// ValidationError with the parser's line/column diagnostics.
nlohmann::json load_config_file(const std::string& path);

// Channel spec: either {"kind": "identity"|"bsc"|"bec"|"qsc", ...params} or a
// custom row-major matrix {"rows": [[...], ...]}. Returns the channel plus a
// JSON echo of the fully resolved spec.
Dmc channel_from_config(const nlohmann::json& j, nlohmann::json& echo);

struct CapacityConfig {
  Dmc channel;
  double tol = 1e-9;
  std::size_t max_iter = 100000;
  nlohmann::json echo;
};
CapacityConfig parse_capacity_config(const nlohmann::json& j);

struct RegionConfig {
  SystemSpec system;
  // Sweep grid; maxima default to 1.25x the governing quantities (or 1.0 when
  // those are zero) and are resolved into the echo.
  std::optional<double> r_max;
  std::optional<double> rp_max;
  std::size_t steps_r = 40;
  std::size_t steps_rp = 40;
  nlohmann::json echo;
};
RegionConfig parse_region_config(const nlohmann::json& j);

struct TypicalityConfig {
  // Exactly one of p (marginal enumeration) or joint_sx+s_seq (conditional
  // enumeration) is set.
  std::optional<Pmf> p;
  std::optional<JointPmf> joint_sx;
  Seq s_seq;
  std::size_t n = 0;  // marginal mode only
  double eps = 0.2;
  bool collect = false;
  nlohmann::json echo;
};
TypicalityConfig parse_typicality_config(const nlohmann::json& j);

struct PartitionsConfig {
  std::size_t num_messages = 0;
  std::size_t block_size = 0;
  nlohmann::json echo;
};
PartitionsConfig parse_partitions_config(const nlohmann::json& j);

// Shared by simulate and mismatch-demo. seed_override, when set, wins over
// the config's master_seed (which wins over the built-in default).
ExperimentConfig parse_experiment_config(const nlohmann::json& j,
                                         std::optional<std::uint64_t> seed_override,
                                         nlohmann::json& echo);

std::vector<std::size_t> parse_permutation(const nlohmann::json& j,
                                           std::size_t num_semantics);

// JSON echoes of resolved values, reused by summaries.
nlohmann::json system_echo(const SystemSpec& system, const nlohmann::json& channel_echo);
nlohmann::json estimate_to_json(const ErrorEstimate& est);
nlohmann::json quantities_to_json(const InfoQuantities& q);

}  // namespace semcom::cli
