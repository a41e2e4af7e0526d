#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace semcom::cli {

struct CommonOptions {
  std::string config_path;
  std::string output_path;  // defaults are per-subcommand
  std::optional<std::uint64_t> seed_override;
  bool verbose = false;
};

// Each command returns 0 on success; errors propagate as exceptions and are
// mapped to exit statuses in main (ValidationError -> 1, SizeGuardError -> 2).
int run_capacity(const CommonOptions& opt);
int run_region(const CommonOptions& opt);
int run_typicality(const CommonOptions& opt);
int run_partitions(const CommonOptions& opt,
                   std::optional<std::size_t> messages,
                   std::optional<std::size_t> block);
int run_simulate(const CommonOptions& opt);
int run_mismatch_demo(const CommonOptions& opt);

}  // namespace semcom::cli
