#include <exception>
#include <iostream>
#include <optional>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "commands.hpp"
#include "semcom/errors.hpp"

namespace {

using semcom::cli::CommonOptions;

void add_common(CLI::App* cmd, CommonOptions& opt, bool config_required) {
  auto* config =
      cmd->add_option("-c,--config", opt.config_path, "JSON config file");
  if (config_required) config->required();
  cmd->add_option("-o,--output", opt.output_path, "output file path");
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&opt](std::uint64_t v) { opt.seed_override = v; },
      "master seed override (wins over the config)");
  cmd->add_flag("-v,--verbose", opt.verbose, "progress notes on stderr");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semantic communication model: capacity, rate regions, and "
               "Monte Carlo achievability experiments"};
  app.require_subcommand(1);

  CommonOptions capacity_opt, region_opt, typicality_opt, partitions_opt,
      simulate_opt, mismatch_opt;
  std::optional<std::size_t> messages, block;

  auto* capacity = app.add_subcommand(
      "capacity", "Blahut-Arimoto channel capacity with bound certificate");
  add_common(capacity, capacity_opt, true);

  auto* region = app.add_subcommand(
      "region", "information quantities and rate-region grid sweep (CSV)");
  add_common(region, region_opt, true);

  auto* typicality = app.add_subcommand(
      "typicality", "exhaustive typical-set enumeration and size bound");
  add_common(typicality, typicality_opt, true);

  auto* partitions = app.add_subcommand(
      "partitions", "exact count of labeled equal-block message partitions");
  add_common(partitions, partitions_opt, false);
  partitions->add_option_function<std::size_t>(
      "--messages", [&](std::size_t v) { messages = v; }, "number of messages");
  partitions->add_option_function<std::size_t>(
      "--block", [&](std::size_t v) { block = v; }, "messages per semantic");

  auto* simulate = app.add_subcommand(
      "simulate", "seeded end-to-end achievability experiment (CSV + summary)");
  add_common(simulate, simulate_opt, true);

  auto* mismatch = app.add_subcommand(
      "mismatch-demo", "codebook mismatch / realignment error comparison");
  add_common(mismatch, mismatch_opt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (capacity->parsed()) return semcom::cli::run_capacity(capacity_opt);
    if (region->parsed()) return semcom::cli::run_region(region_opt);
    if (typicality->parsed()) return semcom::cli::run_typicality(typicality_opt);
    if (partitions->parsed()) {
      return semcom::cli::run_partitions(partitions_opt, messages, block);
    }
    if (simulate->parsed()) return semcom::cli::run_simulate(simulate_opt);
    if (mismatch->parsed()) return semcom::cli::run_mismatch_demo(mismatch_opt);
  } catch (const semcom::SizeGuardError& e) {
    std::cerr << "semcom: size guard: " << e.what() << "\n";
    return 2;
  } catch (const semcom::ValidationError& e) {
    std::cerr << "semcom: invalid input: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "semcom: config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "semcom: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
