#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "config.hpp"
#include "semcom/context.hpp"
#include "semcom/errors.hpp"
#include "semcom/typicality.hpp"

namespace semcom::cli {

namespace {

using nlohmann::json;

void note(const CommonOptions& opt, const std::string& message) {
  if (opt.verbose) std::cerr << "semcom: " << message << "\n";
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file '" + path + "'");
  out << j.dump(2) << "\n";
}

// semcom_region.csv -> semcom_region_summary.json
std::string summary_path_for(const std::string& csv_path) {
  const std::string suffix = ".csv";
  if (csv_path.size() > suffix.size() &&
      csv_path.compare(csv_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return csv_path.substr(0, csv_path.size() - suffix.size()) + "_summary.json";
  }
  return csv_path + "_summary.json";
}

json estimate_block(const ErrorEstimate& est) { return estimate_to_json(est); }

}  // namespace

int run_capacity(const CommonOptions& opt) {
  const json raw = load_config_file(opt.config_path);
  const CapacityConfig cfg = parse_capacity_config(raw);
  note(opt, "computing capacity (tol " + std::to_string(cfg.tol) + ")");
  const CapacityResult result =
      capacity_blahut_arimoto(cfg.channel, cfg.tol, cfg.max_iter);

  const json summary{{"command", "capacity"},
                     {"config", cfg.echo},
                     {"capacity_bits", result.capacity_bits},
                     {"lower_bits", result.lower_bits},
                     {"upper_bits", result.upper_bits},
                     {"converged", result.converged},
                     {"iterations", result.iterations},
                     {"input", json{{"probs", result.input.probs}}}};
  std::cout << summary.dump(2) << "\n";
  if (!opt.output_path.empty()) write_json_file(opt.output_path, summary);
  return 0;
}

int run_region(const CommonOptions& opt) {
  const json raw = load_config_file(opt.config_path);
  RegionConfig cfg = parse_region_config(raw);
  const InfoQuantities q =
      info_quantities(cfg.system.p_s, cfg.system.p_x_given_s, cfg.system.channel);

  const auto default_max = [](double v) { return v > 0.0 ? 1.25 * v : 1.0; };
  const double r_max = cfg.r_max ? *cfg.r_max : default_max(std::max(q.i_sx, q.i_sy));
  const double rp_max = cfg.rp_max ? *cfg.rp_max : default_max(q.h_x_given_s);
  cfg.echo["sweep"] = json{{"r_max", r_max},
                           {"rp_max", rp_max},
                           {"steps_r", cfg.steps_r},
                           {"steps_rp", cfg.steps_rp}};

  const auto rows = sweep_region(q, r_max, rp_max, cfg.steps_r, cfg.steps_rp);

  const std::string csv_path =
      opt.output_path.empty() ? "semcom_region.csv" : opt.output_path;
  {
    std::ofstream out(csv_path);
    if (!out) throw ValidationError("cannot open output file '" + csv_path + "'");
    write_region_csv(out, rows);
  }
  note(opt, "wrote " + std::to_string(rows.size()) + " grid points to " + csv_path);

  const RatePoint corner = theorem_corner(q);
  const SumRateBounds bounds = sum_rate_bounds(q);
  const ProofMembership corner_in_proof = proof_region_membership(q, corner);
  json summary{{"command", "region"},
               {"config", cfg.echo},
               {"quantities", quantities_to_json(q)},
               {"theorem_corner", json{{"r", corner.r}, {"r_prime", corner.r_prime}}},
               {"corner_in_proof", corner_in_proof.member},
               {"corner_violations", corner_in_proof.violated},
               {"sum_rate_bounds", json{{"h_plus_isy", bounds.h_plus_isy},
                                        {"h_plus_ixy", bounds.h_plus_ixy}}},
               {"csv", csv_path}};
  std::cout << summary.dump(2) << "\n";
  write_json_file(summary_path_for(csv_path), summary);
  return 0;
}

int run_typicality(const CommonOptions& opt) {
  const json raw = load_config_file(opt.config_path);
  const TypicalityConfig cfg = parse_typicality_config(raw);

  TypicalSetResult result;
  double h_bits = 0.0;
  std::size_t n = 0;
  if (cfg.p) {
    n = cfg.n;
    result = enumerate_typical_set(*cfg.p, cfg.n, cfg.eps, cfg.collect);
    h_bits = entropy(*cfg.p);
  } else {
    n = cfg.s_seq.size();
    result = enumerate_conditionally_typical(cfg.s_seq, *cfg.joint_sx, cfg.eps,
                                             cfg.collect);
    h_bits = conditional_entropy(*cfg.joint_sx, 0);  // H(X|S)
  }
  const double bound_log2 =
      static_cast<double>(n) * (1.0 + cfg.eps) * h_bits;

  json summary{{"command", "typicality"},
               {"config", cfg.echo},
               {"count", result.count},
               {"entropy_bits", h_bits},
               {"bound_log2", bound_log2}};
  if (result.count > 0) {
    summary["log2_count"] = std::log2(static_cast<double>(result.count));
  } else {
    summary["log2_count"] = nullptr;
  }
  if (cfg.collect) {
    json seqs = json::array();
    for (const auto& seq : result.sequences) seqs.push_back(seq);
    summary["sequences"] = std::move(seqs);
  }
  std::cout << summary.dump(2) << "\n";
  if (!opt.output_path.empty()) write_json_file(opt.output_path, summary);
  return 0;
}

int run_partitions(const CommonOptions& opt,
                   std::optional<std::size_t> messages,
                   std::optional<std::size_t> block) {
  PartitionsConfig cfg;
  if (messages && block) {
    cfg.num_messages = *messages;
    cfg.block_size = *block;
    cfg.echo = json{{"num_messages", cfg.num_messages},
                    {"block_size", cfg.block_size}};
  } else if (messages || block) {
    throw ValidationError("partitions needs both --messages and --block (or a config file)");
  } else {
    if (opt.config_path.empty()) {
      throw ValidationError("partitions needs --messages/--block or --config");
    }
    cfg = parse_partitions_config(load_config_file(opt.config_path));
  }

  const PartitionCount count = count_partitions(cfg.num_messages, cfg.block_size);
  std::cout << count.exact_decimal << "\n";
  if (!opt.output_path.empty()) {
    write_json_file(opt.output_path,
                    json{{"command", "partitions"},
                         {"config", cfg.echo},
                         {"exact", count.exact_decimal},
                         {"log2", count.log2_value}});
  }
  return 0;
}

int run_simulate(const CommonOptions& opt) {
  const json raw = load_config_file(opt.config_path);
  json echo;
  const ExperimentConfig cfg =
      parse_experiment_config(raw, opt.seed_override, echo);

  const std::string csv_path =
      opt.output_path.empty() ? "semcom_simulate.csv" : opt.output_path;
  std::ofstream out(csv_path);
  if (!out) throw ValidationError("cannot open output file '" + csv_path + "'");
  write_experiment_csv_header(out);
  out.flush();

  const ExperimentResult result = run_achievability_experiment(
      cfg, [&](const ExperimentRow& row) {
        write_experiment_csv_row(out, row);
        out.flush();
        note(opt, "n=" + std::to_string(row.n) + " p_hat=" +
                      std::to_string(row.est.p_hat));
      });

  json rows = json::array();
  for (const auto& row : result.rows) {
    rows.push_back(json{{"n", row.n},
                        {"r", row.r},
                        {"r_prime", row.r_prime},
                        {"in_theorem", row.in_theorem},
                        {"in_proof", row.in_proof},
                        {"violated", row.violated},
                        {"estimate", estimate_block(row.est)},
                        {"seed", row.seed}});
  }
  const json summary{{"command", "simulate"},
                     {"config", echo},
                     {"quantities", quantities_to_json(result.quantities)},
                     {"rows", std::move(rows)},
                     {"csv", csv_path}};
  std::cout << summary.dump(2) << "\n";
  write_json_file(summary_path_for(csv_path), summary);
  return 0;
}

int run_mismatch_demo(const CommonOptions& opt) {
  const json raw = load_config_file(opt.config_path);
  json echo;
  const ExperimentConfig cfg =
      parse_experiment_config(raw, opt.seed_override, echo);
  const auto perm = parse_permutation(raw, cfg.num_semantics);
  echo["permutation"] = perm;

  const MismatchDemoResult result = run_mismatch_demo(cfg, perm);
  const json summary{{"command", "mismatch-demo"},
                     {"config", echo},
                     {"n", result.n},
                     {"r", result.r},
                     {"r_prime", result.r_prime},
                     {"baseline", estimate_block(result.baseline)},
                     {"mismatched", estimate_block(result.mismatched)},
                     {"realigned", estimate_block(result.realigned)}};
  std::cout << summary.dump(2) << "\n";
  if (!opt.output_path.empty()) write_json_file(opt.output_path, summary);
  return 0;
}

}  // namespace semcom::cli
