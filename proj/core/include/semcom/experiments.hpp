#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "semcom/channel.hpp"
#include "semcom/coding.hpp"
#include "semcom/pmf.hpp"
#include "semcom/regions.hpp"

namespace semcom {

inline constexpr std::uint64_t kDefaultMasterSeed = 0x5ec0235eedULL;

struct SystemSpec {
  Pmf p_s;
  ConditionalPmf p_x_given_s;
  Dmc channel;

  void validate() const;
};

// Per-blocklength codebook shape override.
struct SizeSchedule {
  std::size_t num_semantics = 1;
  std::size_t msgs_per_semantic = 1;
};

struct ExperimentConfig {
  SystemSpec system;
  std::vector<std::size_t> blocklengths;
  std::size_t num_semantics = 1;
  std::size_t msgs_per_semantic = 1;
  // When non-empty, overrides the two fields above per blocklength (must
  // match blocklengths in length).
  std::vector<SizeSchedule> schedule;
  double eps = 0.2;
  std::size_t trials = 1000;
  std::uint64_t master_seed = kDefaultMasterSeed;
  // Codebooks averaged per point; trials are split across them.
  std::size_t codebooks_per_point = 1;
  std::size_t threads = 0;  // 0: SEMCOM_THREADS environment variable, else 1

  void validate() const;
};

struct ErrorEstimate {
  std::uint64_t errors = 0;
  std::uint64_t trials = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;

  bool operator==(const ErrorEstimate&) const = default;
};

// 95% Wilson score interval; always contains p_hat.
ErrorEstimate wilson_estimate(std::uint64_t errors, std::uint64_t trials);

struct TrialCounts {
  std::uint64_t decoded_correct = 0;
  std::uint64_t decoded_wrong = 0;
  std::uint64_t none_typical = 0;
  std::uint64_t ambiguous = 0;
};

// Monte Carlo estimate of the semantic error probability: per trial draw w
// uniformly, encode, transmit, decode; an error is any outcome other than
// Decoded(w). Trials use seeds derived from (trial_seed_base, trial index),
// so results are independent of execution order and thread count. When
// receiver_cb is set, decoding uses it instead of the sender codebook
// (codebook-mismatch experiments).
ErrorEstimate estimate_error_rate(const Codebook& cb, const Dmc& ch,
                                  const JointPmf& system_joint, double eps,
                                  std::size_t trials,
                                  std::uint64_t trial_seed_base,
                                  std::size_t threads = 1,
                                  const Codebook* receiver_cb = nullptr,
                                  TrialCounts* counts = nullptr);

struct ExperimentRow {
  std::size_t n = 0;
  double r = 0.0;
  double r_prime = 0.0;
  bool in_theorem = false;
  bool in_proof = false;
  std::string violated;
  ErrorEstimate est;
  std::uint64_t seed = 0;  // per-n codebook seed
};

struct ExperimentResult {
  InfoQuantities quantities;
  std::vector<ExperimentRow> rows;
};

// One row per blocklength: fresh codebook(s) seeded from (master_seed, n),
// error estimate, and region memberships of the operating point. on_row fires
// after each completed row so partial results can be flushed before a
// size-guard abort propagates.
ExperimentResult run_achievability_experiment(
    const ExperimentConfig& cfg,
    const std::function<void(const ExperimentRow&)>& on_row = {});

struct MismatchDemoResult {
  std::size_t n = 0;
  double r = 0.0;
  double r_prime = 0.0;
  ErrorEstimate baseline;    // receiver decodes with the sender codebook
  ErrorEstimate mismatched;  // receiver codebook permuted by sem_permutation
  ErrorEstimate realigned;   // mismatched codebook re-shifted by the inverse
};

// Runs the three receivers over identical trial seed streams (first
// blocklength of cfg); realignment therefore reproduces the baseline exactly.
MismatchDemoResult run_mismatch_demo(const ExperimentConfig& cfg,
                                     std::span<const std::size_t> sem_permutation);

// Columns: n, R_bits, Rp_bits, in_theorem, in_proof, violated, errors,
// trials, p_hat, ci_low, ci_high, seed. The header/row pair supports
// streaming output with per-row flushes.
void write_experiment_csv_header(std::ostream& os);
void write_experiment_csv_row(std::ostream& os, const ExperimentRow& row);
void write_experiment_csv(std::ostream& os,
                          const std::vector<ExperimentRow>& rows);

// requested if > 0, else the SEMCOM_THREADS environment variable, else 1.
std::size_t resolve_threads(std::size_t requested);

}  // namespace semcom
