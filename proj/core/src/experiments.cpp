#include "semcom/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

constexpr double kZ95 = 1.959963984540054;

TrialCounts run_trial_range(const Codebook& sender, const Codebook& receiver,
                            const Dmc& ch, const JointPmf& joint, double eps,
                            std::uint64_t trial_seed_base, std::size_t begin,
                            std::size_t end) {
  TrialCounts counts;
  for (std::size_t t = begin; t < end; ++t) {
    Rng rng(derive_seed(trial_seed_base, static_cast<std::uint64_t>(t)));
    const std::size_t w =
        static_cast<std::size_t>(rng.next_below(sender.num_semantics()));
    const auto [m, x] = encode(sender, w, rng);
    (void)m;
    const Seq y = transmit(x, ch, rng);
    const DecodeOutcome outcome = decode(receiver, y, joint, eps);
    switch (outcome.status) {
      case DecodeStatus::Decoded:
        if (outcome.w_hat == w) {
          ++counts.decoded_correct;
        } else {
          ++counts.decoded_wrong;
        }
        break;
      case DecodeStatus::NoneTypical:
        ++counts.none_typical;
        break;
      case DecodeStatus::Ambiguous:
        ++counts.ambiguous;
        break;
    }
  }
  return counts;
}

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm) {
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

}  // namespace

void SystemSpec::validate() const {
  p_s.validate("p_s");
  p_x_given_s.validate("p_x_given_s");
  channel.validate("channel");
  if (p_x_given_s.given_size != p_s.size()) {
    throw ValidationError("system: p_x_given_s conditioning size != |S|");
  }
  if (channel.in_size != p_x_given_s.out_size) {
    throw ValidationError("system: channel input size != |X|");
  }
}

void ExperimentConfig::validate() const {
  system.validate();
  if (blocklengths.empty()) {
    throw ValidationError("config: at least one blocklength required");
  }
  for (std::size_t n : blocklengths) {
    if (n < 1) throw ValidationError("config: blocklengths must be >= 1");
  }
  if (!schedule.empty() && schedule.size() != blocklengths.size()) {
    throw ValidationError("config: schedule length " +
                          std::to_string(schedule.size()) +
                          " != number of blocklengths " +
                          std::to_string(blocklengths.size()));
  }
  if (schedule.empty() && (num_semantics < 1 || msgs_per_semantic < 1)) {
    throw ValidationError("config: codebook sizes must be >= 1");
  }
  for (const auto& s : schedule) {
    if (s.num_semantics < 1 || s.msgs_per_semantic < 1) {
      throw ValidationError("config: schedule sizes must be >= 1");
    }
  }
  if (!(eps > 0.0)) throw ValidationError("config: eps must be > 0");
  if (trials < 1) throw ValidationError("config: trials must be >= 1");
  if (codebooks_per_point < 1) {
    throw ValidationError("config: codebooks_per_point must be >= 1");
  }
  // The decoder guard is checked per n up front so a doomed run fails before
  // burning any compute.
  for (std::size_t i = 0; i < blocklengths.size(); ++i) {
    const auto [w_count, mps] =
        schedule.empty() ? SizeSchedule{num_semantics, msgs_per_semantic}
                         : schedule[i];
    const std::uint64_t candidates = static_cast<std::uint64_t>(w_count) * mps;
    if (candidates > kMaxDecodeCandidates) {
      throw SizeGuardError("config: n=" + std::to_string(blocklengths[i]) +
                           " needs " + std::to_string(candidates) +
                           " decoder candidates, above the " +
                           std::to_string(kMaxDecodeCandidates) + " guard");
    }
  }
}

ErrorEstimate wilson_estimate(std::uint64_t errors, std::uint64_t trials) {
  if (trials == 0) throw ValidationError("wilson_estimate: trials must be >= 1");
  if (errors > trials) {
    throw ValidationError("wilson_estimate: errors exceed trials");
  }
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / t;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / t;
  const double center = (p + z2 / (2.0 * t)) / denom;
  const double half =
      kZ95 * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
  ErrorEstimate est;
  est.errors = errors;
  est.trials = trials;
  est.p_hat = p;
  // Clamp to [0,1] and force the bracket invariant ci_low <= p_hat <= ci_high,
  // which sqrt rounding can otherwise break by ~1e-17 at p_hat in {0,1}.
  est.ci_low = std::min(std::max(0.0, center - half), p);
  est.ci_high = std::max(std::min(1.0, center + half), p);
  return est;
}

ErrorEstimate estimate_error_rate(const Codebook& cb, const Dmc& ch,
                                  const JointPmf& system_joint, double eps,
                                  std::size_t trials,
                                  std::uint64_t trial_seed_base,
                                  std::size_t threads,
                                  const Codebook* receiver_cb,
                                  TrialCounts* counts_out) {
  if (trials < 1) throw ValidationError("estimate_error_rate: trials must be >= 1");
  const Codebook& receiver = receiver_cb ? *receiver_cb : cb;
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, trials));

  TrialCounts total;
  if (workers == 1) {
    total = run_trial_range(cb, receiver, ch, system_joint, eps,
                            trial_seed_base, 0, trials);
  } else {
    std::vector<TrialCounts> partial(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (trials + workers - 1) / workers;
    for (std::size_t k = 0; k < workers; ++k) {
      const std::size_t begin = k * chunk;
      const std::size_t end = std::min(trials, begin + chunk);
      pool.emplace_back([&, k, begin, end] {
        partial[k] = run_trial_range(cb, receiver, ch, system_joint, eps,
                                     trial_seed_base, begin, end);
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& p : partial) {
      total.decoded_correct += p.decoded_correct;
      total.decoded_wrong += p.decoded_wrong;
      total.none_typical += p.none_typical;
      total.ambiguous += p.ambiguous;
    }
  }
  if (counts_out) *counts_out = total;
  const std::uint64_t errors =
      total.decoded_wrong + total.none_typical + total.ambiguous;
  return wilson_estimate(errors, trials);
}

ExperimentResult run_achievability_experiment(
    const ExperimentConfig& cfg,
    const std::function<void(const ExperimentRow&)>& on_row) {
  cfg.validate();
  const JointPmf joint = assemble_system_joint(
      cfg.system.p_s, cfg.system.p_x_given_s, cfg.system.channel);
  ExperimentResult result;
  result.quantities = info_quantities(joint);
  const std::size_t workers = resolve_threads(cfg.threads);

  const std::uint64_t cb_root = derive_seed(cfg.master_seed, "codebook");
  const std::uint64_t trial_root = derive_seed(cfg.master_seed, "trials");

  for (std::size_t i = 0; i < cfg.blocklengths.size(); ++i) {
    const std::size_t n = cfg.blocklengths[i];
    const auto [w_count, mps] =
        cfg.schedule.empty() ? SizeSchedule{cfg.num_semantics, cfg.msgs_per_semantic}
                             : cfg.schedule[i];

    ExperimentRow row;
    row.n = n;
    row.seed = derive_seed(cb_root, static_cast<std::uint64_t>(n));
    const std::uint64_t trial_base_n =
        derive_seed(trial_root, static_cast<std::uint64_t>(n));

    std::uint64_t errors = 0;
    const std::size_t batches = cfg.codebooks_per_point;
    double r = 0.0;
    double r_prime = 0.0;
    for (std::size_t b = 0; b < batches; ++b) {
      CodebookParams params;
      params.p_s = cfg.system.p_s;
      params.p_x_given_s = cfg.system.p_x_given_s;
      params.n = n;
      params.num_semantics = w_count;
      params.msgs_per_semantic = mps;
      params.seed = batches == 1
                        ? row.seed
                        : derive_seed(row.seed, static_cast<std::uint64_t>(b));
      const Codebook cb = generate_codebook(params);
      r = cb.semantic_rate();
      r_prime = cb.message_rate();
      const std::size_t batch_trials =
          cfg.trials / batches + (b < cfg.trials % batches ? 1 : 0);
      if (batch_trials == 0) continue;
      const std::uint64_t batch_seed =
          batches == 1 ? trial_base_n
                       : derive_seed(trial_base_n, static_cast<std::uint64_t>(b));
      const ErrorEstimate est =
          estimate_error_rate(cb, cfg.system.channel, joint, cfg.eps,
                              batch_trials, batch_seed, workers);
      errors += est.errors;
    }

    row.r = r;
    row.r_prime = r_prime;
    row.est = wilson_estimate(errors, cfg.trials);
    const RatePoint pt{row.r, row.r_prime};
    row.in_theorem = theorem_region_membership(result.quantities, pt);
    const ProofMembership pm = proof_region_membership(result.quantities, pt);
    row.in_proof = pm.member;
    for (std::size_t v = 0; v < pm.violated.size(); ++v) {
      if (v > 0) row.violated += ';';
      row.violated += pm.violated[v];
    }

    result.rows.push_back(row);
    if (on_row) on_row(result.rows.back());
  }
  return result;
}

MismatchDemoResult run_mismatch_demo(const ExperimentConfig& cfg,
                                     std::span<const std::size_t> sem_permutation) {
  cfg.validate();
  if (!cfg.schedule.empty()) {
    throw ValidationError("mismatch demo: per-n schedules not supported");
  }
  const JointPmf joint = assemble_system_joint(
      cfg.system.p_s, cfg.system.p_x_given_s, cfg.system.channel);
  const std::size_t n = cfg.blocklengths.front();
  const std::size_t workers = resolve_threads(cfg.threads);

  CodebookParams params;
  params.p_s = cfg.system.p_s;
  params.p_x_given_s = cfg.system.p_x_given_s;
  params.n = n;
  params.num_semantics = cfg.num_semantics;
  params.msgs_per_semantic = cfg.msgs_per_semantic;
  params.seed = derive_seed(derive_seed(cfg.master_seed, "codebook"),
                            static_cast<std::uint64_t>(n));
  const Codebook cb = generate_codebook(params);
  const Codebook mismatched = apply_codebook_mismatch(cb, sem_permutation);
  const std::vector<std::size_t> inv = inverse_permutation(sem_permutation);
  const Codebook realigned = apply_codebook_mismatch(mismatched, inv);

  const std::uint64_t trial_base =
      derive_seed(derive_seed(cfg.master_seed, "trials"),
                  static_cast<std::uint64_t>(n));

  MismatchDemoResult out;
  out.n = n;
  out.r = cb.semantic_rate();
  out.r_prime = cb.message_rate();
  out.baseline = estimate_error_rate(cb, cfg.system.channel, joint, cfg.eps,
                                     cfg.trials, trial_base, workers);
  out.mismatched =
      estimate_error_rate(cb, cfg.system.channel, joint, cfg.eps, cfg.trials,
                          trial_base, workers, &mismatched);
  out.realigned =
      estimate_error_rate(cb, cfg.system.channel, joint, cfg.eps, cfg.trials,
                          trial_base, workers, &realigned);
  return out;
}

void write_experiment_csv_header(std::ostream& os) {
  os << "n,R_bits,Rp_bits,in_theorem,in_proof,violated,errors,trials,"
        "p_hat,ci_low,ci_high,seed\n";
}

void write_experiment_csv_row(std::ostream& os, const ExperimentRow& row) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g,%d,%d,", row.n, row.r,
                row.r_prime, row.in_theorem ? 1 : 0, row.in_proof ? 1 : 0);
  os << buf << row.violated;
  std::snprintf(buf, sizeof buf, ",%llu,%llu,%.12g,%.12g,%.12g,%llu\n",
                static_cast<unsigned long long>(row.est.errors),
                static_cast<unsigned long long>(row.est.trials), row.est.p_hat,
                row.est.ci_low, row.est.ci_high,
                static_cast<unsigned long long>(row.seed));
  os << buf;
}

void write_experiment_csv(std::ostream& os,
                          const std::vector<ExperimentRow>& rows) {
  write_experiment_csv_header(os);
  for (const auto& row : rows) write_experiment_csv_row(os, row);
}

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SEMCOM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

}  // namespace semcom
