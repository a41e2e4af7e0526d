#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "semcom/errors.hpp"
#include "semcom/experiments.hpp"
#include "testutil.hpp"

using namespace semcom;
using namespace testutil;

namespace {

SystemSpec running_system(Dmc ch) {
  return SystemSpec{running_p_s(), running_p_x_given_s(), std::move(ch)};
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.system = running_system(make_qsc(4, 0.02));
  cfg.blocklengths = {4, 8};
  cfg.num_semantics = 2;
  cfg.msgs_per_semantic = 2;
  cfg.eps = 0.2;
  cfg.trials = 60;
  cfg.master_seed = 1234;
  cfg.threads = 1;
  return cfg;
}

// Codebook whose words have exactly balanced types (always decodable on a
// clean channel).
Codebook perfect_codebook() {
  Codebook cb;
  cb.gen = CodebookParams{running_p_s(), running_p_x_given_s(), 4, 2, 1, 0};
  cb.s_words = {{0, 0, 1, 1}, {1, 1, 0, 0}};
  cb.x_words = {{{0, 1, 2, 3}}, {{2, 3, 0, 1}}};
  return cb;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

TEST_CASE("wilson interval matches reference values") {
  const ErrorEstimate none = wilson_estimate(0, 100);
  CHECK(none.p_hat == 0.0);
  CHECK(none.ci_low == 0.0);
  CHECK(none.ci_high == doctest::Approx(0.03699349820698568).epsilon(1e-12));

  const ErrorEstimate mid = wilson_estimate(30, 100);
  CHECK(mid.p_hat == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(mid.ci_low == doctest::Approx(0.2189488529493276).epsilon(1e-12));
  CHECK(mid.ci_high == doctest::Approx(0.3958485463334666).epsilon(1e-12));

  const ErrorEstimate all = wilson_estimate(2000, 2000);
  CHECK(all.p_hat == 1.0);
  CHECK(all.ci_low == doctest::Approx(0.9980829527187469).epsilon(1e-12));
  CHECK(all.ci_high == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(wilson_estimate(1, 0), ValidationError);
  CHECK_THROWS_AS(wilson_estimate(5, 4), ValidationError);
}

TEST_CASE("wilson interval always brackets the point estimate") {
  for (std::uint64_t trials : {1ull, 7ull, 100ull, 5000ull}) {
    for (std::uint64_t errors = 0; errors <= trials;
         errors += std::max<std::uint64_t>(1, trials / 7)) {
      const ErrorEstimate est = wilson_estimate(errors, trials);
      CHECK(est.ci_low >= 0.0);
      CHECK(est.ci_high <= 1.0);
      CHECK(est.ci_low <= est.p_hat);
      CHECK(est.p_hat <= est.ci_high);
    }
  }
}

TEST_CASE("config validation covers every field") {
  CHECK_NOTHROW(small_config().validate());

  ExperimentConfig cfg = small_config();
  cfg.blocklengths.clear();
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  cfg = small_config();
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  cfg = small_config();
  cfg.eps = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  cfg = small_config();
  cfg.num_semantics = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  cfg = small_config();
  cfg.codebooks_per_point = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  cfg = small_config();
  cfg.schedule = {SizeSchedule{2, 1}};
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  cfg = small_config();
  cfg.system.channel = make_bsc(0.1);  // |X| = 4 but channel expects 2
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  cfg = small_config();
  cfg.num_semantics = std::size_t{1} << 13;
  cfg.msgs_per_semantic = std::size_t{1} << 13;
  CHECK_THROWS_AS(cfg.validate(), SizeGuardError);
}

TEST_CASE("a perfect codebook on a clean channel never errs") {
  const Codebook cb = perfect_codebook();
  const JointPmf joint = assemble_system_joint(
      running_p_s(), running_p_x_given_s(), make_identity(4));
  TrialCounts counts;
  const ErrorEstimate est = estimate_error_rate(
      cb, make_identity(4), joint, 0.2, 50, 777, 1, nullptr, &counts);
  CHECK(est.errors == 0);
  CHECK(est.p_hat == 0.0);
  CHECK(counts.decoded_correct == 50);
  CHECK(counts.decoded_wrong + counts.none_typical + counts.ambiguous == 0);
}

TEST_CASE("error estimates are independent of the thread count") {
  const Codebook cb = generate_codebook(
      CodebookParams{running_p_s(), running_p_x_given_s(), 8, 4, 2, 99});
  const Dmc ch = make_qsc(4, 0.02);
  const JointPmf joint =
      assemble_system_joint(running_p_s(), running_p_x_given_s(), ch);
  TrialCounts c1, c3;
  const ErrorEstimate one =
      estimate_error_rate(cb, ch, joint, 0.2, 200, 4242, 1, nullptr, &c1);
  const ErrorEstimate three =
      estimate_error_rate(cb, ch, joint, 0.2, 200, 4242, 3, nullptr, &c3);
  CHECK(one == three);
  CHECK(c1.decoded_correct == c3.decoded_correct);
  CHECK(c1.decoded_wrong == c3.decoded_wrong);
  CHECK(c1.none_typical == c3.none_typical);
  CHECK(c1.ambiguous == c3.ambiguous);
  CHECK(c1.decoded_correct + c1.decoded_wrong + c1.none_typical + c1.ambiguous ==
        200);

  CHECK_THROWS_AS(estimate_error_rate(cb, ch, joint, 0.2, 0, 1), ValidationError);
}

TEST_CASE("a swapped receiver codebook turns every decode into an error") {
  const Codebook cb = perfect_codebook();
  const Codebook swapped =
      apply_codebook_mismatch(cb, std::vector<std::size_t>{1, 0});
  const JointPmf joint = assemble_system_joint(
      running_p_s(), running_p_x_given_s(), make_identity(4));
  TrialCounts counts;
  const ErrorEstimate est = estimate_error_rate(
      cb, make_identity(4), joint, 0.2, 40, 777, 1, &swapped, &counts);
  CHECK(est.p_hat == 1.0);
  CHECK(counts.decoded_wrong == 40);
}

TEST_CASE("achievability runs are reproducible and fully described") {
  const ExperimentConfig cfg = small_config();
  std::vector<std::size_t> seen;
  const ExperimentResult result = run_achievability_experiment(
      cfg, [&](const ExperimentRow& row) { seen.push_back(row.n); });

  REQUIRE(result.rows.size() == 2);
  CHECK((seen == std::vector<std::size_t>{4, 8}));
  CHECK(result.quantities.i_sx == doctest::Approx(1.0).epsilon(1e-12));

  const std::uint64_t cb_root = derive_seed(cfg.master_seed, "codebook");
  for (std::size_t i = 0; i < 2; ++i) {
    const ExperimentRow& row = result.rows[i];
    CHECK(row.n == cfg.blocklengths[i]);
    CHECK(row.r == std::log2(2.0) / static_cast<double>(row.n));
    CHECK(row.r_prime == row.r);
    CHECK(row.est.trials == 60);
    CHECK(row.est.errors <= 60);
    CHECK(row.seed == derive_seed(cb_root, static_cast<std::uint64_t>(row.n)));
    const RatePoint pt{row.r, row.r_prime};
    CHECK(row.in_theorem == theorem_region_membership(result.quantities, pt));
    CHECK(row.in_proof == proof_region_membership(result.quantities, pt).member);
  }

  const ExperimentResult again = run_achievability_experiment(cfg);
  REQUIRE(again.rows.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(again.rows[i].est == result.rows[i].est);
    CHECK(again.rows[i].seed == result.rows[i].seed);
  }

  ExperimentConfig threaded = cfg;
  threaded.threads = 2;
  const ExperimentResult parallel = run_achievability_experiment(threaded);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(parallel.rows[i].est == result.rows[i].est);
  }
}

TEST_CASE("schedules override the codebook shape per blocklength") {
  ExperimentConfig cfg = small_config();
  cfg.schedule = {SizeSchedule{2, 1}, SizeSchedule{4, 2}};
  cfg.trials = 30;
  const ExperimentResult result = run_achievability_experiment(cfg);
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0].r == 0.25);
  CHECK(result.rows[0].r_prime == 0.0);
  CHECK(result.rows[1].r == 0.25);
  CHECK(result.rows[1].r_prime == 0.125);
}

TEST_CASE("codebook batching keeps the trial budget") {
  ExperimentConfig cfg = small_config();
  cfg.blocklengths = {4};
  cfg.trials = 10;
  cfg.codebooks_per_point = 3;
  const ExperimentResult result = run_achievability_experiment(cfg);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0].est.trials == 10);
  CHECK(result.rows[0].est.errors <= 10);

  // Still reproducible.
  const ExperimentResult again = run_achievability_experiment(cfg);
  CHECK(again.rows[0].est == result.rows[0].est);
}

TEST_CASE("mismatch demo: realignment restores the baseline exactly") {
  ExperimentConfig cfg;
  cfg.system = running_system(make_identity(4));
  cfg.blocklengths = {4};
  cfg.num_semantics = 4;
  cfg.msgs_per_semantic = 2;
  cfg.eps = 0.2;
  cfg.trials = 100;
  cfg.master_seed = 31;
  cfg.threads = 1;

  const std::vector<std::size_t> shift{1, 2, 3, 0};
  const MismatchDemoResult demo = run_mismatch_demo(cfg, shift);
  CHECK(demo.n == 4);
  CHECK(demo.r == 0.5);
  CHECK(demo.r_prime == 0.25);
  // Identical trial seed streams: realigning the receiver reproduces the
  // baseline outcome for outcome, not just in distribution.
  CHECK(demo.realigned == demo.baseline);
  // With disjoint conditional supports a shifted receiver can never recover
  // the sent label.
  CHECK(demo.mismatched.p_hat == 1.0);

  const std::vector<std::size_t> identity_map{0, 1, 2, 3};
  const MismatchDemoResult no_shift = run_mismatch_demo(cfg, identity_map);
  CHECK(no_shift.mismatched == no_shift.baseline);

  ExperimentConfig bad = cfg;
  bad.schedule = {SizeSchedule{4, 2}};
  CHECK_THROWS_AS(run_mismatch_demo(bad, shift), ValidationError);
}

TEST_CASE("experiment csv round-trips the row fields") {
  ExperimentRow row;
  row.n = 4;
  row.r = 0.25;
  row.r_prime = 0.125;
  row.in_theorem = true;
  row.in_proof = false;
  row.violated = "R'>=I(X;Y|S)";
  row.est = wilson_estimate(3, 100);
  row.seed = 77;

  std::ostringstream os;
  write_experiment_csv(os, {row});
  std::istringstream is(os.str());
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line ==
        "n,R_bits,Rp_bits,in_theorem,in_proof,violated,errors,trials,"
        "p_hat,ci_low,ci_high,seed");
  REQUIRE(std::getline(is, line));
  const auto fields = split_csv(line);
  REQUIRE(fields.size() == 12);
  CHECK(fields[0] == "4");
  CHECK(fields[1] == "0.25");
  CHECK(fields[2] == "0.125");
  CHECK(fields[3] == "1");
  CHECK(fields[4] == "0");
  CHECK(fields[5] == "R'>=I(X;Y|S)");
  CHECK(fields[6] == "3");
  CHECK(fields[7] == "100");
  CHECK(fields[8] == "0.03");
  CHECK(fields[11] == "77");
}

TEST_CASE("thread resolution prefers explicit requests over the environment") {
  CHECK(resolve_threads(3) == 3);

  unsetenv("SEMCOM_THREADS");
  CHECK(resolve_threads(0) == 1);

  setenv("SEMCOM_THREADS", "4", 1);
  CHECK(resolve_threads(0) == 4);
  CHECK(resolve_threads(2) == 2);

  setenv("SEMCOM_THREADS", "garbage", 1);
  CHECK(resolve_threads(0) == 1);
  setenv("SEMCOM_THREADS", "-2", 1);
  CHECK(resolve_threads(0) == 1);
  unsetenv("SEMCOM_THREADS");
}
