#include "semcom/typicality.hpp"

#include <cmath>
#include <string>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

// Counts of each letter (or tuple index), validated against alphabet_size.
std::vector<std::uint64_t> tally(std::span<const Letter> seq,
                                 std::size_t alphabet_size) {
  if (seq.empty()) throw ValidationError("empirical type: empty sequence");
  std::vector<std::uint64_t> counts(alphabet_size, 0);
  for (Letter a : seq) {
    if (a >= alphabet_size) {
      throw ValidationError("letter " + std::to_string(a) +
                            " outside alphabet of size " +
                            std::to_string(alphabet_size));
    }
    ++counts[a];
  }
  return counts;
}

// |count/n - p| <= eps*p for every cell, in the count domain to avoid
// needless division: |count - n*p| <= eps*n*p.
bool counts_typical(std::span<const std::uint64_t> counts,
                    std::span<const double> p, std::size_t n, double eps) {
  for (std::size_t a = 0; a < counts.size(); ++a) {
    const double np = static_cast<double>(n) * p[a];
    if (std::abs(static_cast<double>(counts[a]) - np) > eps * np) return false;
  }
  return true;
}

std::uint64_t checked_pow(std::size_t base, std::size_t exp,
                          std::string_view what) {
  long double v = std::pow(static_cast<long double>(base),
                           static_cast<long double>(exp));
  if (v > static_cast<long double>(kMaxEnumeration)) {
    throw SizeGuardError(std::string(what) + ": " + std::to_string(base) +
                         "^" + std::to_string(exp) + " sequences exceed the " +
                         std::to_string(kMaxEnumeration) + " enumeration guard");
  }
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < exp; ++i) total *= base;
  return total;
}

}  // namespace

void TypicalityParams::validate() const {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
  if (n < 1) throw ValidationError("n must be >= 1");
}

Pmf empirical_type(std::span<const Letter> seq, std::size_t alphabet_size) {
  const auto counts = tally(seq, alphabet_size);
  std::vector<double> probs(alphabet_size);
  for (std::size_t a = 0; a < alphabet_size; ++a) {
    probs[a] = static_cast<double>(counts[a]) / static_cast<double>(seq.size());
  }
  return Pmf{std::move(probs)};
}

bool is_typical(std::span<const Letter> seq, const Pmf& p, double eps) {
  const auto counts = tally(seq, p.size());
  return counts_typical(counts, p.probs, seq.size(), eps);
}

bool is_jointly_typical2(std::span<const Letter> a_seq,
                         std::span<const Letter> b_seq, const JointPmf& j,
                         double eps) {
  if (j.rank() != 2) throw ValidationError("joint typicality: rank-2 joint required");
  if (a_seq.size() != b_seq.size()) {
    throw ValidationError("joint typicality: sequence lengths differ");
  }
  if (a_seq.empty()) throw ValidationError("joint typicality: empty sequences");
  std::vector<std::uint64_t> counts(j.table_size(), 0);
  for (std::size_t i = 0; i < a_seq.size(); ++i) {
    if (a_seq[i] >= j.dims[0] || b_seq[i] >= j.dims[1]) {
      throw ValidationError("joint typicality: letter outside joint alphabet");
    }
    ++counts[a_seq[i] * j.dims[1] + b_seq[i]];
  }
  return counts_typical(counts, j.probs, a_seq.size(), eps);
}

bool is_jointly_typical3(std::span<const Letter> s_seq,
                         std::span<const Letter> x_seq,
                         std::span<const Letter> y_seq, const JointPmf& j,
                         double eps) {
  if (j.rank() != 3) throw ValidationError("joint typicality: rank-3 joint required");
  if (s_seq.size() != x_seq.size() || x_seq.size() != y_seq.size()) {
    throw ValidationError("joint typicality: sequence lengths differ");
  }
  if (s_seq.empty()) throw ValidationError("joint typicality: empty sequences");
  std::vector<std::uint64_t> counts(j.table_size(), 0);
  for (std::size_t i = 0; i < s_seq.size(); ++i) {
    if (s_seq[i] >= j.dims[0] || x_seq[i] >= j.dims[1] ||
        y_seq[i] >= j.dims[2]) {
      throw ValidationError("joint typicality: letter outside joint alphabet");
    }
    ++counts[(s_seq[i] * j.dims[1] + x_seq[i]) * j.dims[2] + y_seq[i]];
  }
  return counts_typical(counts, j.probs, s_seq.size(), eps);
}

TypicalSetResult enumerate_typical_set(const Pmf& p, std::size_t n, double eps,
                                       bool collect) {
  p.validate();
  if (n < 1) throw ValidationError("enumerate_typical_set: n must be >= 1");
  checked_pow(p.size(), n, "enumerate_typical_set");

  TypicalSetResult result;
  Seq seq(n, 0);
  std::vector<std::uint64_t> counts(p.size(), 0);
  counts[0] = n;
  for (;;) {
    if (counts_typical(counts, p.probs, n, eps)) {
      ++result.count;
      if (collect) result.sequences.push_back(seq);
    }
    // Odometer increment, keeping the letter tally in sync.
    std::size_t pos = n;
    bool carried_out = true;
    while (pos > 0) {
      --pos;
      --counts[seq[pos]];
      if (seq[pos] + 1u < p.size()) {
        ++seq[pos];
        ++counts[seq[pos]];
        carried_out = false;
        break;
      }
      seq[pos] = 0;
      ++counts[0];
    }
    if (carried_out) return result;
  }
}

TypicalSetResult enumerate_conditionally_typical(std::span<const Letter> s_seq,
                                                 const JointPmf& joint_sx,
                                                 double eps, bool collect) {
  joint_sx.validate("joint_sx");
  if (joint_sx.rank() != 2) {
    throw ValidationError("enumerate_conditionally_typical: rank-2 joint required");
  }
  const std::size_t n = s_seq.size();
  if (n == 0) throw ValidationError("enumerate_conditionally_typical: empty s sequence");
  const std::size_t x_size = joint_sx.dims[1];
  checked_pow(x_size, n, "enumerate_conditionally_typical");
  for (Letter s : s_seq) {
    if (s >= joint_sx.dims[0]) {
      throw ValidationError("enumerate_conditionally_typical: s letter outside alphabet");
    }
  }

  TypicalSetResult result;
  Seq x(n, 0);
  std::vector<std::uint64_t> counts(joint_sx.table_size(), 0);
  const auto cell = [&](std::size_t i) {
    return static_cast<std::size_t>(s_seq[i]) * x_size + x[i];
  };
  for (std::size_t i = 0; i < n; ++i) ++counts[cell(i)];
  for (;;) {
    if (counts_typical(counts, joint_sx.probs, n, eps)) {
      ++result.count;
      if (collect) result.sequences.push_back(x);
    }
    std::size_t pos = n;
    bool carried_out = true;
    while (pos > 0) {
      --pos;
      --counts[cell(pos)];
      if (x[pos] + 1u < x_size) {
        ++x[pos];
        ++counts[cell(pos)];
        carried_out = false;
        break;
      }
      x[pos] = 0;
      ++counts[cell(pos)];
    }
    if (carried_out) return result;
  }
}

}  // namespace semcom
