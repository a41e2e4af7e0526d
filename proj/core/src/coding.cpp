#include "semcom/coding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semcom/errors.hpp"
#include "semcom/typicality.hpp"

namespace semcom {

namespace {

constexpr std::size_t kMaxLetterAlphabet = 256;  // Letter is one byte

Seq draw_iid(const Pmf& p, std::size_t n, Rng& rng) {
  Seq seq(n);
  for (std::size_t i = 0; i < n; ++i) {
    seq[i] = static_cast<Letter>(rng.sample_pmf(p.probs));
  }
  return seq;
}

Seq draw_conditioned(const ConditionalPmf& p_x_given_s,
                     std::span<const Letter> s_word, Rng& rng) {
  Seq seq(s_word.size());
  std::vector<double> row(p_x_given_s.out_size);
  for (std::size_t i = 0; i < s_word.size(); ++i) {
    const std::size_t base = static_cast<std::size_t>(s_word[i]) * p_x_given_s.out_size;
    std::copy_n(p_x_given_s.probs.begin() + static_cast<std::ptrdiff_t>(base),
                p_x_given_s.out_size, row.begin());
    seq[i] = static_cast<Letter>(rng.sample_pmf(row));
  }
  return seq;
}

// Same criterion as is_jointly_typical3 but with a caller-owned tally buffer
// and a fast reject on zero-probability tuples (which can never be typical).
bool triple_typical_scratch(std::span<const Letter> s, std::span<const Letter> x,
                            std::span<const Letter> y, const JointPmf& j,
                            double eps, std::vector<std::uint64_t>& counts) {
  const std::size_t n = s.size();
  std::fill(counts.begin(), counts.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t cell =
        (static_cast<std::size_t>(s[i]) * j.dims[1] + x[i]) * j.dims[2] + y[i];
    if (j.probs[cell] == 0.0) return false;
    ++counts[cell];
  }
  for (std::size_t cell = 0; cell < counts.size(); ++cell) {
    const double np = static_cast<double>(n) * j.probs[cell];
    if (std::abs(static_cast<double>(counts[cell]) - np) > eps * np) {
      return false;
    }
  }
  return true;
}

}  // namespace

void CodebookParams::validate() const {
  p_s.validate("p_s");
  p_x_given_s.validate("p_x_given_s");
  if (p_x_given_s.given_size != p_s.size()) {
    throw ValidationError("codebook: p_x_given_s expects " +
                          std::to_string(p_x_given_s.given_size) +
                          " semantic letters, p_s has " +
                          std::to_string(p_s.size()));
  }
  if (p_s.size() > kMaxLetterAlphabet ||
      p_x_given_s.out_size > kMaxLetterAlphabet) {
    throw ValidationError("codebook: alphabets above 256 letters unsupported");
  }
  if (n < 1) throw ValidationError("codebook: blocklength must be >= 1");
  if (num_semantics < 1) throw ValidationError("codebook: num_semantics must be >= 1");
  if (msgs_per_semantic < 1) {
    throw ValidationError("codebook: msgs_per_semantic must be >= 1");
  }
}

double Codebook::semantic_rate() const {
  return std::log2(static_cast<double>(num_semantics())) /
         static_cast<double>(n());
}

double Codebook::message_rate() const {
  return std::log2(static_cast<double>(msgs_per_semantic())) /
         static_cast<double>(n());
}

Codebook generate_codebook(const CodebookParams& params) {
  params.validate();
  const std::uint64_t letters =
      static_cast<std::uint64_t>(params.num_semantics) * params.n *
      (1 + static_cast<std::uint64_t>(params.msgs_per_semantic));
  if (letters > kMaxCodebookLetters) {
    throw SizeGuardError("codebook: " + std::to_string(letters) +
                         " letters exceed the " +
                         std::to_string(kMaxCodebookLetters) + " storage guard");
  }

  Codebook cb;
  cb.gen = params;
  cb.s_words.reserve(params.num_semantics);
  cb.x_words.reserve(params.num_semantics);
  Rng rng(derive_seed(params.seed, "codebook"));
  for (std::size_t w = 0; w < params.num_semantics; ++w) {
    cb.s_words.push_back(draw_iid(params.p_s, params.n, rng));
    auto& satellites = cb.x_words.emplace_back();
    satellites.reserve(params.msgs_per_semantic);
    for (std::size_t m = 0; m < params.msgs_per_semantic; ++m) {
      satellites.push_back(draw_conditioned(params.p_x_given_s, cb.s_words[w], rng));
    }
  }
  return cb;
}

std::pair<std::size_t, Seq> encode(const Codebook& cb, std::size_t w, Rng& rng) {
  if (w >= cb.num_semantics()) {
    throw ValidationError("encode: semantic " + std::to_string(w) +
                          " out of range [0," +
                          std::to_string(cb.num_semantics()) + ")");
  }
  const std::size_t m =
      static_cast<std::size_t>(rng.next_below(cb.msgs_per_semantic()));
  return {m, cb.x_words[w][m]};
}

DecodeOutcome decode(const Codebook& cb, std::span<const Letter> y_seq,
                     const JointPmf& system_joint, double eps) {
  if (system_joint.rank() != 3) {
    throw ValidationError("decode: rank-3 system joint required");
  }
  if (y_seq.size() != cb.n()) {
    throw ValidationError("decode: received length " +
                          std::to_string(y_seq.size()) + " != blocklength " +
                          std::to_string(cb.n()));
  }
  for (Letter y : y_seq) {
    if (y >= system_joint.dims[2]) {
      throw ValidationError("decode: output letter " + std::to_string(y) +
                            " outside alphabet of size " +
                            std::to_string(system_joint.dims[2]));
    }
  }
  const std::uint64_t candidates_total =
      static_cast<std::uint64_t>(cb.num_semantics()) * cb.msgs_per_semantic();
  if (candidates_total > kMaxDecodeCandidates) {
    throw SizeGuardError("decode: " + std::to_string(candidates_total) +
                         " (w,m) candidates exceed the " +
                         std::to_string(kMaxDecodeCandidates) + " search guard");
  }

  std::vector<std::uint64_t> counts(system_joint.table_size());
  DecodeOutcome out;
  for (std::size_t w = 0; w < cb.num_semantics(); ++w) {
    for (std::size_t m = 0; m < cb.msgs_per_semantic(); ++m) {
      if (triple_typical_scratch(cb.s_words[w], cb.x_words[w][m], y_seq,
                                 system_joint, eps, counts)) {
        out.candidates.push_back(w);
        break;
      }
    }
  }
  if (out.candidates.empty()) {
    out.status = DecodeStatus::NoneTypical;
  } else if (out.candidates.size() == 1) {
    out.status = DecodeStatus::Decoded;
    out.w_hat = out.candidates.front();
    out.candidates.clear();
  } else {
    out.status = DecodeStatus::Ambiguous;
  }
  return out;
}

AmbiguityReport transmitter_ambiguity_check(const Codebook& cb, double eps) {
  const JointPmf joint_sx = assemble_pair_joint(cb.gen.p_s, cb.gen.p_x_given_s);
  AmbiguityReport report;
  std::vector<bool> afflicted(cb.num_semantics(), false);
  for (std::size_t w = 0; w < cb.num_semantics(); ++w) {
    for (std::size_t m = 0; m < cb.msgs_per_semantic(); ++m) {
      const Seq& x = cb.x_words[w][m];
      if (!is_jointly_typical2(cb.s_words[w], x, joint_sx, eps)) {
        ++report.e0_count;
        afflicted[w] = true;
      }
      for (std::size_t other = 0; other < cb.num_semantics(); ++other) {
        if (other == w) continue;
        if (is_jointly_typical2(cb.s_words[other], x, joint_sx, eps)) {
          ++report.e1_count;
          afflicted[w] = true;
        }
      }
    }
  }
  const std::size_t hit = static_cast<std::size_t>(
      std::count(afflicted.begin(), afflicted.end(), true));
  report.p_et_estimate =
      static_cast<double>(hit) / static_cast<double>(cb.num_semantics());
  return report;
}

Codebook apply_codebook_mismatch(const Codebook& cb,
                                 std::span<const std::size_t> sem_permutation) {
  if (sem_permutation.size() != cb.num_semantics()) {
    throw ValidationError("mismatch: permutation size " +
                          std::to_string(sem_permutation.size()) +
                          " != num_semantics " +
                          std::to_string(cb.num_semantics()));
  }
  std::vector<bool> seen(cb.num_semantics(), false);
  for (std::size_t v : sem_permutation) {
    if (v >= cb.num_semantics() || seen[v]) {
      throw ValidationError("mismatch: not a permutation of semantic labels");
    }
    seen[v] = true;
  }
  Codebook out;
  out.gen = cb.gen;
  out.s_words.reserve(cb.num_semantics());
  out.x_words.reserve(cb.num_semantics());
  for (std::size_t w = 0; w < cb.num_semantics(); ++w) {
    out.s_words.push_back(cb.s_words[sem_permutation[w]]);
    out.x_words.push_back(cb.x_words[sem_permutation[w]]);
  }
  return out;
}

Codebook restrict_codebook(const Codebook& cb, std::size_t new_num_semantics) {
  if (new_num_semantics < 1 || new_num_semantics > cb.num_semantics()) {
    throw ValidationError("restrict: new size must be in [1," +
                          std::to_string(cb.num_semantics()) + "]");
  }
  Codebook out;
  out.gen = cb.gen;
  out.gen.num_semantics = new_num_semantics;
  out.s_words.assign(cb.s_words.begin(),
                     cb.s_words.begin() + static_cast<std::ptrdiff_t>(new_num_semantics));
  out.x_words.assign(cb.x_words.begin(),
                     cb.x_words.begin() + static_cast<std::ptrdiff_t>(new_num_semantics));
  return out;
}

Codebook extend_codebook(const Codebook& cb, std::size_t extra_semantics,
                         std::uint64_t extension_seed) {
  Codebook out = cb;
  out.gen.num_semantics = cb.num_semantics() + extra_semantics;
  const std::uint64_t letters =
      static_cast<std::uint64_t>(out.gen.num_semantics) * out.gen.n *
      (1 + static_cast<std::uint64_t>(out.gen.msgs_per_semantic));
  if (letters > kMaxCodebookLetters) {
    throw SizeGuardError("extend: " + std::to_string(letters) +
                         " letters exceed the " +
                         std::to_string(kMaxCodebookLetters) + " storage guard");
  }
  Rng rng(derive_seed(extension_seed, "extend"));
  for (std::size_t w = 0; w < extra_semantics; ++w) {
    out.s_words.push_back(draw_iid(cb.gen.p_s, cb.gen.n, rng));
    auto& satellites = out.x_words.emplace_back();
    for (std::size_t m = 0; m < cb.gen.msgs_per_semantic; ++m) {
      satellites.push_back(
          draw_conditioned(cb.gen.p_x_given_s, out.s_words.back(), rng));
    }
  }
  return out;
}

}  // namespace semcom
