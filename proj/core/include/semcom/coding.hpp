#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "semcom/channel.hpp"
#include "semcom/pmf.hpp"
#include "semcom/rng.hpp"

namespace semcom {

// Hard ceilings for superposition codebooks and the exhaustive decoder
// search; exceeding either raises SizeGuardError.
inline constexpr std::uint64_t kMaxCodebookLetters = std::uint64_t{1} << 25;
inline constexpr std::uint64_t kMaxDecodeCandidates = std::uint64_t{1} << 24;

// Provenance of a codebook: regenerating from these fields reproduces its
// contents bit for bit.
struct CodebookParams {
  Pmf p_s;
  ConditionalPmf p_x_given_s;
  std::size_t n = 0;
  std::size_t num_semantics = 0;
  std::size_t msgs_per_semantic = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Superposition codebook: cloud centers s_words[w] drawn i.i.d. from p_s,
// satellites x_words[w][m] drawn letter-wise from p_x_given_s conditioned on
// the cloud center's letters.
struct Codebook {
  CodebookParams gen;
  std::vector<Seq> s_words;
  std::vector<std::vector<Seq>> x_words;

  std::size_t n() const { return gen.n; }
  std::size_t num_semantics() const { return s_words.size(); }
  std::size_t msgs_per_semantic() const { return gen.msgs_per_semantic; }

  double semantic_rate() const;  // R  = log2(num_semantics) / n
  double message_rate() const;   // R' = log2(msgs_per_semantic) / n
};

Codebook generate_codebook(const CodebookParams& params);

// Uniformly picks one of the semantic's satellites; returns (m, codeword).
std::pair<std::size_t, Seq> encode(const Codebook& cb, std::size_t w, Rng& rng);

enum class DecodeStatus : std::uint8_t { Decoded, NoneTypical, Ambiguous };

struct DecodeOutcome {
  DecodeStatus status = DecodeStatus::NoneTypical;
  std::size_t w_hat = 0;                // meaningful only when Decoded
  std::vector<std::size_t> candidates;  // >= 2 distinct entries when Ambiguous

  bool decoded_as(std::size_t w) const {
    return status == DecodeStatus::Decoded && w_hat == w;
  }
};

// Joint-typicality decoding: the unique w such that (s_words[w], x_words[w][m],
// y_seq) is jointly typical for some m. The recovered semantic codeword is
// cb.s_words[outcome.w_hat].
DecodeOutcome decode(const Codebook& cb, std::span<const Letter> y_seq,
                     const JointPmf& system_joint, double eps);

struct AmbiguityReport {
  std::uint64_t e0_count = 0;  // satellites not jointly typical with their own cloud
  std::uint64_t e1_count = 0;  // (satellite, foreign cloud) jointly typical pairs
  double p_et_estimate = 0.0;  // fraction of semantics hit by either event
};

// Transmitter-side audit over all satellites and all ordered cross pairings
// of satellites with foreign cloud centers.
AmbiguityReport transmitter_ambiguity_check(const Codebook& cb, double eps);

// Receiver-side codebook with cloud labels permuted (semantic channel noise):
// result cloud w holds the sender's cloud sem_permutation[w].
Codebook apply_codebook_mismatch(const Codebook& cb,
                                 std::span<const std::size_t> sem_permutation);

// Receiver knows only the first new_num_semantics semantics.
Codebook restrict_codebook(const Codebook& cb, std::size_t new_num_semantics);

// Receiver knows extra semantics the sender lacks; the appended clouds are
// drawn from the same pmfs with a seed derived from extension_seed.
Codebook extend_codebook(const Codebook& cb, std::size_t extra_semantics,
                         std::uint64_t extension_seed);

}  // namespace semcom
