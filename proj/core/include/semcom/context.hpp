#pragma once

#include <string>
#include <vector>

#include "semcom/pmf.hpp"
#include "semcom/rng.hpp"

namespace semcom {

// A context: a labeled partition of the message set {0,...,num_messages-1}
// into num_semantics blocks of exactly block_size messages each; block w is
// the set of messages expressing semantic w.
struct ContextPartition {
  std::size_t num_messages = 0;
  std::size_t num_semantics = 0;
  std::size_t block_size = 0;
  std::vector<std::size_t> block_of;                 // message -> semantic
  std::vector<std::vector<std::size_t>> members_of;  // semantic -> sorted messages

  void validate() const;

  // Builds a partition from the message->semantic map, deriving members_of
  // and checking the equal-block invariants.
  static ContextPartition from_block_of(std::vector<std::size_t> block_of);
};

struct PartitionCount {
  std::string exact_decimal;  // exact multinomial coefficient
  double log2_value;
};

// Number of labeled equal-block partitions:
// num_messages! / (block_size!)^(num_messages/block_size).
PartitionCount count_partitions(std::size_t num_messages, std::size_t block_size);

// Uniform draw over all labeled equal-block partitions.
ContextPartition sample_context(std::size_t num_messages, std::size_t block_size,
                                Rng& rng);

std::size_t semantics_of_message(const ContextPartition& q, std::size_t m);

// Exact H(W|M) in bits of the joint induced by: draw a context by weight, a
// semantic by p_w, and a message uniformly inside the semantic's block.
// Computed as sum_m p(m) H(W|M=m) so degenerate columns contribute exactly 0.
double ambiguity_entropy(const std::vector<ContextPartition>& contexts,
                         const Pmf& weights, const Pmf& p_w);

}  // namespace semcom
