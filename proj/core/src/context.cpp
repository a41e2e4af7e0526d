#include "semcom/context.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

void check_divisible(std::size_t num_messages, std::size_t block_size) {
  if (num_messages == 0 || block_size == 0) {
    throw ValidationError("partition: sizes must be >= 1");
  }
  if (num_messages % block_size != 0) {
    throw ValidationError("partition: block size " + std::to_string(block_size) +
                          " does not divide " + std::to_string(num_messages) +
                          " messages");
  }
}

}  // namespace

void ContextPartition::validate() const {
  check_divisible(num_messages, block_size);
  if (num_semantics * block_size != num_messages) {
    throw ValidationError("partition: num_semantics * block_size != num_messages");
  }
  if (block_of.size() != num_messages || members_of.size() != num_semantics) {
    throw ValidationError("partition: map sizes inconsistent with dimensions");
  }
  std::vector<std::size_t> seen(num_messages, 0);
  for (std::size_t w = 0; w < num_semantics; ++w) {
    if (members_of[w].size() != block_size) {
      throw ValidationError("partition: block " + std::to_string(w) +
                            " has size " + std::to_string(members_of[w].size()) +
                            ", expected " + std::to_string(block_size));
    }
    if (!std::is_sorted(members_of[w].begin(), members_of[w].end())) {
      throw ValidationError("partition: members_of lists must be sorted");
    }
    for (std::size_t m : members_of[w]) {
      if (m >= num_messages) {
        throw ValidationError("partition: message index out of range");
      }
      if (++seen[m] > 1) {
        throw ValidationError("partition: message " + std::to_string(m) +
                              " appears in multiple blocks");
      }
      if (block_of[m] != w) {
        throw ValidationError("partition: block_of and members_of disagree at message " +
                              std::to_string(m));
      }
    }
  }
}

ContextPartition ContextPartition::from_block_of(std::vector<std::size_t> block_of) {
  ContextPartition q;
  q.num_messages = block_of.size();
  if (q.num_messages == 0) throw ValidationError("partition: empty block_of");
  q.num_semantics = *std::max_element(block_of.begin(), block_of.end()) + 1;
  q.block_of = std::move(block_of);
  q.members_of.assign(q.num_semantics, {});
  for (std::size_t m = 0; m < q.num_messages; ++m) {
    q.members_of[q.block_of[m]].push_back(m);
  }
  if (q.members_of[0].empty()) throw ValidationError("partition: empty block");
  q.block_size = q.members_of[0].size();
  q.validate();
  return q;
}

PartitionCount count_partitions(std::size_t num_messages, std::size_t block_size) {
  check_divisible(num_messages, block_size);
  const std::size_t k = num_messages / block_size;

  namespace mp = boost::multiprecision;
  mp::cpp_int numerator = 1;
  for (std::size_t i = 2; i <= num_messages; ++i) numerator *= i;
  mp::cpp_int block_fact = 1;
  for (std::size_t i = 2; i <= block_size; ++i) block_fact *= i;
  mp::cpp_int denom = 1;
  for (std::size_t i = 0; i < k; ++i) denom *= block_fact;

  const mp::cpp_int quotient = numerator / denom;
  PartitionCount out;
  out.exact_decimal = quotient.str();
  const double ln2 = std::log(2.0);
  out.log2_value = (std::lgamma(static_cast<double>(num_messages) + 1.0) -
                    static_cast<double>(k) *
                        std::lgamma(static_cast<double>(block_size) + 1.0)) /
                   ln2;
  return out;
}

ContextPartition sample_context(std::size_t num_messages, std::size_t block_size,
                                Rng& rng) {
  check_divisible(num_messages, block_size);
  std::vector<std::size_t> order(num_messages);
  std::iota(order.begin(), order.end(), 0);
  // Fisher-Yates; every ordering is equally likely, and each labeled
  // partition corresponds to the same number (block_size!)^k of orderings,
  // so the induced partition is uniform.
  for (std::size_t i = num_messages - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i + 1));
    std::swap(order[i], order[j]);
  }

  ContextPartition q;
  q.num_messages = num_messages;
  q.block_size = block_size;
  q.num_semantics = num_messages / block_size;
  q.block_of.assign(num_messages, 0);
  q.members_of.assign(q.num_semantics, {});
  for (std::size_t w = 0; w < q.num_semantics; ++w) {
    auto& block = q.members_of[w];
    block.assign(order.begin() + static_cast<std::ptrdiff_t>(w * block_size),
                 order.begin() + static_cast<std::ptrdiff_t>((w + 1) * block_size));
    std::sort(block.begin(), block.end());
    for (std::size_t m : block) q.block_of[m] = w;
  }
  return q;
}

std::size_t semantics_of_message(const ContextPartition& q, std::size_t m) {
  if (m >= q.num_messages) {
    throw ValidationError("semantics_of_message: message " + std::to_string(m) +
                          " out of range [0," + std::to_string(q.num_messages) +
                          ")");
  }
  return q.block_of[m];
}

double ambiguity_entropy(const std::vector<ContextPartition>& contexts,
                         const Pmf& weights, const Pmf& p_w) {
  if (contexts.empty()) throw ValidationError("ambiguity_entropy: no contexts");
  weights.validate("context weights");
  p_w.validate("p_w");
  if (weights.size() != contexts.size()) {
    throw ValidationError("ambiguity_entropy: weights size != number of contexts");
  }
  const std::size_t num_messages = contexts[0].num_messages;
  const std::size_t num_semantics = contexts[0].num_semantics;
  if (p_w.size() != num_semantics) {
    throw ValidationError("ambiguity_entropy: p_w size != num_semantics");
  }
  for (const auto& q : contexts) {
    q.validate();
    if (q.num_messages != num_messages || q.num_semantics != num_semantics) {
      throw ValidationError("ambiguity_entropy: contexts have mismatched dimensions");
    }
  }

  // p(w,m) = sum_q weight(q) p_w(w) [m in block_q(w)] / block_size
  std::vector<double> joint(num_semantics * num_messages, 0.0);
  for (std::size_t qi = 0; qi < contexts.size(); ++qi) {
    const auto& q = contexts[qi];
    const double wq = weights[qi] / static_cast<double>(q.block_size);
    if (wq == 0.0) continue;
    for (std::size_t w = 0; w < num_semantics; ++w) {
      for (std::size_t m : q.members_of[w]) {
        joint[w * num_messages + m] += wq * p_w[w];
      }
    }
  }

  double h = 0.0;
  for (std::size_t m = 0; m < num_messages; ++m) {
    double pm = 0.0;
    for (std::size_t w = 0; w < num_semantics; ++w) {
      pm += joint[w * num_messages + m];
    }
    if (pm == 0.0) continue;
    double h_col = 0.0;
    for (std::size_t w = 0; w < num_semantics; ++w) {
      const double pw = joint[w * num_messages + m] / pm;
      if (pw > 0.0) h_col -= pw * std::log2(pw);
    }
    h += pm * h_col;
  }
  return clip_nonneg(h);
}

}  // namespace semcom
