#pragma once

#include <cstdint>
#include <span>

#include "semcom/pmf.hpp"

namespace semcom {

struct TypicalityParams {
  double epsilon = 0.2;
  std::size_t n = 1;

  void validate() const;
};

// Exhaustive enumeration refuses instances with more than 2^24 sequences.
inline constexpr std::uint64_t kMaxEnumeration = std::uint64_t{1} << 24;

// Empirical letter frequencies pi(a) = count(a)/n.
Pmf empirical_type(std::span<const Letter> seq, std::size_t alphabet_size);

// Robust (relative) strong typicality: |pi(a) - p(a)| <= eps * p(a) for every
// letter, which forces pi(a) = 0 wherever p(a) = 0. The joint variants apply
// the same criterion to the empirical type of letter tuples.
bool is_typical(std::span<const Letter> seq, const Pmf& p, double eps);
bool is_jointly_typical2(std::span<const Letter> a_seq,
                         std::span<const Letter> b_seq, const JointPmf& j,
                         double eps);
bool is_jointly_typical3(std::span<const Letter> s_seq,
                         std::span<const Letter> x_seq,
                         std::span<const Letter> y_seq, const JointPmf& j,
                         double eps);

struct TypicalSetResult {
  std::uint64_t count = 0;
  std::vector<Seq> sequences;  // populated only when collect was requested
};

// Exact typical-set size by exhaustive scan over alphabet^n sequences.
TypicalSetResult enumerate_typical_set(const Pmf& p, std::size_t n, double eps,
                                       bool collect = false);

// Exact count of x-sequences such that (s_seq, x) is jointly typical under the
// rank-2 joint. Oracle for the 2^{n(1+eps)H(X|S)} conditional-set bound.
TypicalSetResult enumerate_conditionally_typical(std::span<const Letter> s_seq,
                                                 const JointPmf& joint_sx,
                                                 double eps,
                                                 bool collect = false);

}  // namespace semcom
