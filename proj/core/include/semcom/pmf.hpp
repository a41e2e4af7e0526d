#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace semcom {

struct Dmc;

// Normalization tolerance for probability mass and the floating-point guard
// below which slightly negative information quantities are clipped to zero.
inline constexpr double kMassTol = 1e-12;

// Letters of the finite alphabets handled throughout (desk-scale alphabets).
using Letter = std::uint8_t;
using Seq = std::vector<Letter>;

// Probability mass function over {0, ..., size()-1}.
struct Pmf {
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
  double operator[](std::size_t i) const { return probs[i]; }

  // Throws ValidationError unless non-empty, entrywise >= 0, and the total
  // mass is within kMassTol of 1.
  void validate(std::string_view name = "pmf") const;

  static Pmf uniform(std::size_t n);
};

// p(out | given), stored row-major: one Pmf over outputs per conditioning
// letter.
struct ConditionalPmf {
  std::size_t given_size = 0;
  std::size_t out_size = 0;
  std::vector<double> probs;

  double operator()(std::size_t given, std::size_t out) const {
    return probs[given * out_size + out];
  }
  Pmf row(std::size_t given) const;
  void validate(std::string_view name = "conditional pmf") const;
};

// Dense joint pmf over a product of 2 or 3 finite alphabets, row-major with
// the last axis fastest.
struct JointPmf {
  std::vector<std::size_t> dims;
  std::vector<double> probs;

  std::size_t rank() const { return dims.size(); }
  std::size_t table_size() const;

  double at(std::size_t a, std::size_t b) const {
    return probs[a * dims[1] + b];
  }
  double& at(std::size_t a, std::size_t b) {
    return probs[a * dims[1] + b];
  }
  double at(std::size_t a, std::size_t b, std::size_t c) const {
    return probs[(a * dims[1] + b) * dims[2] + c];
  }
  double& at(std::size_t a, std::size_t b, std::size_t c) {
    return probs[(a * dims[1] + b) * dims[2] + c];
  }

  void validate(std::string_view name = "joint pmf") const;

  Pmf marginal(std::size_t axis) const;
  // Rank-3 only: the 2-D joint over (axis_a, axis_b) in that order.
  JointPmf marginal_pair(std::size_t axis_a, std::size_t axis_b) const;

  static JointPmf zeros(std::vector<std::size_t> dims);
};

// Clips values within kMassTol below zero up to zero; anything else passes
// through untouched.
double clip_nonneg(double v);

// Shannon entropy in bits, 0*log 0 := 0.
double entropy(const Pmf& p);
double entropy(const JointPmf& j);

// Entropy of the remaining axes given one axis: H(rest | axis).
double conditional_entropy(const JointPmf& j, std::size_t given_axis);

// I(A;B) of a rank-2 joint.
double mutual_information(const JointPmf& j);

// I(target_a; target_b | given) of a rank-3 joint; the three axes must be a
// permutation of {0,1,2}.
double conditional_mutual_information(const JointPmf& j, std::size_t target_a,
                                      std::size_t target_b,
                                      std::size_t given_axis);

// I(axis; rest) of a rank-3 joint, e.g. axis=2 gives I(S,X;Y).
double mutual_information_axis_vs_rest(const JointPmf& j, std::size_t axis);

// p(a,b) = p_a(a) * p_b_given_a(b|a).
JointPmf assemble_pair_joint(const Pmf& p_a, const ConditionalPmf& p_b_given_a);

// p(s,x,y) = p_s(s) * p_x_given_s(x|s) * ch(y|x); Markov S-X-Y by
// construction.
JointPmf assemble_system_joint(const Pmf& p_s, const ConditionalPmf& p_x_given_s,
                               const Dmc& ch);

}  // namespace semcom
