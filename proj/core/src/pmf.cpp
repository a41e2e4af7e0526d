#include "semcom/pmf.hpp"

#include <cmath>
#include <numeric>

#include "semcom/channel.hpp"
#include "semcom/errors.hpp"

namespace semcom {

namespace {

void check_mass(std::span<const double> probs, std::string_view name) {
  if (probs.empty()) {
    throw ValidationError(std::string(name) + ": empty probability table");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) {  // also rejects NaN
      throw ValidationError(std::string(name) + ": negative or NaN entry " +
                            std::to_string(p));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kMassTol) {
    throw ValidationError(std::string(name) + ": mass " + std::to_string(sum) +
                          " not within 1e-12 of 1");
  }
}

double entropy_of(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return clip_nonneg(h);
}

}  // namespace

void Pmf::validate(std::string_view name) const { check_mass(probs, name); }

Pmf Pmf::uniform(std::size_t n) {
  return Pmf{std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

Pmf ConditionalPmf::row(std::size_t given) const {
  return Pmf{{probs.begin() + static_cast<std::ptrdiff_t>(given * out_size),
              probs.begin() + static_cast<std::ptrdiff_t>((given + 1) * out_size)}};
}

void ConditionalPmf::validate(std::string_view name) const {
  if (given_size == 0 || out_size == 0) {
    throw ValidationError(std::string(name) + ": zero dimension");
  }
  if (probs.size() != given_size * out_size) {
    throw ValidationError(std::string(name) + ": table size " +
                          std::to_string(probs.size()) + " != " +
                          std::to_string(given_size) + "x" +
                          std::to_string(out_size));
  }
  for (std::size_t g = 0; g < given_size; ++g) {
    check_mass(std::span(probs).subspan(g * out_size, out_size),
               std::string(name) + " row " + std::to_string(g));
  }
}

std::size_t JointPmf::table_size() const {
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  return total;
}

void JointPmf::validate(std::string_view name) const {
  if (rank() != 2 && rank() != 3) {
    throw ValidationError(std::string(name) + ": rank must be 2 or 3, got " +
                          std::to_string(rank()));
  }
  for (std::size_t d : dims) {
    if (d == 0) throw ValidationError(std::string(name) + ": zero dimension");
  }
  if (probs.size() != table_size()) {
    throw ValidationError(std::string(name) + ": table size " +
                          std::to_string(probs.size()) +
                          " does not match dims product " +
                          std::to_string(table_size()));
  }
  check_mass(probs, name);
}

Pmf JointPmf::marginal(std::size_t axis) const {
  std::vector<double> out(dims[axis], 0.0);
  std::size_t stride_after = 1;
  for (std::size_t d = axis + 1; d < rank(); ++d) stride_after *= dims[d];
  for (std::size_t i = 0; i < probs.size(); ++i) {
    out[(i / stride_after) % dims[axis]] += probs[i];
  }
  return Pmf{std::move(out)};
}

JointPmf JointPmf::marginal_pair(std::size_t axis_a, std::size_t axis_b) const {
  JointPmf out = zeros({dims[axis_a], dims[axis_b]});
  std::size_t stride[3];
  stride[2] = 1;
  stride[1] = dims[2];
  stride[0] = dims[1] * dims[2];
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const std::size_t ia = (i / stride[axis_a]) % dims[axis_a];
    const std::size_t ib = (i / stride[axis_b]) % dims[axis_b];
    out.at(ia, ib) += probs[i];
  }
  return out;
}

JointPmf JointPmf::zeros(std::vector<std::size_t> dims) {
  JointPmf j;
  j.dims = std::move(dims);
  j.probs.assign(j.table_size(), 0.0);
  return j;
}

double clip_nonneg(double v) {
  return (v < 0.0 && v >= -kMassTol) ? 0.0 : v;
}

double entropy(const Pmf& p) { return entropy_of(p.probs); }

double entropy(const JointPmf& j) { return entropy_of(j.probs); }

double conditional_entropy(const JointPmf& j, std::size_t given_axis) {
  return clip_nonneg(entropy(j) - entropy(j.marginal(given_axis)));
}

double mutual_information(const JointPmf& j) {
  return clip_nonneg(entropy(j.marginal(0)) + entropy(j.marginal(1)) -
                     entropy(j));
}

double conditional_mutual_information(const JointPmf& j, std::size_t target_a,
                                      std::size_t target_b,
                                      std::size_t given_axis) {
  // I(A;B|C) = H(A,C) + H(B,C) - H(C) - H(A,B,C)
  const double h_ac = entropy(j.marginal_pair(target_a, given_axis));
  const double h_bc = entropy(j.marginal_pair(target_b, given_axis));
  const double h_c = entropy(j.marginal(given_axis));
  return clip_nonneg(h_ac + h_bc - h_c - entropy(j));
}

double mutual_information_axis_vs_rest(const JointPmf& j, std::size_t axis) {
  const std::size_t rest_a = (axis == 0) ? 1 : 0;
  const std::size_t rest_b = (axis == 2) ? 1 : 2;
  const double h_rest = entropy(j.marginal_pair(rest_a, rest_b));
  return clip_nonneg(h_rest + entropy(j.marginal(axis)) - entropy(j));
}

JointPmf assemble_pair_joint(const Pmf& p_a, const ConditionalPmf& p_b_given_a) {
  p_a.validate("p_a");
  p_b_given_a.validate("p_b_given_a");
  if (p_b_given_a.given_size != p_a.size()) {
    throw ValidationError("assemble_pair_joint: conditional expects " +
                          std::to_string(p_b_given_a.given_size) +
                          " conditioning letters, pmf has " +
                          std::to_string(p_a.size()));
  }
  JointPmf j = JointPmf::zeros({p_a.size(), p_b_given_a.out_size});
  for (std::size_t a = 0; a < p_a.size(); ++a) {
    for (std::size_t b = 0; b < p_b_given_a.out_size; ++b) {
      j.at(a, b) = p_a[a] * p_b_given_a(a, b);
    }
  }
  return j;
}

JointPmf assemble_system_joint(const Pmf& p_s, const ConditionalPmf& p_x_given_s,
                               const Dmc& ch) {
  p_s.validate("p_s");
  p_x_given_s.validate("p_x_given_s");
  ch.validate("channel");
  if (p_x_given_s.given_size != p_s.size()) {
    throw ValidationError("assemble_system_joint: p_x_given_s expects " +
                          std::to_string(p_x_given_s.given_size) +
                          " semantics, p_s has " + std::to_string(p_s.size()));
  }
  if (ch.in_size != p_x_given_s.out_size) {
    throw ValidationError("assemble_system_joint: channel input size " +
                          std::to_string(ch.in_size) +
                          " != p_x_given_s output size " +
                          std::to_string(p_x_given_s.out_size));
  }
  JointPmf j = JointPmf::zeros({p_s.size(), ch.in_size, ch.out_size});
  for (std::size_t s = 0; s < p_s.size(); ++s) {
    for (std::size_t x = 0; x < ch.in_size; ++x) {
      const double psx = p_s[s] * p_x_given_s(s, x);
      if (psx == 0.0) continue;
      for (std::size_t y = 0; y < ch.out_size; ++y) {
        j.at(s, x, y) = psx * ch(x, y);
      }
    }
  }
  return j;
}

}  // namespace semcom
