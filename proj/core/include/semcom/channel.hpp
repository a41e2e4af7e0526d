#pragma once

#include <span>
#include <string>
#include <string_view>

#include "semcom/pmf.hpp"
#include "semcom/rng.hpp"

namespace semcom {

// Discrete memoryless channel p(y|x), one output pmf per input letter,
// row-major.
struct Dmc {
  std::size_t in_size = 0;
  std::size_t out_size = 0;
  std::vector<double> probs;

  double operator()(std::size_t x, std::size_t y) const {
    return probs[x * out_size + y];
  }
  Pmf row(std::size_t x) const;
  void validate(std::string_view name = "channel") const;
};

// Parameters for the built-in channel families. `q` is the alphabet size for
// identity/qsc; `param` is the bsc crossover, bec erasure, or qsc total flip
// probability (spread evenly over the q-1 wrong letters).
struct StandardChannelSpec {
  std::string kind;  // identity | bsc | bec | qsc
  std::size_t q = 2;
  double param = 0.0;
};

Dmc make_identity(std::size_t q);
Dmc make_bsc(double crossover);
Dmc make_bec(double erasure);  // outputs {0, 1, erasure = 2}
Dmc make_qsc(std::size_t q, double flip);
Dmc make_standard(const StandardChannelSpec& spec);

// Sends each input letter independently through the channel.
Seq transmit(std::span<const Letter> x_seq, const Dmc& ch, Rng& rng);

struct CapacityResult {
  double capacity_bits = 0.0;  // best certified lower bound
  double lower_bits = 0.0;
  double upper_bits = 0.0;
  Pmf input;  // achieves I(input; channel) = capacity_bits
  bool converged = false;
  std::size_t iterations = 0;
};

// Blahut–Arimoto with the classical bound certificate: stops when
// max_x D(W_x || c) - sum_x r_x D(W_x || c) <= tol. On non-convergence the
// result carries the best bounds seen and converged = false.
CapacityResult capacity_blahut_arimoto(const Dmc& ch, double tol = 1e-9,
                                       std::size_t max_iter = 100000);

}  // namespace semcom
