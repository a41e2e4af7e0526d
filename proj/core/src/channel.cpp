#include "semcom/channel.hpp"

#include <algorithm>
#include <cmath>

#include "semcom/errors.hpp"

namespace semcom {

Pmf Dmc::row(std::size_t x) const {
  return Pmf{{probs.begin() + static_cast<std::ptrdiff_t>(x * out_size),
              probs.begin() + static_cast<std::ptrdiff_t>((x + 1) * out_size)}};
}

void Dmc::validate(std::string_view name) const {
  if (in_size == 0 || out_size == 0) {
    throw ValidationError(std::string(name) + ": zero dimension");
  }
  if (probs.size() != in_size * out_size) {
    throw ValidationError(std::string(name) + ": table size " +
                          std::to_string(probs.size()) + " != " +
                          std::to_string(in_size) + "x" +
                          std::to_string(out_size));
  }
  for (std::size_t x = 0; x < in_size; ++x) {
    row(x).validate(std::string(name) + " row " + std::to_string(x));
  }
}

Dmc make_identity(std::size_t q) {
  if (q < 1) throw ValidationError("identity channel: alphabet size must be >= 1");
  Dmc ch{q, q, std::vector<double>(q * q, 0.0)};
  for (std::size_t i = 0; i < q; ++i) ch.probs[i * q + i] = 1.0;
  return ch;
}

Dmc make_bsc(double crossover) {
  if (!(crossover >= 0.0 && crossover <= 1.0)) {
    throw ValidationError("bsc: crossover must be in [0,1], got " +
                          std::to_string(crossover));
  }
  return Dmc{2, 2, {1.0 - crossover, crossover, crossover, 1.0 - crossover}};
}

Dmc make_bec(double erasure) {
  if (!(erasure >= 0.0 && erasure <= 1.0)) {
    throw ValidationError("bec: erasure must be in [0,1], got " +
                          std::to_string(erasure));
  }
  return Dmc{2, 3, {1.0 - erasure, 0.0, erasure, 0.0, 1.0 - erasure, erasure}};
}

Dmc make_qsc(std::size_t q, double flip) {
  if (q < 2) throw ValidationError("qsc: alphabet size must be >= 2");
  if (!(flip >= 0.0 && flip <= 1.0)) {
    throw ValidationError("qsc: flip must be in [0,1], got " +
                          std::to_string(flip));
  }
  const double wrong = flip / static_cast<double>(q - 1);
  Dmc ch{q, q, std::vector<double>(q * q, wrong)};
  for (std::size_t i = 0; i < q; ++i) ch.probs[i * q + i] = 1.0 - flip;
  return ch;
}

Dmc make_standard(const StandardChannelSpec& spec) {
  if (spec.kind == "identity") return make_identity(spec.q);
  if (spec.kind == "bsc") return make_bsc(spec.param);
  if (spec.kind == "bec") return make_bec(spec.param);
  if (spec.kind == "qsc") return make_qsc(spec.q, spec.param);
  throw ValidationError("unknown channel kind '" + spec.kind +
                        "' (expected identity|bsc|bec|qsc)");
}

Seq transmit(std::span<const Letter> x_seq, const Dmc& ch, Rng& rng) {
  Seq y(x_seq.size());
  for (std::size_t i = 0; i < x_seq.size(); ++i) {
    if (x_seq[i] >= ch.in_size) {
      throw ValidationError("transmit: input letter " +
                            std::to_string(x_seq[i]) +
                            " outside channel alphabet of size " +
                            std::to_string(ch.in_size));
    }
    const std::size_t base = static_cast<std::size_t>(x_seq[i]) * ch.out_size;
    const double u = rng.next_unit();
    double cum = 0.0;
    std::size_t pick = ch.out_size;
    std::size_t last_positive = ch.out_size;
    for (std::size_t y_letter = 0; y_letter < ch.out_size; ++y_letter) {
      const double p = ch.probs[base + y_letter];
      if (p > 0.0) last_positive = y_letter;
      cum += p;
      if (u < cum) {
        pick = y_letter;
        break;
      }
    }
    if (pick == ch.out_size) pick = last_positive;
    y[i] = static_cast<Letter>(pick);
  }
  return y;
}

CapacityResult capacity_blahut_arimoto(const Dmc& ch, double tol,
                                       std::size_t max_iter) {
  ch.validate();
  if (!(tol > 0.0)) throw ValidationError("capacity: tol must be > 0");
  if (max_iter < 1) throw ValidationError("capacity: max_iter must be >= 1");

  const std::size_t nx = ch.in_size;
  const std::size_t ny = ch.out_size;
  std::vector<double> r(nx, 1.0 / static_cast<double>(nx));
  std::vector<double> c(ny, 0.0);
  std::vector<double> d(nx, 0.0);

  CapacityResult best;
  best.input = Pmf{r};
  best.lower_bits = -1.0;
  best.upper_bits = std::log2(static_cast<double>(std::min(nx, ny)));

  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
      if (r[x] == 0.0) continue;
      for (std::size_t y = 0; y < ny; ++y) {
        c[y] += r[x] * ch.probs[x * ny + y];
      }
    }
    double lower = 0.0;
    double upper = -1.0;
    for (std::size_t x = 0; x < nx; ++x) {
      double dx = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        const double w = ch.probs[x * ny + y];
        if (w > 0.0) dx += w * std::log2(w / std::max(c[y], 1e-300));
      }
      d[x] = dx;
      lower += r[x] * dx;
      upper = std::max(upper, dx);
    }

    if (lower > best.lower_bits) {
      best.lower_bits = lower;
      best.input = Pmf{r};
    }
    best.upper_bits = std::min(best.upper_bits, upper);
    best.iterations = iter;

    if (upper - lower <= tol) {
      best.converged = true;
      best.lower_bits = lower;
      best.upper_bits = upper;
      best.input = Pmf{r};
      break;
    }

    double norm = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
      r[x] *= std::exp2(d[x]);
      norm += r[x];
    }
    for (std::size_t x = 0; x < nx; ++x) r[x] /= norm;
  }

  best.capacity_bits = clip_nonneg(best.lower_bits);
  best.lower_bits = clip_nonneg(best.lower_bits);
  best.upper_bits = std::max(best.upper_bits, best.lower_bits);
  return best;
}

}  // namespace semcom
