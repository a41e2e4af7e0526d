#include <cmath>

#include "doctest.h"
#include "semcom/channel.hpp"
#include "semcom/errors.hpp"
#include "semcom/pmf.hpp"
#include "testutil.hpp"

using namespace semcom;
using namespace testutil;

TEST_CASE("entropy on basic distributions") {
  CHECK(entropy(Pmf{{0.5, 0.5}}) == 1.0);
  CHECK(entropy(Pmf{{1.0, 0.0}}) == 0.0);
  // Closed form -0.1 log2 0.1 - 0.9 log2 0.9 evaluated independently.
  CHECK(entropy(Pmf{{0.1, 0.9}}) ==
        doctest::Approx(0.4689955935892812).epsilon(1e-12));
  CHECK(entropy(Pmf::uniform(8)) == 3.0);
}

TEST_CASE("pmf validation rejects malformed inputs") {
  CHECK_THROWS_AS((Pmf{{0.5, 0.6}}.validate()), ValidationError);
  CHECK_THROWS_AS((Pmf{{-0.1, 1.1}}.validate()), ValidationError);
  CHECK_THROWS_AS(Pmf{{}}.validate(), ValidationError);
  CHECK_NOTHROW((Pmf{{0.25, 0.75}}.validate()));
  // Mass off by less than the tolerance is accepted.
  CHECK_NOTHROW((Pmf{{0.5, 0.5 + 5e-13}}.validate()));
}

TEST_CASE("conditional pmf validation") {
  CHECK_NOTHROW(running_p_x_given_s().validate());
  ConditionalPmf bad{2, 2, {0.5, 0.5, 0.7, 0.7}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  ConditionalPmf wrong_size{2, 2, {1.0, 0.0}};
  CHECK_THROWS_AS(wrong_size.validate(), ValidationError);
}

TEST_CASE("joint pmf validation and marginals") {
  JointPmf j = JointPmf::zeros({2, 3});
  j.at(0, 0) = 0.25;
  j.at(0, 2) = 0.25;
  j.at(1, 1) = 0.5;
  CHECK_NOTHROW(j.validate());
  const Pmf ma = j.marginal(0);
  CHECK(ma[0] == doctest::Approx(0.5).epsilon(1e-15));
  const Pmf mb = j.marginal(1);
  CHECK(mb[1] == doctest::Approx(0.5).epsilon(1e-15));

  JointPmf rank1;
  rank1.dims = {4};
  rank1.probs = {0.25, 0.25, 0.25, 0.25};
  CHECK_THROWS_AS(rank1.validate(), ValidationError);
}

TEST_CASE("conditional entropy on rank-2 joints") {
  // X a deterministic copy of S.
  JointPmf copy = JointPmf::zeros({2, 2});
  copy.at(0, 0) = 0.5;
  copy.at(1, 1) = 0.5;
  CHECK(conditional_entropy(copy, 0) == 0.0);

  // X uniform 4-ary independent of S.
  const JointPmf indep = assemble_pair_joint(
      Pmf{{0.5, 0.5}}, ConditionalPmf{2, 4,
                                      {0.25, 0.25, 0.25, 0.25,
                                       0.25, 0.25, 0.25, 0.25}});
  CHECK(conditional_entropy(indep, 0) == doctest::Approx(2.0).epsilon(1e-12));

  const JointPmf running = assemble_pair_joint(running_p_s(), running_p_x_given_s());
  CHECK(conditional_entropy(running, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mutual information on rank-2 joints") {
  const JointPmf product = assemble_pair_joint(
      Pmf{{0.3, 0.7}}, ConditionalPmf{2, 2, {0.6, 0.4, 0.6, 0.4}});
  CHECK(mutual_information(product) == doctest::Approx(0.0).epsilon(1e-12));

  JointPmf ident = JointPmf::zeros({2, 2});
  ident.at(0, 0) = 0.5;
  ident.at(1, 1) = 0.5;
  CHECK(mutual_information(ident) == 1.0);

  // Uniform input through a binary symmetric channel with crossover 0.1:
  // closed form 1 - h2(0.1).
  const Dmc bsc = make_bsc(0.1);
  const JointPmf bsc_joint =
      assemble_pair_joint(Pmf{{0.5, 0.5}}, ConditionalPmf{2, 2, bsc.probs});
  CHECK(mutual_information(bsc_joint) ==
        doctest::Approx(0.5310044064107188).epsilon(1e-12));
}

TEST_CASE("conditional mutual information") {
  // Fully independent triple.
  Rng rng(3);
  JointPmf indep = JointPmf::zeros({2, 2, 2});
  const Pmf pa = random_pmf(rng, 2), pb = random_pmf(rng, 2), pc = random_pmf(rng, 2);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < 2; ++c) indep.at(a, b, c) = pa[a] * pb[b] * pc[c];
  CHECK(conditional_mutual_information(indep, 0, 1, 2) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // Y = X exactly over the identity channel on the standing example:
  // I(X;Y|S) = H(X|S) = 1.
  const JointPmf sys =
      assemble_system_joint(running_p_s(), running_p_x_given_s(), make_identity(4));
  CHECK(conditional_mutual_information(sys, 1, 2, 0) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // Agreement with the definitional sum on random joints.
  Rng gen(99);
  for (int trial = 0; trial < 60; ++trial) {
    const JointPmf j = random_joint3(gen, 2, 2, 2);
    CHECK(conditional_mutual_information(j, 0, 1, 2) ==
          doctest::Approx(bf_conditional_mi(j)).epsilon(1e-10));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const JointPmf j = random_joint3(gen, 3, 2, 4);
    CHECK(conditional_mutual_information(j, 0, 1, 2) ==
          doctest::Approx(bf_conditional_mi(j)).epsilon(1e-10));
  }
}

TEST_CASE("assemble_system_joint composes p(s) p(x|s) p(y|x)") {
  const JointPmf j = assemble_system_joint(running_p_s(), running_p_x_given_s(),
                                           make_qsc(4, 0.02));
  CHECK_NOTHROW(j.validate());
  double mass = 0.0;
  for (double p : j.probs) mass += p;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j.at(0, 0, 0) == 0.5 * 0.5 * 0.98);
  // Markov S-X-Y by construction.
  CHECK(conditional_mutual_information(j, 0, 2, 1) <= 1e-12);

  CHECK_THROWS_AS(
      assemble_system_joint(Pmf{{1.0}}, running_p_x_given_s(), make_identity(4)),
      ValidationError);
  CHECK_THROWS_AS(
      assemble_system_joint(running_p_s(), running_p_x_given_s(), make_bsc(0.1)),
      ValidationError);
}

TEST_CASE("information identities over random systems") {
  Rng rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t ns = 2 + trial % 3;
    const std::size_t nx = 2 + (trial / 3) % 3;
    const std::size_t ny = 2 + (trial / 9) % 3;
    const Pmf p_s = random_pmf(rng, ns);
    const ConditionalPmf p_x_given_s = random_conditional(rng, ns, nx);
    const Dmc ch = random_dmc(rng, nx, ny);
    const JointPmf j = assemble_system_joint(p_s, p_x_given_s, ch);

    const double i_sxy = mutual_information_axis_vs_rest(j, 2);
    const double i_sy = mutual_information(j.marginal_pair(0, 2));
    const double i_xy = mutual_information(j.marginal_pair(1, 2));
    const double i_xy_given_s = conditional_mutual_information(j, 1, 2, 0);

    // Chain rule I(S,X;Y) = I(S;Y) + I(X;Y|S).
    CHECK(i_sxy == doctest::Approx(i_sy + i_xy_given_s).epsilon(1e-10));
    // Markov collapse I(S,X;Y) = I(X;Y).
    CHECK(i_sxy == doctest::Approx(i_xy).epsilon(1e-10));
    // Data processing.
    CHECK(i_sy <= i_xy + 1e-12);
    // Entropy bounds.
    const double h = entropy(p_s);
    CHECK(h >= 0.0);
    CHECK(h <= std::log2(static_cast<double>(ns)) + 1e-12);
  }
}

TEST_CASE("measures agree with definitional sums on small alphabets") {
  Rng rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t na = 2 + trial % 3;
    const std::size_t nb = 2 + (trial / 2) % 3;
    const Pmf pa = random_pmf(rng, na);
    const ConditionalPmf pba = random_conditional(rng, na, nb);
    const JointPmf j = assemble_pair_joint(pa, pba);
    CHECK(mutual_information(j) ==
          doctest::Approx(bf_mutual_information(j)).epsilon(1e-10));
    // H(B|A) = H(A,B) - H(A) must match the column-wise definition.
    double h_direct = 0.0;
    for (std::size_t a = 0; a < na; ++a) {
      double h_row = 0.0;
      for (std::size_t b = 0; b < nb; ++b) {
        const double p = pba(a, b);
        if (p > 0.0) h_row -= p * std::log2(p);
      }
      h_direct += pa[a] * h_row;
    }
    CHECK(conditional_entropy(j, 0) == doctest::Approx(h_direct).epsilon(1e-10));
  }
}

TEST_CASE("marginal_pair is consistent with single-axis marginals") {
  Rng rng(77);
  const JointPmf j = random_joint3(rng, 3, 4, 2);
  const std::size_t axes[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& pair : axes) {
    const JointPmf m = j.marginal_pair(pair[0], pair[1]);
    const Pmf from_pair = m.marginal(0);
    const Pmf direct = j.marginal(pair[0]);
    REQUIRE(from_pair.size() == direct.size());
    for (std::size_t i = 0; i < direct.size(); ++i) {
      CHECK(from_pair[i] == doctest::Approx(direct[i]).epsilon(1e-14));
    }
  }
  // Swapped order transposes the table.
  const JointPmf ab = j.marginal_pair(0, 1);
  const JointPmf ba = j.marginal_pair(1, 0);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      CHECK(ab.at(a, b) == doctest::Approx(ba.at(b, a)).epsilon(1e-15));
    }
  }
}

TEST_CASE("clip_nonneg only clips within tolerance") {
  CHECK(clip_nonneg(-5e-13) == 0.0);
  CHECK(clip_nonneg(0.5) == 0.5);
  CHECK(clip_nonneg(-1e-6) == -1e-6);
}
