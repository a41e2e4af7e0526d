#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "semcom/channel.hpp"
#include "semcom/pmf.hpp"

namespace semcom {

// Rate-constraint comparisons tolerate this much floating-point slack so that
// corner points sit inside their own region.
inline constexpr double kRateTol = 1e-12;

struct InfoQuantities {
  double i_sx = 0.0;          // I(S;X)
  double i_sy = 0.0;          // I(S;Y)
  double i_xy = 0.0;          // I(X;Y)
  double h_x_given_s = 0.0;   // H(X|S)
  double i_xy_given_s = 0.0;  // I(X;Y|S)
  double i_sxy = 0.0;         // I(S,X;Y)
};

struct RatePoint {
  double r = 0.0;        // semantic rate, bits/use
  double r_prime = 0.0;  // per-semantic message rate, bits/use
};

InfoQuantities info_quantities(const JointPmf& system_joint);
InfoQuantities info_quantities(const Pmf& p_s, const ConditionalPmf& p_x_given_s,
                               const Dmc& ch);

// Stated region: R <= I(S;Y), R' <= H(X|S).
bool theorem_region_membership(const InfoQuantities& q, const RatePoint& pt);
RatePoint theorem_corner(const InfoQuantities& q);

struct ProofMembership {
  bool member = false;
  std::vector<std::string> violated;  // names of failed constraints
};

// Constructive region: R <= I(S;X), R' <= H(X|S), R' >= I(X;Y|S),
// R + R' <= I(S,X;Y).
ProofMembership proof_region_membership(const InfoQuantities& q,
                                        const RatePoint& pt);

struct SumRateBounds {
  double h_plus_isy = 0.0;  // H(X|S) + I(S;Y)
  double h_plus_ixy = 0.0;  // H(X|S) + I(X;Y)
};

SumRateBounds sum_rate_bounds(const InfoQuantities& q);

struct RegionSweepRow {
  double r = 0.0;
  double r_prime = 0.0;
  bool in_theorem = false;
  bool in_proof = false;
  std::string violated;  // semicolon-joined constraint names
};

// Uniform (steps_r+1) x (steps_rp+1) grid over [0,r_max] x [0,rp_max] with
// both memberships evaluated at every point.
std::vector<RegionSweepRow> sweep_region(const InfoQuantities& q, double r_max,
                                         double rp_max, std::size_t steps_r,
                                         std::size_t steps_rp);

// Columns: R, R_prime, in_theorem, in_proof, violated.
void write_region_csv(std::ostream& os, const std::vector<RegionSweepRow>& rows);

}  // namespace semcom
