#include "semcom/regions.hpp"

#include <cstdio>
#include <ostream>

#include "semcom/errors.hpp"

namespace semcom {

InfoQuantities info_quantities(const JointPmf& system_joint) {
  system_joint.validate("system joint");
  if (system_joint.rank() != 3) {
    throw ValidationError("info_quantities: rank-3 joint required");
  }
  InfoQuantities q;
  q.i_sx = mutual_information(system_joint.marginal_pair(0, 1));
  q.i_sy = mutual_information(system_joint.marginal_pair(0, 2));
  q.i_xy = mutual_information(system_joint.marginal_pair(1, 2));
  q.h_x_given_s = conditional_entropy(system_joint.marginal_pair(1, 0), 1);
  q.i_xy_given_s = conditional_mutual_information(system_joint, 1, 2, 0);
  q.i_sxy = mutual_information_axis_vs_rest(system_joint, 2);
  return q;
}

InfoQuantities info_quantities(const Pmf& p_s, const ConditionalPmf& p_x_given_s,
                               const Dmc& ch) {
  return info_quantities(assemble_system_joint(p_s, p_x_given_s, ch));
}

bool theorem_region_membership(const InfoQuantities& q, const RatePoint& pt) {
  return pt.r <= q.i_sy + kRateTol && pt.r_prime <= q.h_x_given_s + kRateTol;
}

RatePoint theorem_corner(const InfoQuantities& q) {
  return RatePoint{q.i_sy, q.h_x_given_s};
}

ProofMembership proof_region_membership(const InfoQuantities& q,
                                        const RatePoint& pt) {
  ProofMembership out;
  if (pt.r > q.i_sx + kRateTol) out.violated.emplace_back("R<=I(S;X)");
  if (pt.r_prime > q.h_x_given_s + kRateTol) {
    out.violated.emplace_back("R'<=H(X|S)");
  }
  if (pt.r_prime < q.i_xy_given_s - kRateTol) {
    out.violated.emplace_back("R'>=I(X;Y|S)");
  }
  if (pt.r + pt.r_prime > q.i_sxy + kRateTol) {
    out.violated.emplace_back("R+R'<=I(S,X;Y)");
  }
  out.member = out.violated.empty();
  return out;
}

SumRateBounds sum_rate_bounds(const InfoQuantities& q) {
  return SumRateBounds{q.h_x_given_s + q.i_sy, q.h_x_given_s + q.i_xy};
}

std::vector<RegionSweepRow> sweep_region(const InfoQuantities& q, double r_max,
                                         double rp_max, std::size_t steps_r,
                                         std::size_t steps_rp) {
  if (!(r_max >= 0.0) || !(rp_max >= 0.0)) {
    throw ValidationError("sweep_region: grid maxima must be >= 0");
  }
  if (steps_r < 1 || steps_rp < 1) {
    throw ValidationError("sweep_region: step counts must be >= 1");
  }
  std::vector<RegionSweepRow> rows;
  rows.reserve((steps_r + 1) * (steps_rp + 1));
  for (std::size_t i = 0; i <= steps_r; ++i) {
    for (std::size_t k = 0; k <= steps_rp; ++k) {
      RegionSweepRow row;
      row.r = r_max * static_cast<double>(i) / static_cast<double>(steps_r);
      row.r_prime =
          rp_max * static_cast<double>(k) / static_cast<double>(steps_rp);
      const RatePoint pt{row.r, row.r_prime};
      row.in_theorem = theorem_region_membership(q, pt);
      const ProofMembership pm = proof_region_membership(q, pt);
      row.in_proof = pm.member;
      for (std::size_t v = 0; v < pm.violated.size(); ++v) {
        if (v > 0) row.violated += ';';
        row.violated += pm.violated[v];
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_region_csv(std::ostream& os, const std::vector<RegionSweepRow>& rows) {
  os << "R,R_prime,in_theorem,in_proof,violated\n";
  char buf[64];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g", row.r, row.r_prime);
    os << buf << ',' << (row.in_theorem ? 1 : 0) << ','
       << (row.in_proof ? 1 : 0) << ',' << row.violated << '\n';
  }
}

}  // namespace semcom
