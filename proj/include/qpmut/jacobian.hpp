#pragma once

#include <string>
#include <vector>

#include "qpmut/graded_qp.hpp"

namespace qpmut {

struct JacobianRelation {
  ArrowId arrow;
  PathSum relation;  // empty when the derivative vanishes
};

/// One entry per arrow (sorted by id), or per degree-1 arrow when
/// `only_degree_one` is set.
std::vector<JacobianRelation> jacobian_relations(const GradedQP& qp, bool only_degree_one);

struct Verdict {
  bool ok = false;
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
  static Verdict yes() { return {true, {}}; }
  static Verdict no(std::string why) { return {false, std::move(why)}; }
};

/// Degrees in {0,1}, every term of degree exactly 1, and the derivatives
/// along degree-1 arrows nonzero and linearly independent.
Verdict check_w_grading(const GradedQP& qp);

/// Rank of a family of formal path sums as vectors over the path basis.
std::size_t path_sum_rank(const std::vector<PathSum>& vectors);

}  // namespace qpmut
