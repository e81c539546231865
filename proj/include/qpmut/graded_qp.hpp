#pragma once

#include <map>

#include "qpmut/potential.hpp"
#include "qpmut/quiver.hpp"

namespace qpmut {

/// Integer degree per arrow. Total on the owning quiver's arrows.
using DegreeMap = std::map<ArrowId, int>;

DegreeMap zero_degrees(const Quiver& q);
int path_degree(const DegreeMap& d, const std::vector<ArrowId>& arrows);
inline int word_degree(const DegreeMap& d, const CyclicWord& w) { return path_degree(d, w.arrows()); }

/// Quiver with potential and arrow grading.
struct GradedQP {
  Quiver quiver;
  Potential potential;
  DegreeMap degrees;

  GradedQP() = default;
  /// Validates that every potential word lives in the quiver and is
  /// composable, and that `degrees` is total (missing arrows default to 0,
  /// unknown ones are rejected).
  GradedQP(Quiver q, Potential w, DegreeMap d);
  explicit GradedQP(Quiver q) : GradedQP(std::move(q), {}, {}) {}

  int degree(const ArrowId& a) const { return degrees.at(a); }

  /// Every term has total degree `total`. The zero potential qualifies.
  bool is_homogeneous(int total = 1) const;

  bool operator==(const GradedQP&) const = default;
};

}  // namespace qpmut
