#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "qpmut/algebra.hpp"
#include "qpmut/io.hpp"

namespace qpmut {

inline constexpr int kDefaultCensusCapacity = 10;

struct ClassifyOptions {
  /// Lifts the p+q <= kDefaultCensusCapacity guard.
  bool allow_large = false;
  std::size_t max_class_size = 20000;
};

struct GradedAlgebraEntry {
  std::size_t quiver = 0;
  DegreeMap degrees;
  int weight = 0;
  int structural_weight = 0;
  int canonical = 0;
  Polynomial coxeter;
  int gldim = 0;
};

struct DerivedClassEntry {
  int canonical_weight = 0;
  std::size_t size = 0;
};

struct ClassificationReport {
  int p = 0;
  int q = 0;
  /// Canonical quivers carrying W_Q, with zero degrees.
  std::vector<GradedQP> quivers;
  std::vector<GradedAlgebraEntry> algebras;
  std::vector<DerivedClassEntry> classes;
};

/// Enumerates the mutation class of Ã_{p,q}, every W_Q-grading up to graded
/// isomorphism, and checks each algebra (weights agree, gldim <= 2, Coxeter
/// formula, weight bounds). Any failed check throws
/// QpError(Classification) carrying the offending QP document.
ClassificationReport classify(int p, int q, const ClassifyOptions& options = {});

Json report_to_json(const ClassificationReport& report);

/// Writes dir/atilde-{p}-{q}.json when absent; otherwise compares bytes and
/// throws QpError(Consistency) on drift. Returns "written" or "unchanged".
std::string pin_report(const ClassificationReport& report, const std::filesystem::path& dir);

}  // namespace qpmut
