#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qpmut/graded_qp.hpp"
#include "qpmut/jacobian.hpp"
#include "qpmut/mutation.hpp"

namespace qpmut {

/// One arrow of a cycle in the underlying graph, with the sense in which the
/// walk crosses it.
struct CycleStep {
  ArrowId arrow;
  bool forward = true;

  bool operator==(const CycleStep&) const = default;
};
using UndirectedCycle = std::vector<CycleStep>;

/// Simple cycles of the underlying multigraph (parallel arrows give cycles of
/// length 2; loops are ignored), each listed once.
std::vector<UndirectedCycle> simple_cycles(const Quiver& q);

/// Oriented 3-cycles through three distinct vertices, as canonical words.
std::vector<CyclicWord> oriented_three_cycles(const Quiver& q);

/// Sum of all oriented 3-cycles with coefficient 1.
Potential sum_of_three_cycles(const Quiver& q);

/// Connected, every cycle of the underlying graph an oriented 3-cycle, and
/// the valency rules at vertices of valency 3 and 4.
Verdict is_in_MA(const Quiver& q);

/// alpha: s -> t on the cycle, alpha1: t -> apex, alpha2: apex -> s.
struct AnchoredTriangle {
  ArrowId alpha;
  VertexId apex = 0;
  ArrowId alpha1;
  ArrowId alpha2;
};

struct MAtildeDecomposition {
  UndirectedCycle cycle;
  std::set<ArrowId> p_arrows;
  std::set<ArrowId> q_arrows;
  std::vector<AnchoredTriangle> triangles;
  /// Vertex sets of the branches, aligned with `triangles`.
  std::vector<std::set<VertexId>> branches;
  int p = 0;
  int q = 0;
  /// Anchored triangles plus the oriented 3-cycles inside each branch.
  Potential wq;
};

/// Every way of reading q as a non-oriented cycle with anchored triangles and
/// M^A branches. Empty when no reading validates.
std::vector<MAtildeDecomposition> matilde_decompositions(const Quiver& q);

/// Mutation class of the acyclic Ã_{p,q}, computed once per (p,q).
const MutationClass& atilde_mutation_class(int p, int q);

struct MAtildeVerdict {
  bool member = false;
  /// Whether the structural reading agrees with class membership.
  bool consistent = true;
  std::string note;
  std::optional<MAtildeDecomposition> decomposition;
};

/// Membership is decided by the mutation class; the decomposition is the
/// first structural reading with the requested (p,q).
MAtildeVerdict is_in_MAtilde(const Quiver& quiver, int p, int q);

/// W_Q for a quiver of either class: the decomposition's potential when one
/// exists, otherwise the sum of all oriented 3-cycles.
Potential class_potential(const Quiver& q);

/// One degree-1 arrow per term of `w`, all else degree 0. Up to graded
/// isomorphism when `up_to_iso`. Throws QpError(Consistency) when an arrow
/// occurs in two terms.
std::vector<DegreeMap> enumerate_w_gradings(const Quiver& q, const Potential& w, bool up_to_iso);

}  // namespace qpmut
