#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qpmut/canonical.hpp"
#include "qpmut/classes.hpp"
#include "qpmut/graded_qp.hpp"
#include "qpmut/mutation.hpp"

namespace qpmut {

struct GradingVerdict {
  bool equivalent = false;
  /// Vertex offsets r with d1(a) - d2(a) = r(t(a)) - r(s(a)), on success.
  std::map<VertexId, int> offsets;
  /// A cycle of the underlying graph along which d1 - d2 does not sum to 0.
  UndirectedCycle violated_cycle;
  /// The automorphism used when quantifying over automorphisms.
  std::optional<QuiverAutomorphism> automorphism;
};

/// Whether d1 - d2 lies in the image of the vertex-offset map, optionally
/// after precomposing d2 with some automorphism of q.
GradingVerdict grading_equivalent(const Quiver& q, const DegreeMap& d1, const DegreeMap& d2,
                                  bool up_to_automorphism = false);

/// The two arms of an acyclic quiver whose underlying graph is one cycle.
struct AtildeShape {
  int p = 0;
  int q = 0;
  std::set<ArrowId> p_arrows;
  std::set<ArrowId> q_arrows;
};

/// nullopt unless q is an acyclic cycle quiver.
std::optional<AtildeShape> atilde_shape(const Quiver& q);

struct WeightResult {
  int weight = 0;
  int canonical = 0;
  int p = 0;
  int q = 0;
  /// Human-readable decomposition, or the mutation sequence used.
  std::string witness;
  std::optional<MutationSequence> sequence;
};

/// Canonical weight: w when p != q and |w| when p == q.
inline int canonical_weight(int w, int p, int q) { return p == q && w < 0 ? -w : w; }

/// Sum of degrees over p-arrows minus q-arrows. Throws
/// QpError(Classification) if q is not an Ã shape.
WeightResult weight_of_grading(const Quiver& q, const DegreeMap& d);

/// Weight read off the non-oriented cycle of a decomposition. Throws
/// QpError(NotInClass) with no usable decomposition and QpError(Ambiguity)
/// when readings disagree.
WeightResult weight_structural(const GradedQP& qp);

/// Applies `steps` as graded left mutations and weighs the induced grading.
/// Throws QpError(Precondition) unless the result is acyclic with W = 0.
WeightResult weight_via_sequence(const GradedQP& qp, const MutationSequence& steps);

/// Throws QpError(SearchBudget) when no acyclic sequence is found.
WeightResult weight_via_mutation(const GradedQP& qp, std::size_t budget = 200000);

struct InducedComparison {
  Quiver quiver1;
  DegreeMap degrees1;
  Quiver quiver2;
  DegreeMap degrees2;
  /// d2 carried onto quiver1.
  DegreeMap transported;
  GradingVerdict verdict;
};

/// Induced gradings of two left-mutation sequences ending at isomorphic
/// acyclic quivers, compared up to automorphism.
InducedComparison compare_induced_gradings(const GradedQP& qp, const MutationSequence& s1,
                                           const MutationSequence& s2);

enum class ClusterKind { Tree, Atilde };

struct ClusterType {
  ClusterKind kind = ClusterKind::Tree;
  /// Canonical code of the underlying graph (tree) or (p,q) (Ã).
  std::vector<int> key;
  int p = 0;
  int q = 0;
  MutationSequence sequence;
};

/// Throws QpError(Scope) unless qp mutates to a tree or an Ã shape.
ClusterType cluster_type(const GradedQP& qp, std::size_t budget = 200000);

struct DerivedVerdict {
  bool equivalent = false;
  ClusterKind kind = ClusterKind::Tree;
  std::optional<WeightResult> weight1;
  std::optional<WeightResult> weight2;
};

/// Throws QpError(Scope) for mixed or unsupported cluster types.
DerivedVerdict derived_equivalent(const GradedQP& a1, const GradedQP& a2);

struct ArSummary {
  bool applicable = false;
  int total = 0;
  int zainfinf = 0;
  int zainf = 0;
};

ArSummary ar_summary(int weight);

/// floor(p/2) + floor(q/2) + 1 for p != q, floor(p/2) + 1 for p == q.
int derived_class_count(int p, int q);

}  // namespace qpmut
