#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "qpmut/graded_qp.hpp"

namespace qpmut {

inline constexpr std::size_t kMaxCanonicalVertices = 12;

/// Relabeled copy whose vertex ids are 1..n and arrow ids x1..xm, plus the
/// maps from the input's ids. Two inputs are isomorphic (respecting degrees
/// when supplied) iff their codes are equal.
struct CanonicalForm {
  Quiver quiver;
  std::optional<DegreeMap> degrees;
  std::map<VertexId, VertexId> vertex_map;
  std::map<ArrowId, ArrowId> arrow_map;
  std::vector<int> code;

  bool operator==(const CanonicalForm& other) const { return code == other.code; }
};

/// Throws QpError(Capacity) above kMaxCanonicalVertices.
CanonicalForm quiver_canonical_form(const Quiver& q, const DegreeMap* degrees = nullptr);

inline std::vector<int> canonical_code(const Quiver& q, const DegreeMap* degrees = nullptr) {
  return quiver_canonical_form(q, degrees).code;
}

struct QuiverAutomorphism {
  std::map<VertexId, VertexId> vertices;
  std::map<ArrowId, ArrowId> arrows;
};

/// All vertex permutations preserving arrow multiplicities (and the degree
/// multiset per vertex pair when `degrees` is given), each combined with
/// every compatible bijection of parallel arrows. Stops after `limit`.
std::vector<QuiverAutomorphism> quiver_automorphisms(const Quiver& q, const DegreeMap* degrees = nullptr,
                                                     std::size_t limit = 100000);

/// Some isomorphism from `a` onto `b`, if one exists.
std::optional<QuiverAutomorphism> find_isomorphism(const Quiver& a, const Quiver& b,
                                                   const DegreeMap* da = nullptr,
                                                   const DegreeMap* db = nullptr);

/// Relabels `qp` through canonical form and takes the least potential over
/// graded automorphisms, so isomorphic graded QPs compare equal.
GradedQP canonical_graded_qp(const GradedQP& qp);

}  // namespace qpmut
