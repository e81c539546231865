#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "qpmut/graded_qp.hpp"

namespace qpmut {

/// Ordered pair (a, b): the path traversing a then b, declared zero.
using Relation = std::pair<ArrowId, ArrowId>;

/// Quiver modulo quadratic monomial relations.
struct PresentedAlgebra {
  Quiver quiver;
  std::set<Relation> relations;

  PresentedAlgebra() = default;
  /// Throws QpError(Lookup) for unknown arrows and QpError(Composition) when
  /// a relation is not a path.
  PresentedAlgebra(Quiver q, std::set<Relation> rels);

  bool operator==(const PresentedAlgebra&) const = default;
};

/// Degree-0 arrows, with the single path d_a W for each degree-1 arrow a as a
/// relation. Throws QpError(Precondition) unless the grading is a W-grading
/// and QpError(UnsupportedPresentation) when some relation is not one path of
/// length 2.
PresentedAlgebra degree_zero_part(const GradedQP& qp);

/// Adds one degree-1 arrow t(r) -> s(r) per relation r and the potential
/// summing each new arrow times its relation.
GradedQP build_overline_qp(const PresentedAlgebra& alg);

struct PathBasis {
  /// Keyed by (source, target); the empty path is the idempotent.
  std::map<std::pair<VertexId, VertexId>, std::vector<Path>> paths;
  std::size_t dimension = 0;
};

/// Throws QpError(Dimensionality) when the algebra is infinite-dimensional
/// or a path exceeds `cap` (default |Q0|*|Q1|).
PathBasis path_basis(const PresentedAlgebra& alg, std::optional<std::size_t> cap = std::nullopt);

/// Longest chain of arrows starting at v whose consecutive pairs are all
/// relations; nullopt when unbounded.
std::optional<int> simple_projective_dimension(const PresentedAlgebra& alg, VertexId v);
/// nullopt means infinite global dimension.
std::optional<int> global_dimension(const PresentedAlgebra& alg);

using IntMatrix = std::vector<std::vector<long long>>;
using RationalMatrix = std::vector<std::vector<Rational>>;
/// Integer coefficients, constant term first.
using Polynomial = std::vector<long long>;

IntMatrix cartan_matrix(const PresentedAlgebra& alg);
/// -C^{-T} C. Throws QpError(Convention) unless det C = +-1.
RationalMatrix coxeter_matrix(const PresentedAlgebra& alg);
/// Characteristic polynomial det(X - M), exact.
std::vector<Rational> characteristic_polynomial(const RationalMatrix& m);
Rational determinant(const RationalMatrix& m);
Polynomial coxeter_polynomial(const PresentedAlgebra& alg);

/// X^{p+q} - (-1)^w X^{p-w} - (-1)^w X^{q+w} + 1.
Polynomial atilde_coxeter_formula(int p, int q, int w);

}  // namespace qpmut
