#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "qpmut/errors.hpp"
#include "qpmut/graded_qp.hpp"

namespace qpmut {

/// Left and right differ in which reversed arrows absorb the +1; ungraded
/// mutation zeroes every degree.
enum class Direction { Left, Right, Ungraded };

const char* to_string(Direction d) noexcept;
/// Accepts "left", "right", "plain" and "ungraded". Throws QpError(Parse).
Direction parse_direction(std::string_view text);

struct MutationStep {
  VertexId vertex = 0;
  Direction direction = Direction::Left;

  auto operator<=>(const MutationStep&) const = default;
};

/// Listed in application order: element 0 is applied first.
using MutationSequence = std::vector<MutationStep>;

/// Unreduced mutation at i. Throws QpError(Precondition) on a loop or 2-cycle
/// at i, QpError(Lookup) if i is not a vertex.
GradedQP premutate(const GradedQP& qp, VertexId i, Direction direction);

/// Removes every length-2 term together with its two arrows by a sequence of
/// exact substitutions, least term first. Throws QpError(Nontermination) when
/// a word outgrows 2|Q1|, QpError(Precondition) on length-1 terms and
/// QpError(Consistency) if a homogeneous input loses homogeneity.
GradedQP reduce(const GradedQP& qp);

GradedQP mutate(const GradedQP& qp, const MutationStep& step);
GradedQP mutate(const GradedQP& qp, const MutationSequence& steps);

/// B[i][j] = #arrows i->j minus #arrows j->i, indexed by vertex position.
using ExchangeMatrix = std::vector<std::vector<int>>;

ExchangeMatrix exchange_matrix(const Quiver& q);
ExchangeMatrix matrix_mutation(const ExchangeMatrix& b, std::size_t k);
/// Arrows named "e{src}_{tgt}_{n}".
Quiver quiver_from_exchange_matrix(const std::vector<VertexId>& vertices, const ExchangeMatrix& b);

struct MutationClass {
  /// Canonical forms sorted by code.
  std::vector<Quiver> representatives;
  std::vector<std::vector<int>> codes;
  /// Unordered adjacency between representative indices (i <= j).
  std::set<std::pair<std::size_t, std::size_t>> edges;
  /// Ungraded sequence, in the seed's vertex ids, reaching each
  /// representative from the seed.
  std::vector<MutationSequence> provenance;

  std::optional<std::size_t> find(const Quiver& q) const;
};

/// Raised when the class outgrows `max_size`; carries what was found.
class MutationClassOverflow : public QpError {
 public:
  MutationClassOverflow(const std::string& message, MutationClass partial)
      : QpError(ErrorKind::Capacity, message), partial_(std::move(partial)) {}
  const MutationClass& partial() const noexcept { return partial_; }

 private:
  MutationClass partial_;
};

/// Breadth-first exploration with exchange matrices. Throws
/// QpError(Precondition) when the seed has loops or 2-cycles.
MutationClass mutation_class(const Quiver& seed, std::size_t max_size = 20000);

/// Shortest ungraded sequence taking qp to an acyclic quiver with zero
/// potential, or nullopt once `budget` states have been explored.
std::optional<MutationSequence> find_acyclic_sequence(const GradedQP& qp, std::size_t budget = 200000);

MutationSequence with_direction(MutationSequence steps, Direction direction);

}  // namespace qpmut
