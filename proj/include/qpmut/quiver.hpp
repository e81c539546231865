#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace qpmut {

using VertexId = int;
using ArrowId = std::string;

struct Arrow {
  ArrowId id;
  VertexId src = 0;
  VertexId tgt = 0;

  auto operator<=>(const Arrow&) const = default;
};

/// Finite directed multigraph. Vertices and arrows are kept sorted by id so
/// iteration order never depends on construction order. Parallel arrows and
/// loops are allowed.
class Quiver {
 public:
  Quiver() = default;

  /// Throws QpError(Parse) on duplicate vertex/arrow ids and QpError(Lookup)
  /// on arrows whose endpoints are not declared vertices.
  Quiver(std::vector<VertexId> vertices, std::vector<Arrow> arrows);

  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }

  bool has_vertex(VertexId v) const;
  bool has_arrow(const ArrowId& id) const { return index_.contains(id); }

  /// Throws QpError(Lookup) when absent.
  const Arrow& arrow(const ArrowId& id) const;
  std::size_t vertex_index(VertexId v) const;

  std::vector<Arrow> arrows_from(VertexId v) const;
  std::vector<Arrow> arrows_to(VertexId v) const;
  std::size_t count(VertexId src, VertexId tgt) const;
  /// Number of arrow ends at v; a loop counts twice.
  std::size_t valency(VertexId v) const;

  bool has_loop_at(VertexId v) const;
  bool has_two_cycle_at(VertexId v) const;
  bool has_loops() const;
  bool has_two_cycles() const;
  bool is_acyclic() const;
  bool is_connected() const;

  /// Subquiver on `keep` containing every arrow with both ends in `keep`.
  Quiver full_subquiver(const std::set<VertexId>& keep) const;

  /// Id derived from `base` that does not collide with this quiver's arrows
  /// or with `taken`.
  ArrowId fresh_arrow_id(const std::string& base, const std::set<ArrowId>& taken = {}) const;

  bool operator==(const Quiver& other) const {
    return vertices_ == other.vertices_ && arrows_ == other.arrows_;
  }

 private:
  std::vector<VertexId> vertices_;
  std::vector<Arrow> arrows_;
  std::map<ArrowId, std::size_t> index_;
};

/// The affine quiver with arrows a_i: i -> i+1 (i = 1..p), b_q: 1 -> p+q and
/// b_l: p+l+1 -> p+l (l = 1..q-1). Both arms run from vertex 1 to p+1.
Quiver atilde_quiver(int p, int q);

/// Linear orientation 1 -> 2 -> ... -> n.
Quiver linear_an_quiver(int n);

}  // namespace qpmut
