#include "qpmut/quiver.hpp"

#include <algorithm>

#include "qpmut/errors.hpp"

namespace qpmut {

Quiver::Quiver(std::vector<VertexId> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    fail(ErrorKind::Parse, "duplicate vertex id");
  std::sort(arrows_.begin(), arrows_.end(),
            [](const Arrow& a, const Arrow& b) { return a.id < b.id; });
  for (std::size_t k = 0; k < arrows_.size(); ++k) {
    const Arrow& a = arrows_[k];
    if (a.id.empty()) fail(ErrorKind::Parse, "empty arrow id");
    if (!index_.emplace(a.id, k).second) fail(ErrorKind::Parse, "duplicate arrow id \"" + a.id + "\"");
    if (!has_vertex(a.src))
      fail(ErrorKind::Lookup, "arrow \"" + a.id + "\": source " + std::to_string(a.src) + " is not a vertex");
    if (!has_vertex(a.tgt))
      fail(ErrorKind::Lookup, "arrow \"" + a.id + "\": target " + std::to_string(a.tgt) + " is not a vertex");
  }
}

bool Quiver::has_vertex(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

const Arrow& Quiver::arrow(const ArrowId& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) fail(ErrorKind::Lookup, "unknown arrow \"" + id + "\"");
  return arrows_[it->second];
}

std::size_t Quiver::vertex_index(VertexId v) const {
  const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) fail(ErrorKind::Lookup, "unknown vertex " + std::to_string(v));
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::vector<Arrow> Quiver::arrows_from(VertexId v) const {
  std::vector<Arrow> out;
  for (const Arrow& a : arrows_)
    if (a.src == v) out.push_back(a);
  return out;
}

std::vector<Arrow> Quiver::arrows_to(VertexId v) const {
  std::vector<Arrow> out;
  for (const Arrow& a : arrows_)
    if (a.tgt == v) out.push_back(a);
  return out;
}

std::size_t Quiver::count(VertexId src, VertexId tgt) const {
  return static_cast<std::size_t>(std::count_if(
      arrows_.begin(), arrows_.end(), [&](const Arrow& a) { return a.src == src && a.tgt == tgt; }));
}

std::size_t Quiver::valency(VertexId v) const {
  std::size_t n = 0;
  for (const Arrow& a : arrows_) n += (a.src == v) + (a.tgt == v);
  return n;
}

bool Quiver::has_loop_at(VertexId v) const { return count(v, v) > 0; }

bool Quiver::has_two_cycle_at(VertexId v) const {
  for (const Arrow& a : arrows_)
    if (a.src == v && a.tgt != v && count(a.tgt, v) > 0) return true;
  return false;
}

bool Quiver::has_loops() const {
  return std::any_of(arrows_.begin(), arrows_.end(), [](const Arrow& a) { return a.src == a.tgt; });
}

bool Quiver::has_two_cycles() const {
  return std::any_of(vertices_.begin(), vertices_.end(), [&](VertexId v) { return has_two_cycle_at(v); });
}

bool Quiver::is_acyclic() const {
  // Kahn's algorithm on the vertex graph.
  std::map<VertexId, std::size_t> indeg;
  for (VertexId v : vertices_) indeg[v] = 0;
  for (const Arrow& a : arrows_) ++indeg[a.tgt];
  std::vector<VertexId> ready;
  for (const auto& [v, d] : indeg)
    if (d == 0) ready.push_back(v);
  std::size_t removed = 0;
  while (!ready.empty()) {
    const VertexId v = ready.back();
    ready.pop_back();
    ++removed;
    for (const Arrow& a : arrows_)
      if (a.src == v && --indeg[a.tgt] == 0) ready.push_back(a.tgt);
  }
  return removed == vertices_.size();
}

bool Quiver::is_connected() const {
  if (vertices_.empty()) return true;
  std::set<VertexId> seen{vertices_.front()};
  std::vector<VertexId> stack{vertices_.front()};
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const Arrow& a : arrows_) {
      VertexId other;
      if (a.src == v) other = a.tgt;
      else if (a.tgt == v) other = a.src;
      else continue;
      if (seen.insert(other).second) stack.push_back(other);
    }
  }
  return seen.size() == vertices_.size();
}

Quiver Quiver::full_subquiver(const std::set<VertexId>& keep) const {
  std::vector<VertexId> verts;
  for (VertexId v : vertices_)
    if (keep.contains(v)) verts.push_back(v);
  std::vector<Arrow> arrows;
  for (const Arrow& a : arrows_)
    if (keep.contains(a.src) && keep.contains(a.tgt)) arrows.push_back(a);
  return Quiver(std::move(verts), std::move(arrows));
}

ArrowId Quiver::fresh_arrow_id(const std::string& base, const std::set<ArrowId>& taken) const {
  auto free = [&](const ArrowId& id) { return !has_arrow(id) && !taken.contains(id); };
  if (free(base)) return base;
  for (int k = 2;; ++k) {
    ArrowId candidate = base + "~" + std::to_string(k);
    if (free(candidate)) return candidate;
  }
}

Quiver atilde_quiver(int p, int q) {
  if (p < 1 || q < 1) fail(ErrorKind::Precondition, "atilde_quiver needs p, q >= 1");
  const int n = p + q;
  std::vector<VertexId> verts;
  for (int v = 1; v <= n; ++v) verts.push_back(v);
  std::vector<Arrow> arrows;
  for (int i = 1; i <= p; ++i) arrows.push_back({"a" + std::to_string(i), i, i + 1});
  for (int l = 1; l < q; ++l) arrows.push_back({"b" + std::to_string(l), p + l + 1, p + l});
  arrows.push_back({"b" + std::to_string(q), 1, n});
  return Quiver(std::move(verts), std::move(arrows));
}

Quiver linear_an_quiver(int n) {
  if (n < 1) fail(ErrorKind::Precondition, "linear_an_quiver needs n >= 1");
  std::vector<VertexId> verts;
  std::vector<Arrow> arrows;
  for (int v = 1; v <= n; ++v) verts.push_back(v);
  for (int v = 1; v < n; ++v) arrows.push_back({"a" + std::to_string(v), v, v + 1});
  return Quiver(std::move(verts), std::move(arrows));
}

}  // namespace qpmut
