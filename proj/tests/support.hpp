#pragma once

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qpmut/classes.hpp"
#include "qpmut/io.hpp"

namespace qpt {

using namespace qpmut;

inline std::string data_path(const std::string& name) { return std::string(QPMUT_DATA_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline GradedQP fixture(const std::string& name) { return parse_qp(read_text(data_path(name))); }

inline Arrow arrow(const std::string& id, VertexId s, VertexId t) { return Arrow{id, s, t}; }

inline Quiver vertices_and(std::vector<VertexId> vs, std::vector<Arrow> as) { return Quiver(std::move(vs), std::move(as)); }

/// Sorted degree multiset on each ordered vertex pair, indexed by position.
inline std::vector<std::vector<std::vector<int>>> labelled_counts(const Quiver& q, const DegreeMap* d) {
  const std::size_t n = q.vertex_count();
  std::vector<std::vector<std::vector<int>>> m(n, std::vector<std::vector<int>>(n));
  for (const Arrow& a : q.arrows())
    m[q.vertex_index(a.src)][q.vertex_index(a.tgt)].push_back(d != nullptr ? d->at(a.id) : 0);
  for (auto& row : m)
    for (auto& cell : row) std::sort(cell.begin(), cell.end());
  return m;
}

/// Tries every vertex bijection.
inline bool brute_force_isomorphic(const Quiver& a, const Quiver& b, const DegreeMap* da = nullptr,
                                   const DegreeMap* db = nullptr) {
  if (a.vertex_count() != b.vertex_count() || a.arrow_count() != b.arrow_count()) return false;
  const auto ma = labelled_counts(a, da);
  const auto mb = labelled_counts(b, db);
  std::vector<std::size_t> perm(a.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < perm.size() && ok; ++i)
      for (std::size_t j = 0; j < perm.size() && ok; ++j) ok = ma[i][j] == mb[perm[i]][perm[j]];
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Signed arrow counts, computed directly without the library helper.
inline std::vector<std::vector<int>> signed_counts(const Quiver& q) {
  const std::size_t n = q.vertex_count();
  std::vector<std::vector<int>> b(n, std::vector<int>(n, 0));
  for (const Arrow& a : q.arrows()) {
    ++b[q.vertex_index(a.src)][q.vertex_index(a.tgt)];
    --b[q.vertex_index(a.tgt)][q.vertex_index(a.src)];
  }
  return b;
}

/// Random quiver on vertices 1..n with `m` arrows, no loops, no 2-cycles.
inline Quiver random_quiver(std::mt19937& rng, int n, int m, int max_multiplicity = 2) {
  std::vector<Arrow> arrows;
  std::vector<std::vector<int>> count(n + 1, std::vector<int>(n + 1, 0));
  std::uniform_int_distribution<int> pick(1, n);
  for (int tries = 0; static_cast<int>(arrows.size()) < m && tries < 50 * m; ++tries) {
    const int s = pick(rng), t = pick(rng);
    if (s == t || count[t][s] > 0 || count[s][t] >= max_multiplicity) continue;
    ++count[s][t];
    arrows.push_back({"r" + std::to_string(arrows.size()), s, t});
  }
  std::vector<VertexId> vs(n);
  std::iota(vs.begin(), vs.end(), 1);
  return Quiver(vs, arrows);
}

/// Random tree on 1..n with random orientations.
inline Quiver random_tree(std::mt19937& rng, int n) {
  std::vector<Arrow> arrows;
  for (int v = 2; v <= n; ++v) {
    const int parent = std::uniform_int_distribution<int>(1, v - 1)(rng);
    if (rng() % 2 == 0)
      arrows.push_back({"t" + std::to_string(v), parent, v});
    else
      arrows.push_back({"t" + std::to_string(v), v, parent});
  }
  std::vector<VertexId> vs(n);
  std::iota(vs.begin(), vs.end(), 1);
  return Quiver(vs, arrows);
}

struct AtildeInstance {
  int p = 0;
  int q = 0;
  GradedQP qp;
};

/// A random W_Q-graded quiver from the mutation class of Ã_{p,q}, p+q <= max_total.
inline AtildeInstance random_atilde_qp(std::mt19937& rng, int max_total) {
  std::vector<std::pair<int, int>> shapes;
  for (int total = 2; total <= max_total; ++total)
    for (int q = 1; 2 * q <= total; ++q) shapes.emplace_back(total - q, q);
  const auto [p, q] = shapes[rng() % shapes.size()];
  const MutationClass& mc = atilde_mutation_class(p, q);
  const Quiver& quiver = mc.representatives[rng() % mc.representatives.size()];
  const Potential w = class_potential(quiver);
  const std::vector<DegreeMap> gradings = enumerate_w_gradings(quiver, w, false);
  return {p, q, GradedQP(quiver, w, gradings[rng() % gradings.size()])};
}

/// Vertices where a mutation is admissible (no loop or 2-cycle at i).
inline std::vector<VertexId> admissible_vertices(const Quiver& q) {
  std::vector<VertexId> out;
  for (VertexId v : q.vertices())
    if (!q.has_loop_at(v) && !q.has_two_cycle_at(v)) out.push_back(v);
  return out;
}

/// Arrows u->v carrying degree d, as a sorted list of (u, v, d).
inline std::vector<std::tuple<VertexId, VertexId, int>> graded_edges(const GradedQP& qp) {
  std::vector<std::tuple<VertexId, VertexId, int>> out;
  for (const Arrow& a : qp.quiver.arrows()) out.emplace_back(a.src, a.tgt, qp.degree(a.id));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qpt
