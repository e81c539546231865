#include "qpmut/algebra.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "qpmut/errors.hpp"
#include "qpmut/jacobian.hpp"

namespace qpmut {

PresentedAlgebra::PresentedAlgebra(Quiver q, std::set<Relation> rels)
    : quiver(std::move(q)), relations(std::move(rels)) {
  for (const auto& [a, b] : relations) {
    const Arrow& first = quiver.arrow(a);
    const Arrow& second = quiver.arrow(b);
    if (first.tgt != second.src)
      fail(ErrorKind::Composition, "relation (\"" + a + "\", \"" + b + "\") is not a path: target " +
                                       std::to_string(first.tgt) + " differs from source " +
                                       std::to_string(second.src));
  }
}

PresentedAlgebra degree_zero_part(const GradedQP& qp) {
  if (const Verdict v = check_w_grading(qp); !v) fail(ErrorKind::Precondition, "not a W-grading: " + v.reason);
  std::vector<Arrow> arrows;
  for (const Arrow& a : qp.quiver.arrows())
    if (qp.degree(a.id) == 0) arrows.push_back(a);
  std::set<Relation> rels;
  for (const JacobianRelation& r : jacobian_relations(qp, true)) {
    if (r.relation.size() != 1 || r.relation.begin()->first.size() != 2)
      fail(ErrorKind::UnsupportedPresentation,
           "derivative along \"" + r.arrow + "\" is not a single path of length 2");
    const Path& path = r.relation.begin()->first;
    rels.emplace(path[0], path[1]);
  }
  return PresentedAlgebra(Quiver(qp.quiver.vertices(), std::move(arrows)), std::move(rels));
}

GradedQP build_overline_qp(const PresentedAlgebra& alg) {
  std::vector<Arrow> arrows = alg.quiver.arrows();
  DegreeMap degrees = zero_degrees(alg.quiver);
  std::set<ArrowId> taken;
  std::vector<CyclicWord> words;
  int counter = 0;
  for (const auto& [a, b] : alg.relations) {
    const ArrowId id = alg.quiver.fresh_arrow_id("r" + std::to_string(++counter), taken);
    taken.insert(id);
    arrows.push_back({id, alg.quiver.arrow(b).tgt, alg.quiver.arrow(a).src});
    degrees[id] = 1;
    words.push_back(CyclicWord::from_arrows({a, b, id}));
  }
  Potential w;
  for (const CyclicWord& word : words) w.add(word, 1);
  return GradedQP(Quiver(alg.quiver.vertices(), std::move(arrows)), std::move(w), std::move(degrees));
}

namespace {

bool is_relation(const PresentedAlgebra& alg, const ArrowId& a, const ArrowId& b) {
  return alg.relations.contains({a, b});
}

// Whether the graph on arrows with edges a -> b (composable and, depending on
// `along_relations`, either a relation or not) contains a cycle.
bool arrow_graph_has_cycle(const PresentedAlgebra& alg, bool along_relations) {
  const auto& arrows = alg.quiver.arrows();
  std::map<ArrowId, int> state;
  std::function<bool(const Arrow&)> dfs = [&](const Arrow& a) {
    state[a.id] = 1;
    for (const Arrow& b : arrows) {
      if (b.src != a.tgt || is_relation(alg, a.id, b.id) != along_relations) continue;
      const int s = state[b.id];
      if (s == 1) return true;
      if (s == 0 && dfs(b)) return true;
    }
    state[a.id] = 2;
    return false;
  };
  for (const Arrow& a : arrows)
    if (state[a.id] == 0 && dfs(a)) return true;
  return false;
}

}  // namespace

PathBasis path_basis(const PresentedAlgebra& alg, std::optional<std::size_t> cap) {
  const Quiver& q = alg.quiver;
  const std::size_t limit = cap.value_or(std::max<std::size_t>(q.vertex_count() * q.arrow_count(), 1));
  if (arrow_graph_has_cycle(alg, false))
    fail(ErrorKind::Dimensionality, "infinite-dimensional: some cycle avoids every relation");
  PathBasis basis;
  for (VertexId v : q.vertices()) {
    std::deque<Path> queue{Path{}};
    while (!queue.empty()) {
      Path p = std::move(queue.front());
      queue.pop_front();
      const VertexId end = p.empty() ? v : q.arrow(p.back()).tgt;
      if (p.size() > limit)
        fail(ErrorKind::Dimensionality, "a basis path exceeds length " + std::to_string(limit));
      for (const Arrow& a : q.arrows_from(end)) {
        if (!p.empty() && is_relation(alg, p.back(), a.id)) continue;
        Path grown = p;
        grown.push_back(a.id);
        queue.push_back(std::move(grown));
      }
      basis.paths[{v, end}].push_back(std::move(p));
      ++basis.dimension;
    }
  }
  return basis;
}

namespace {

// Longest relation chain from v; nullopt when a chain can revisit an arrow.
std::optional<int> longest_relation_chain(const PresentedAlgebra& alg, VertexId v) {
  std::map<ArrowId, int> memo;
  std::set<ArrowId> active;
  bool unbounded = false;
  std::function<int(const Arrow&)> longest = [&](const Arrow& a) -> int {
    if (active.contains(a.id)) {
      unbounded = true;
      return 0;
    }
    if (const auto it = memo.find(a.id); it != memo.end()) return it->second;
    active.insert(a.id);
    int best = 1;
    for (const Arrow& b : alg.quiver.arrows_from(a.tgt))
      if (is_relation(alg, a.id, b.id)) best = std::max(best, 1 + longest(b));
    active.erase(a.id);
    return memo[a.id] = best;
  };
  int best = 0;
  for (const Arrow& a : alg.quiver.arrows_from(v)) best = std::max(best, longest(a));
  if (unbounded) return std::nullopt;
  return best;
}

}  // namespace

std::optional<int> simple_projective_dimension(const PresentedAlgebra& alg, VertexId v) {
  path_basis(alg);
  return longest_relation_chain(alg, v);
}

std::optional<int> global_dimension(const PresentedAlgebra& alg) {
  path_basis(alg);
  int best = 0;
  for (VertexId v : alg.quiver.vertices()) {
    const std::optional<int> pd = longest_relation_chain(alg, v);
    if (!pd) return std::nullopt;
    best = std::max(best, *pd);
  }
  return best;
}

IntMatrix cartan_matrix(const PresentedAlgebra& alg) {
  const Quiver& q = alg.quiver;
  const PathBasis basis = path_basis(alg);
  IntMatrix c(q.vertex_count(), std::vector<long long>(q.vertex_count(), 0));
  for (const auto& [ends, paths] : basis.paths)
    c[q.vertex_index(ends.first)][q.vertex_index(ends.second)] = static_cast<long long>(paths.size());
  return c;
}

namespace {

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix out(m.size(), std::vector<Rational>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = Rational(m[i][j]);
  return out;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size();
  RationalMatrix out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

RationalMatrix inverse(RationalMatrix m) {
  const std::size_t n = m.size();
  RationalMatrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) fail(ErrorKind::Convention, "singular Cartan matrix");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational scale = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= scale;
      inv[col][j] /= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

Rational determinant(const RationalMatrix& input) {
  RationalMatrix m = input;
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

RationalMatrix coxeter_matrix(const PresentedAlgebra& alg) {
  const RationalMatrix c = to_rational(cartan_matrix(alg));
  const Rational det = determinant(c);
  if (det != 1 && det != -1)
    fail(ErrorKind::Convention, "Cartan matrix has determinant " + to_string(det) + ", expected +-1");
  const RationalMatrix inv = inverse(c);
  const std::size_t n = c.size();
  RationalMatrix inv_t(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv_t[i][j] = -inv[j][i];
  return multiply(inv_t, c);
}

std::vector<Rational> characteristic_polynomial(const RationalMatrix& a) {
  // Faddeev-LeVerrier.
  const std::size_t n = a.size();
  std::vector<Rational> coeff(n + 1);
  coeff[n] = 1;
  RationalMatrix m(n, std::vector<Rational>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    RationalMatrix next = multiply(a, m);
    for (std::size_t i = 0; i < n; ++i) next[i][i] += coeff[n - k + 1];
    m = std::move(next);
    const RationalMatrix am = multiply(a, m);
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am[i][i];
    coeff[n - k] = -trace / Rational(static_cast<long long>(k));
  }
  return coeff;
}

Polynomial coxeter_polynomial(const PresentedAlgebra& alg) {
  const std::vector<Rational> exact = characteristic_polynomial(coxeter_matrix(alg));
  Polynomial out;
  for (const Rational& c : exact) {
    if (!is_integer(c)) fail(ErrorKind::Consistency, "non-integral Coxeter polynomial coefficient " + to_string(c));
    out.push_back(static_cast<long long>(boost::multiprecision::numerator(c)));
  }
  return out;
}

Polynomial atilde_coxeter_formula(int p, int q, int w) {
  const int n = p + q;
  if (p - w < 0 || q + w < 0 || p - w > n || q + w > n)
    fail(ErrorKind::Precondition, "weight " + std::to_string(w) + " out of range for (" + std::to_string(p) + "," +
                                      std::to_string(q) + ")");
  Polynomial out(static_cast<std::size_t>(n) + 1, 0);
  const long long sign = (w % 2 == 0) ? 1 : -1;
  out[static_cast<std::size_t>(n)] += 1;
  out[static_cast<std::size_t>(p - w)] -= sign;
  out[static_cast<std::size_t>(q + w)] -= sign;
  out[0] += 1;
  return out;
}

}  // namespace qpmut
