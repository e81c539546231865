#include "qpmut/invariants.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>

namespace qpmut {

namespace {

struct TreeLink {
  VertexId parent = 0;
  const Arrow* arrow = nullptr;
};

// Steps from x up to the root of its spanning tree.
std::vector<std::pair<VertexId, const Arrow*>> chain(const std::map<VertexId, TreeLink>& tree, VertexId x) {
  std::vector<std::pair<VertexId, const Arrow*>> out;
  for (auto it = tree.find(x); it != tree.end() && it->second.arrow != nullptr; it = tree.find(it->second.parent))
    out.emplace_back(it->first, it->second.arrow);
  return out;
}

UndirectedCycle cycle_through(const std::map<VertexId, TreeLink>& tree, const Arrow& a) {
  UndirectedCycle cycle{{a.id, true}};
  const auto from_t = chain(tree, a.tgt);
  const auto from_s = chain(tree, a.src);
  std::set<VertexId> on_s{a.src};
  for (const auto& [v, e] : from_s) on_s.insert(e->src == v ? e->tgt : e->src);
  VertexId meet = a.tgt;
  for (const auto& [v, e] : from_t) {
    if (on_s.contains(v)) break;
    cycle.push_back({e->id, e->src == v});
    meet = e->src == v ? e->tgt : e->src;
  }
  std::vector<CycleStep> down;
  for (const auto& [v, e] : from_s) {
    if (v == meet) break;
    down.push_back({e->id, e->src != v});
  }
  std::reverse(down.begin(), down.end());
  cycle.insert(cycle.end(), down.begin(), down.end());
  return cycle;
}

GradingVerdict compare_plain(const Quiver& q, const DegreeMap& d1, const DegreeMap& d2) {
  GradingVerdict v;
  std::map<VertexId, TreeLink> tree;
  std::map<VertexId, int> r;
  for (VertexId root : q.vertices()) {
    if (r.contains(root)) continue;
    r[root] = 0;
    tree[root] = {};
    std::deque<VertexId> queue{root};
    while (!queue.empty()) {
      const VertexId x = queue.front();
      queue.pop_front();
      for (const Arrow& a : q.arrows()) {
        const int delta = d1.at(a.id) - d2.at(a.id);
        if (a.src == x && !r.contains(a.tgt)) {
          r[a.tgt] = r[x] + delta;
          tree[a.tgt] = {x, &a};
          queue.push_back(a.tgt);
        } else if (a.tgt == x && !r.contains(a.src)) {
          r[a.src] = r[x] - delta;
          tree[a.src] = {x, &a};
          queue.push_back(a.src);
        }
      }
    }
  }
  for (const Arrow& a : q.arrows()) {
    const int delta = d1.at(a.id) - d2.at(a.id);
    if (r.at(a.tgt) - r.at(a.src) != delta) {
      v.violated_cycle = a.src == a.tgt ? UndirectedCycle{{a.id, true}} : cycle_through(tree, a);
      return v;
    }
  }
  v.equivalent = true;
  v.offsets = std::move(r);
  return v;
}

}  // namespace

GradingVerdict grading_equivalent(const Quiver& q, const DegreeMap& d1, const DegreeMap& d2,
                                  bool up_to_automorphism) {
  for (const Arrow& a : q.arrows())
    if (!d1.contains(a.id) || !d2.contains(a.id))
      fail(ErrorKind::Lookup, "grading misses arrow \"" + a.id + "\"");
  GradingVerdict plain = compare_plain(q, d1, d2);
  if (plain.equivalent || !up_to_automorphism) return plain;
  for (const QuiverAutomorphism& aut : quiver_automorphisms(q)) {
    DegreeMap moved;
    for (const Arrow& a : q.arrows()) moved[a.id] = d2.at(aut.arrows.at(a.id));
    GradingVerdict v = compare_plain(q, d1, moved);
    if (v.equivalent) {
      v.automorphism = aut;
      return v;
    }
  }
  return plain;
}

std::optional<AtildeShape> atilde_shape(const Quiver& q) {
  const std::size_t n = q.vertex_count();
  if (n < 2 || q.arrow_count() != n || !q.is_connected() || q.has_loops() || !q.is_acyclic()) return std::nullopt;
  for (VertexId v : q.vertices())
    if (q.valency(v) != 2) return std::nullopt;
  std::set<ArrowId> fwd;
  std::set<ArrowId> bwd;
  VertexId at = q.vertices().front();
  ArrowId last;
  for (std::size_t k = 0; k < n; ++k) {
    const Arrow* next = nullptr;
    for (const Arrow& a : q.arrows())
      if ((a.src == at || a.tgt == at) && a.id != last && !fwd.contains(a.id) && !bwd.contains(a.id)) {
        next = &a;
        break;
      }
    if (next == nullptr) return std::nullopt;
    if (next->src == at) {
      fwd.insert(next->id);
      at = next->tgt;
    } else {
      bwd.insert(next->id);
      at = next->src;
    }
    last = next->id;
  }
  AtildeShape s;
  if (fwd.size() >= bwd.size()) {
    s.p_arrows = std::move(fwd);
    s.q_arrows = std::move(bwd);
  } else {
    s.p_arrows = std::move(bwd);
    s.q_arrows = std::move(fwd);
  }
  s.p = static_cast<int>(s.p_arrows.size());
  s.q = static_cast<int>(s.q_arrows.size());
  return s;
}

namespace {

int arm_sum(const std::set<ArrowId>& arrows, const DegreeMap& d) {
  int total = 0;
  for (const ArrowId& a : arrows) total += d.at(a);
  return total;
}

std::string join(const std::set<ArrowId>& ids) {
  std::string out;
  for (const ArrowId& a : ids) out += (out.empty() ? "" : ",") + a;
  return "{" + out + "}";
}

}  // namespace

WeightResult weight_of_grading(const Quiver& q, const DegreeMap& d) {
  const std::optional<AtildeShape> shape = atilde_shape(q);
  if (!shape) fail(ErrorKind::Classification, "quiver is not an acyclic cycle of type Ã");
  WeightResult r;
  r.p = shape->p;
  r.q = shape->q;
  r.weight = arm_sum(shape->p_arrows, d) - arm_sum(shape->q_arrows, d);
  r.canonical = canonical_weight(r.weight, r.p, r.q);
  r.witness = "p-arrows " + join(shape->p_arrows) + ", q-arrows " + join(shape->q_arrows);
  return r;
}

WeightResult weight_structural(const GradedQP& qp) {
  const std::vector<MAtildeDecomposition> all = matilde_decompositions(qp.quiver);
  std::set<CyclicWord> support;
  for (const auto& [word, c] : qp.potential.terms()) support.insert(word);
  std::vector<const MAtildeDecomposition*> chosen;
  for (const auto& d : all) {
    std::set<CyclicWord> words;
    for (const auto& [word, c] : d.wq.terms()) words.insert(word);
    if (words == support) chosen.push_back(&d);
  }
  if (chosen.empty())
    for (const auto& d : all)
      if (GradedQP(qp.quiver, d.wq, qp.degrees).is_homogeneous(1)) chosen.push_back(&d);
  if (chosen.empty()) fail(ErrorKind::NotInClass, "no decomposition as a non-oriented cycle with branches fits");
  std::optional<WeightResult> result;
  for (const MAtildeDecomposition* d : chosen) {
    WeightResult r;
    r.p = d->p;
    r.q = d->q;
    r.weight = arm_sum(d->p_arrows, qp.degrees) - arm_sum(d->q_arrows, qp.degrees);
    r.canonical = canonical_weight(r.weight, r.p, r.q);
    r.witness = "cycle p-arrows " + join(d->p_arrows) + ", q-arrows " + join(d->q_arrows);
    if (!result) {
      result = r;
    } else if (result->p != r.p || result->q != r.q || result->canonical != r.canonical) {
      fail(ErrorKind::Ambiguity, "decompositions disagree: " + result->witness + " gives " +
                                     std::to_string(result->canonical) + ", " + r.witness + " gives " +
                                     std::to_string(r.canonical));
    }
  }
  return *result;
}

WeightResult weight_via_sequence(const GradedQP& qp, const MutationSequence& steps) {
  const GradedQP out = mutate(qp, with_direction(steps, Direction::Left));
  if (!out.potential.empty() || !out.quiver.is_acyclic())
    fail(ErrorKind::Precondition, "mutation sequence does not reach an acyclic quiver with zero potential");
  WeightResult r = weight_of_grading(out.quiver, out.degrees);
  r.sequence = with_direction(steps, Direction::Left);
  std::string seq;
  for (const MutationStep& s : steps) seq += (seq.empty() ? "" : ",") + std::to_string(s.vertex);
  r.witness = "left mutation at [" + seq + "]; " + r.witness;
  return r;
}

WeightResult weight_via_mutation(const GradedQP& qp, std::size_t budget) {
  const std::optional<MutationSequence> seq = find_acyclic_sequence(qp, budget);
  if (!seq) fail(ErrorKind::SearchBudget, "no acyclic mutation sequence within " + std::to_string(budget) + " states");
  return weight_via_sequence(qp, *seq);
}

InducedComparison compare_induced_gradings(const GradedQP& qp, const MutationSequence& s1,
                                           const MutationSequence& s2) {
  const GradedQP r1 = mutate(qp, with_direction(s1, Direction::Left));
  const GradedQP r2 = mutate(qp, with_direction(s2, Direction::Left));
  for (const GradedQP* r : {&r1, &r2})
    if (!r->potential.empty() || !r->quiver.is_acyclic())
      fail(ErrorKind::Precondition, "a sequence does not reach an acyclic quiver with zero potential");
  const std::optional<QuiverAutomorphism> iso = find_isomorphism(r2.quiver, r1.quiver);
  if (!iso) fail(ErrorKind::Precondition, "the two sequences end at non-isomorphic quivers");
  InducedComparison c{r1.quiver, r1.degrees, r2.quiver, r2.degrees, {}, {}};
  for (const auto& [a, b] : iso->arrows) c.transported[b] = r2.degrees.at(a);
  c.verdict = grading_equivalent(r1.quiver, r1.degrees, c.transported, true);
  return c;
}

ClusterType cluster_type(const GradedQP& qp, std::size_t budget) {
  const std::optional<MutationSequence> seq = find_acyclic_sequence(qp, budget);
  if (!seq) fail(ErrorKind::SearchBudget, "no acyclic mutation sequence within " + std::to_string(budget) + " states");
  const Quiver h = mutate(qp, *seq).quiver;
  ClusterType t;
  t.sequence = *seq;
  if (h.is_connected() && h.arrow_count() + 1 == h.vertex_count()) {
    std::vector<Arrow> both = h.arrows();
    for (const Arrow& a : h.arrows()) both.push_back({a.id + "'", a.tgt, a.src});
    t.kind = ClusterKind::Tree;
    t.key = canonical_code(Quiver(h.vertices(), std::move(both)));
    return t;
  }
  if (const auto shape = atilde_shape(h)) {
    t.kind = ClusterKind::Atilde;
    t.p = shape->p;
    t.q = shape->q;
    t.key = {shape->p, shape->q};
    return t;
  }
  fail(ErrorKind::Scope, "cluster type is neither a tree nor of type Ã");
}

DerivedVerdict derived_equivalent(const GradedQP& a1, const GradedQP& a2) {
  const ClusterType t1 = cluster_type(a1);
  const ClusterType t2 = cluster_type(a2);
  if (t1.kind != t2.kind || t1.key != t2.key) fail(ErrorKind::Scope, "inputs have different cluster types");
  DerivedVerdict v;
  v.kind = t1.kind;
  if (t1.kind == ClusterKind::Tree) {
    v.equivalent = true;
    return v;
  }
  v.weight1 = weight_via_sequence(a1, t1.sequence);
  v.weight2 = weight_via_sequence(a2, t2.sequence);
  v.equivalent = v.weight1->canonical == v.weight2->canonical;
  return v;
}

ArSummary ar_summary(int weight) {
  if (weight == 0) return {};
  const int w = std::abs(weight);
  return {true, 3 * w, w, 2 * w};
}

int derived_class_count(int p, int q) {
  if (q < 1 || p < q) fail(ErrorKind::Precondition, "need p >= q >= 1");
  return p == q ? p / 2 + 1 : p / 2 + q / 2 + 1;
}

}  // namespace qpmut
