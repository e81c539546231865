#include "qpmut/classes.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "qpmut/canonical.hpp"

namespace qpmut {

std::vector<UndirectedCycle> simple_cycles(const Quiver& q) {
  std::vector<UndirectedCycle> out;
  std::set<std::vector<ArrowId>> seen;
  for (VertexId start : q.vertices()) {
    std::set<VertexId> visited{start};
    UndirectedCycle path;
    std::function<void(VertexId)> walk = [&](VertexId v) {
      for (const Arrow& a : q.arrows()) {
        if (a.src == a.tgt) continue;
        VertexId other;
        bool forward;
        if (a.src == v) {
          other = a.tgt;
          forward = true;
        } else if (a.tgt == v) {
          other = a.src;
          forward = false;
        } else {
          continue;
        }
        if (!path.empty() && path.back().arrow == a.id) continue;
        if (other == start && !path.empty()) {
          UndirectedCycle cycle = path;
          cycle.push_back({a.id, forward});
          std::vector<ArrowId> key;
          for (const CycleStep& s : cycle) key.push_back(s.arrow);
          std::sort(key.begin(), key.end());
          if (seen.insert(key).second) out.push_back(std::move(cycle));
          continue;
        }
        if (other < start || visited.contains(other)) continue;
        visited.insert(other);
        path.push_back({a.id, forward});
        walk(other);
        path.pop_back();
        visited.erase(other);
      }
    };
    walk(start);
  }
  return out;
}

std::vector<CyclicWord> oriented_three_cycles(const Quiver& q) {
  std::set<CyclicWord> words;
  for (const Arrow& a : q.arrows()) {
    if (a.src == a.tgt) continue;
    for (const Arrow& b : q.arrows_from(a.tgt)) {
      if (b.tgt == a.src || b.tgt == a.tgt) continue;
      for (const Arrow& c : q.arrows_from(b.tgt))
        if (c.tgt == a.src) words.insert(CyclicWord::from_arrows({a.id, b.id, c.id}));
    }
  }
  return {words.begin(), words.end()};
}

Potential sum_of_three_cycles(const Quiver& q) {
  Potential w;
  for (const CyclicWord& word : oriented_three_cycles(q)) w.add(word, 1);
  return w;
}

Verdict is_in_MA(const Quiver& q) {
  if (q.vertex_count() == 0) return Verdict::no("empty quiver");
  if (!q.is_connected()) return Verdict::no("not connected");
  if (q.has_loops()) return Verdict::no("has a loop");
  for (const UndirectedCycle& c : simple_cycles(q)) {
    const bool oriented = std::all_of(c.begin(), c.end(), [&](const CycleStep& s) { return s.forward == c[0].forward; });
    if (c.size() != 3 || !oriented)
      return Verdict::no("cycle through \"" + c[0].arrow + "\" is not an oriented 3-cycle");
  }
  const std::vector<CyclicWord> triangles = oriented_three_cycles(q);
  auto triangles_with = [&](const ArrowId& a) {
    return std::count_if(triangles.begin(), triangles.end(), [&](const CyclicWord& w) { return w.contains(a); });
  };
  for (VertexId v : q.vertices()) {
    const std::size_t val = q.valency(v);
    const std::string at = " at vertex " + std::to_string(v);
    if (val > 4) return Verdict::no("valency " + std::to_string(val) + at);
    std::vector<const CyclicWord*> through;
    for (const CyclicWord& w : triangles)
      for (const ArrowId& a : w.arrows())
        if (q.arrow(a).src == v) through.push_back(&w);
    if (val == 4 && through.size() != 2) return Verdict::no("valency 4 without two 3-cycles" + at);
    if (val == 3) {
      if (through.size() != 1) return Verdict::no("valency 3 without exactly one 3-cycle" + at);
      for (const Arrow& a : q.arrows())
        if ((a.src == v || a.tgt == v) && !through[0]->contains(a.id) && triangles_with(a.id) > 0)
          return Verdict::no("third arrow \"" + a.id + "\" lies in a 3-cycle" + at);
    }
  }
  return Verdict::yes();
}

namespace {

struct Candidate {
  VertexId apex;
  ArrowId alpha1;
  ArrowId alpha2;
  std::vector<ArrowId> alphas;
};

}  // namespace

std::vector<MAtildeDecomposition> matilde_decompositions(const Quiver& q) {
  std::vector<MAtildeDecomposition> out;
  if (!q.is_connected() || q.has_loops() || q.has_two_cycles()) return out;
  const std::vector<CyclicWord> triangles = oriented_three_cycles(q);
  auto in_some_triangle = [&](const ArrowId& a, const ArrowId& b) {
    return std::any_of(triangles.begin(), triangles.end(),
                       [&](const CyclicWord& w) { return w.contains(a) && (b.empty() || w.contains(b)); });
  };

  for (const UndirectedCycle& cycle : simple_cycles(q)) {
    const bool oriented =
        std::all_of(cycle.begin(), cycle.end(), [&](const CycleStep& s) { return s.forward == cycle[0].forward; });
    if (oriented) continue;
    std::set<VertexId> on_cycle;
    std::set<ArrowId> cycle_arrows;
    for (const CycleStep& s : cycle) {
      const Arrow& a = q.arrow(s.arrow);
      on_cycle.insert(a.src);
      on_cycle.insert(a.tgt);
      cycle_arrows.insert(s.arrow);
    }
    bool full = true;
    for (const Arrow& a : q.arrows())
      if (on_cycle.contains(a.src) && on_cycle.contains(a.tgt) && !cycle_arrows.contains(a.id)) full = false;
    if (!full) continue;

    // Outside vertices touching the cycle must span a triangle over a cycle arrow.
    std::vector<Candidate> candidates;
    bool ok = true;
    for (VertexId u : q.vertices()) {
      if (on_cycle.contains(u)) continue;
      std::vector<Arrow> links;
      for (const Arrow& a : q.arrows())
        if ((a.src == u && on_cycle.contains(a.tgt)) || (a.tgt == u && on_cycle.contains(a.src))) links.push_back(a);
      if (links.empty()) continue;
      if (links.size() != 2) {
        ok = false;
        break;
      }
      const Arrow* in = links[0].tgt == u ? &links[0] : &links[1];
      const Arrow* outgoing = links[0].src == u ? &links[0] : &links[1];
      if (in == outgoing || in->tgt != u || outgoing->src != u) {
        ok = false;
        break;
      }
      Candidate c{u, in->id, outgoing->id, {}};
      for (const ArrowId& alpha : cycle_arrows) {
        const Arrow& a = q.arrow(alpha);
        if (a.src == outgoing->tgt && a.tgt == in->src) c.alphas.push_back(alpha);
      }
      if (c.alphas.empty()) {
        ok = false;
        break;
      }
      candidates.push_back(std::move(c));
    }
    if (!ok) continue;

    // Components outside the cycle.
    std::set<VertexId> outside;
    for (VertexId v : q.vertices())
      if (!on_cycle.contains(v)) outside.insert(v);
    const Quiver rest = q.full_subquiver(outside);
    std::map<VertexId, int> component;
    std::vector<std::set<VertexId>> components;
    for (VertexId v : rest.vertices()) {
      if (component.contains(v)) continue;
      std::set<VertexId> comp{v};
      std::vector<VertexId> stack{v};
      while (!stack.empty()) {
        const VertexId x = stack.back();
        stack.pop_back();
        for (const Arrow& a : rest.arrows()) {
          const VertexId other = a.src == x ? a.tgt : a.tgt == x ? a.src : x;
          if (other != x && comp.insert(other).second) stack.push_back(other);
        }
      }
      for (VertexId x : comp) component[x] = static_cast<int>(components.size());
      components.push_back(std::move(comp));
    }
    std::vector<int> apexes_in(components.size(), 0);
    for (const Candidate& c : candidates) ++apexes_in[static_cast<std::size_t>(component.at(c.apex))];
    if (std::any_of(apexes_in.begin(), apexes_in.end(), [](int n) { return n != 1; })) continue;
    for (std::size_t k = 0; k < components.size() && ok; ++k) ok = static_cast<bool>(is_in_MA(q.full_subquiver(components[k])));
    if (!ok) continue;
    for (const Candidate& c : candidates) {
      std::vector<ArrowId> inner;
      for (const Arrow& a : rest.arrows())
        if (a.src == c.apex || a.tgt == c.apex) inner.push_back(a.id);
      if (inner.size() > 2 || (inner.size() == 2 && !in_some_triangle(inner[0], inner[1])) ||
          (inner.size() == 1 && in_some_triangle(inner[0], ""))) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    // Injective choice of cycle arrow per apex.
    std::vector<std::size_t> choice(candidates.size());
    std::set<ArrowId> used;
    std::function<void(std::size_t)> assign = [&](std::size_t k) {
      if (k < candidates.size()) {
        for (std::size_t j = 0; j < candidates[k].alphas.size(); ++j) {
          const ArrowId& alpha = candidates[k].alphas[j];
          if (used.contains(alpha)) continue;
          used.insert(alpha);
          choice[k] = j;
          assign(k + 1);
          used.erase(alpha);
        }
        return;
      }
      MAtildeDecomposition d;
      d.cycle = cycle;
      std::map<ArrowId, int> branch_size;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        const Candidate& c = candidates[i];
        const ArrowId& alpha = c.alphas[choice[i]];
        d.triangles.push_back({alpha, c.apex, c.alpha1, c.alpha2});
        const auto& comp = components[static_cast<std::size_t>(component.at(c.apex))];
        d.branches.push_back(comp);
        branch_size[alpha] = static_cast<int>(comp.size());
        d.wq.add(CyclicWord::from_arrows({alpha, c.alpha1, c.alpha2}), 1);
        d.wq.add(sum_of_three_cycles(q.full_subquiver(comp)));
      }
      std::set<ArrowId> fwd;
      std::set<ArrowId> bwd;
      int n_fwd = 0;
      int n_bwd = 0;
      for (const CycleStep& s : cycle) {
        const int extra = branch_size.contains(s.arrow) ? branch_size.at(s.arrow) : 0;
        if (s.forward) {
          fwd.insert(s.arrow);
          n_fwd += 1 + extra;
        } else {
          bwd.insert(s.arrow);
          n_bwd += 1 + extra;
        }
      }
      if (n_fwd >= n_bwd) {
        d.p_arrows = std::move(fwd);
        d.q_arrows = std::move(bwd);
        d.p = n_fwd;
        d.q = n_bwd;
      } else {
        d.p_arrows = std::move(bwd);
        d.q_arrows = std::move(fwd);
        d.p = n_bwd;
        d.q = n_fwd;
      }
      out.push_back(std::move(d));
    };
    assign(0);
  }
  return out;
}

const MutationClass& atilde_mutation_class(int p, int q) {
  static std::mutex lock;
  static std::map<std::pair<int, int>, std::unique_ptr<MutationClass>> cache;
  const std::lock_guard<std::mutex> guard(lock);
  auto& slot = cache[{p, q}];
  if (!slot) slot = std::make_unique<MutationClass>(mutation_class(atilde_quiver(p, q)));
  return *slot;
}

MAtildeVerdict is_in_MAtilde(const Quiver& quiver, int p, int q) {
  MAtildeVerdict v;
  if (p < q || q < 1) fail(ErrorKind::Precondition, "need p >= q >= 1");
  if (quiver.vertex_count() != static_cast<std::size_t>(p + q)) {
    v.note = "vertex count differs from p+q";
    return v;
  }
  v.member = quiver.vertex_count() <= kMaxCanonicalVertices && !quiver.has_loops() && !quiver.has_two_cycles() &&
             atilde_mutation_class(p, q).find(quiver).has_value();
  for (MAtildeDecomposition& d : matilde_decompositions(quiver))
    if (d.p == p && d.q == q) {
      v.decomposition = std::move(d);
      break;
    }
  if (v.member != v.decomposition.has_value()) {
    v.consistent = false;
    v.note = v.member ? "in the mutation class but no structural decomposition validates"
                      : "structural decomposition validates outside the mutation class";
  }
  return v;
}

Potential class_potential(const Quiver& q) {
  const auto decs = matilde_decompositions(q);
  if (!decs.empty()) return decs.front().wq;
  return sum_of_three_cycles(q);
}

std::vector<DegreeMap> enumerate_w_gradings(const Quiver& q, const Potential& w, bool up_to_iso) {
  std::vector<std::vector<ArrowId>> words;
  std::set<ArrowId> seen;
  for (const auto& [word, coeff] : w.terms()) {
    for (const ArrowId& a : word.arrows())
      if (!seen.insert(a).second) fail(ErrorKind::Consistency, "arrow \"" + a + "\" lies in two potential terms");
    words.push_back(word.arrows());
  }
  std::vector<DegreeMap> out;
  std::set<std::vector<int>> codes;
  DegreeMap d = zero_degrees(q);
  std::function<void(std::size_t)> pick = [&](std::size_t k) {
    if (k == words.size()) {
      if (up_to_iso && !codes.insert(canonical_code(q, &d)).second) return;
      out.push_back(d);
      return;
    }
    for (const ArrowId& a : words[k]) {
      d[a] = 1;
      pick(k + 1);
      d[a] = 0;
    }
  };
  pick(0);
  return out;
}

}  // namespace qpmut
