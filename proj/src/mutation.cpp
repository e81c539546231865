#include "qpmut/mutation.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <string>

#include "qpmut/canonical.hpp"

namespace qpmut {

const char* to_string(Direction d) noexcept {
  switch (d) {
    case Direction::Left: return "left";
    case Direction::Right: return "right";
    case Direction::Ungraded: return "plain";
  }
  return "?";
}

Direction parse_direction(std::string_view text) {
  if (text == "left") return Direction::Left;
  if (text == "right") return Direction::Right;
  if (text == "plain" || text == "ungraded") return Direction::Ungraded;
  fail(ErrorKind::Parse, "unknown direction \"" + std::string(text) + "\" (expected left, right or plain)");
}

GradedQP premutate(const GradedQP& qp, VertexId i, Direction direction) {
  const Quiver& q = qp.quiver;
  if (!q.has_vertex(i)) fail(ErrorKind::Lookup, "unknown vertex " + std::to_string(i));
  if (q.has_loop_at(i)) fail(ErrorKind::Precondition, "loop at vertex " + std::to_string(i));
  if (q.has_two_cycle_at(i)) fail(ErrorKind::Precondition, "2-cycle at vertex " + std::to_string(i));

  const std::vector<Arrow> incoming = q.arrows_to(i);
  const std::vector<Arrow> outgoing = q.arrows_from(i);
  const bool graded = direction != Direction::Ungraded;

  std::vector<Arrow> arrows;
  DegreeMap degrees;
  std::set<ArrowId> used;
  for (const Arrow& a : q.arrows())
    if (a.src != i && a.tgt != i) {
      arrows.push_back(a);
      degrees[a.id] = graded ? qp.degree(a.id) : 0;
      used.insert(a.id);
    }
  auto claim = [&](const std::string& base) {
    ArrowId id = base;
    for (int k = 2; used.contains(id); ++k) id = base + "~" + std::to_string(k);
    used.insert(id);
    return id;
  };
  auto reversed_name = [&](const ArrowId& id) {
    const std::string starred = id + "*";
    if (starred.size() > 2 && starred.ends_with("**")) {
      const std::string plain = starred.substr(0, starred.size() - 2);
      if (!plain.empty() && !used.contains(plain)) return claim(plain);
    }
    return claim(starred);
  };

  std::map<ArrowId, ArrowId> star;
  for (const Arrow& a : incoming) {
    const ArrowId id = reversed_name(a.id);
    star[a.id] = id;
    arrows.push_back({id, i, a.src});
    degrees[id] = !graded ? 0 : direction == Direction::Left ? 1 - qp.degree(a.id) : -qp.degree(a.id);
  }
  for (const Arrow& b : outgoing) {
    const ArrowId id = reversed_name(b.id);
    star[b.id] = id;
    arrows.push_back({id, b.tgt, i});
    degrees[id] = !graded ? 0 : direction == Direction::Left ? -qp.degree(b.id) : 1 - qp.degree(b.id);
  }
  std::map<std::pair<ArrowId, ArrowId>, ArrowId> composite;
  for (const Arrow& a : incoming)
    for (const Arrow& b : outgoing) {
      const ArrowId id = claim("[" + b.id + a.id + "]");
      composite[{a.id, b.id}] = id;
      arrows.push_back({id, a.src, b.tgt});
      degrees[id] = graded ? qp.degree(a.id) + qp.degree(b.id) : 0;
    }

  Potential w;
  for (const auto& [word, coeff] : qp.potential.terms()) {
    const auto& seq = word.arrows();
    const std::size_t n = seq.size();
    std::size_t start = 0;
    while (start < n && q.arrow(seq[start]).src == i) ++start;
    if (start == n) fail(ErrorKind::Consistency, "potential word made of arrows leaving the mutated vertex");
    std::vector<ArrowId> rewritten;
    for (std::size_t k = 0; k < n; ++k) {
      const ArrowId& cur = seq[(start + k) % n];
      if (q.arrow(cur).tgt == i) {
        const ArrowId& next = seq[(start + k + 1) % n];
        rewritten.push_back(composite.at({cur, next}));
        ++k;
      } else {
        rewritten.push_back(cur);
      }
    }
    w.add(CyclicWord::from_arrows(std::move(rewritten)), coeff);
  }
  for (const Arrow& a : incoming)
    for (const Arrow& b : outgoing)
      w.add(CyclicWord::from_arrows({composite.at({a.id, b.id}), star.at(b.id), star.at(a.id)}), 1);

  return GradedQP(Quiver(q.vertices(), std::move(arrows)), std::move(w), std::move(degrees));
}

namespace {

// Sum of (c / k) times the derivative along `a` over the terms mentioning it,
// where k counts the occurrences of `a` in the term's word. Cyclically,
// a * result reproduces those terms.
PathSum normalized_derivative(const Potential& w, const ArrowId& a) {
  PathSum out;
  for (const auto& [word, coeff] : w.terms()) {
    const std::size_t k = word.occurrences(a);
    if (k == 0) continue;
    const Rational scale = coeff / Rational(static_cast<long long>(k));
    for (const auto& [path, c] : cyclic_derivative(a, word)) add_term(out, path, c * scale);
  }
  return out;
}

PathSum scaled(const PathSum& sum, const Rational& factor) {
  PathSum out;
  for (const auto& [path, c] : sum) add_term(out, path, c * factor);
  return out;
}

void check_length(const Potential& w, std::size_t cap) {
  if (w.max_word_length() > cap)
    fail(ErrorKind::Nontermination, "reduction produced a word of length " + std::to_string(w.max_word_length()) +
                                        " above the cap " + std::to_string(cap));
}

}  // namespace

GradedQP reduce(const GradedQP& qp) {
  const bool homogeneous = qp.is_homogeneous(1);
  const std::size_t cap = std::max<std::size_t>(2 * qp.quiver.arrow_count(), 2);
  Quiver q = qp.quiver;
  Potential w = qp.potential;
  DegreeMap degrees = qp.degrees;

  for (;;) {
    const CyclicWord* pick = nullptr;
    Rational lambda;
    for (const auto& [word, coeff] : w.terms()) {
      if (word.size() == 1) fail(ErrorKind::Precondition, "potential has a loop term \"" + word.arrows()[0] + "\"");
      if (word.size() == 2 && pick == nullptr) {
        pick = &word;
        lambda = coeff;
      }
    }
    if (pick == nullptr) break;
    const CyclicWord trivial = *pick;
    const ArrowId x = trivial.arrows()[0];
    const ArrowId y = trivial.arrows()[1];
    if (x == y) fail(ErrorKind::Precondition, "length-2 term repeats arrow \"" + x + "\"");
    const Rational inv = Rational(1) / lambda;

    auto rest = [&] {
      Potential r = w;
      r.add(trivial, -lambda);
      return r;
    };
    for (Potential r = rest(); r.mentions(x); r = rest()) {
      w = substitute(w, y, scaled(normalized_derivative(r, x), -inv));
      check_length(w, cap);
    }
    {
      const Potential r = rest();
      if (r.mentions(y)) {
        w = substitute(w, x, scaled(normalized_derivative(r, y), -inv));
        check_length(w, cap);
      }
    }
    w.add(trivial, -lambda);
    if (w.mentions(x) || w.mentions(y))
      fail(ErrorKind::Consistency, "arrows \"" + x + "\" and \"" + y + "\" survive their elimination");

    std::vector<Arrow> kept;
    for (const Arrow& a : q.arrows())
      if (a.id != x && a.id != y) kept.push_back(a);
    q = Quiver(q.vertices(), std::move(kept));
    degrees.erase(x);
    degrees.erase(y);
  }

  GradedQP out(std::move(q), std::move(w), std::move(degrees));
  if (homogeneous && !out.is_homogeneous(1))
    fail(ErrorKind::Consistency, "reduction broke homogeneity of the potential");
  return out;
}

GradedQP mutate(const GradedQP& qp, const MutationStep& step) {
  return reduce(premutate(qp, step.vertex, step.direction));
}

GradedQP mutate(const GradedQP& qp, const MutationSequence& steps) {
  GradedQP cur = qp;
  for (const MutationStep& s : steps) cur = mutate(cur, s);
  return cur;
}

MutationSequence with_direction(MutationSequence steps, Direction direction) {
  for (MutationStep& s : steps) s.direction = direction;
  return steps;
}

ExchangeMatrix exchange_matrix(const Quiver& q) {
  const std::size_t n = q.vertex_count();
  ExchangeMatrix b(n, std::vector<int>(n, 0));
  for (const Arrow& a : q.arrows()) {
    const std::size_t s = q.vertex_index(a.src);
    const std::size_t t = q.vertex_index(a.tgt);
    if (s == t) continue;
    ++b[s][t];
    --b[t][s];
  }
  return b;
}

ExchangeMatrix matrix_mutation(const ExchangeMatrix& b, std::size_t k) {
  const std::size_t n = b.size();
  ExchangeMatrix out = b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == k || j == k) {
        out[i][j] = -b[i][j];
      } else {
        const int bik = b[i][k];
        const int bkj = b[k][j];
        out[i][j] = b[i][j] + (std::abs(bik) * bkj + bik * std::abs(bkj)) / 2;
      }
    }
  return out;
}

Quiver quiver_from_exchange_matrix(const std::vector<VertexId>& vertices, const ExchangeMatrix& b) {
  std::vector<Arrow> arrows;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      for (int n = 1; n <= b[i][j]; ++n)
        arrows.push_back({"e" + std::to_string(vertices[i]) + "_" + std::to_string(vertices[j]) + "_" +
                              std::to_string(n),
                          vertices[i], vertices[j]});
  return Quiver(vertices, std::move(arrows));
}

std::optional<std::size_t> MutationClass::find(const Quiver& q) const {
  const std::vector<int> code = canonical_code(q);
  const auto it = std::lower_bound(codes.begin(), codes.end(), code);
  if (it == codes.end() || *it != code) return std::nullopt;
  return static_cast<std::size_t>(it - codes.begin());
}

namespace {

bool matrix_acyclic(const ExchangeMatrix& b) {
  const std::size_t n = b.size();
  std::vector<int> indeg(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b[i][j] > 0) indeg[j] += b[i][j];
  std::vector<std::size_t> ready;
  for (std::size_t j = 0; j < n; ++j)
    if (indeg[j] == 0) ready.push_back(j);
  std::size_t removed = 0;
  while (!ready.empty()) {
    const std::size_t v = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t j = 0; j < n; ++j)
      if (b[v][j] > 0 && (indeg[j] -= b[v][j]) == 0) ready.push_back(j);
  }
  return removed == n;
}

MutationSequence extend(const MutationSequence& s, VertexId v) {
  MutationSequence out = s;
  out.push_back({v, Direction::Ungraded});
  return out;
}

// Labelled state key for the potential-aware fallback search.
std::string qp_key(const GradedQP& qp) {
  std::vector<std::string> parts;
  for (const Arrow& a : qp.quiver.arrows()) parts.push_back(std::to_string(a.src) + ">" + std::to_string(a.tgt));
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const auto& p : parts) key += p + ",";
  std::vector<std::string> words;
  for (const auto& [word, coeff] : qp.potential.terms()) {
    std::vector<VertexId> cyc;
    for (const ArrowId& a : word.arrows()) cyc.push_back(qp.quiver.arrow(a).src);
    std::string s = to_string(coeff) + ":";
    for (VertexId v : cyc) s += std::to_string(v) + ".";
    words.push_back(std::move(s));
  }
  std::sort(words.begin(), words.end());
  key += "|";
  for (const auto& s : words) key += s + ";";
  return key;
}

bool reaches_acyclic(const GradedQP& qp, const MutationSequence& seq) {
  try {
    const GradedQP out = mutate(qp, seq);
    return out.potential.empty() && out.quiver.is_acyclic();
  } catch (const QpError&) {
    return false;
  }
}

std::optional<MutationSequence> qp_search(const GradedQP& qp, std::size_t budget) {
  const GradedQP start(qp.quiver, qp.potential, zero_degrees(qp.quiver));
  std::set<std::string> seen{qp_key(start)};
  std::deque<std::pair<GradedQP, MutationSequence>> queue{{start, {}}};
  std::size_t explored = 0;
  while (!queue.empty()) {
    auto [cur, seq] = std::move(queue.front());
    queue.pop_front();
    if (cur.potential.empty() && cur.quiver.is_acyclic()) return seq;
    if (++explored > budget) return std::nullopt;
    for (VertexId v : cur.quiver.vertices()) {
      GradedQP next;
      try {
        next = mutate(cur, MutationStep{v, Direction::Ungraded});
      } catch (const QpError& e) {
        if (e.is_capacity()) throw;
        continue;
      }
      if (seen.insert(qp_key(next)).second) queue.emplace_back(std::move(next), extend(seq, v));
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<MutationSequence> find_acyclic_sequence(const GradedQP& qp, std::size_t budget) {
  if (qp.potential.empty() && qp.quiver.is_acyclic()) return MutationSequence{};
  if (!qp.quiver.has_loops() && !qp.quiver.has_two_cycles()) {
    const std::vector<VertexId>& verts = qp.quiver.vertices();
    const ExchangeMatrix b0 = exchange_matrix(qp.quiver);
    std::set<ExchangeMatrix> seen{b0};
    std::deque<std::pair<ExchangeMatrix, MutationSequence>> queue{{b0, {}}};
    std::size_t explored = 0;
    bool exhausted = false;
    while (!queue.empty()) {
      auto [b, seq] = std::move(queue.front());
      queue.pop_front();
      if (matrix_acyclic(b) && !seq.empty()) {
        if (reaches_acyclic(qp, seq)) return seq;
        break;
      }
      if (++explored > budget) {
        exhausted = true;
        break;
      }
      for (std::size_t k = 0; k < verts.size(); ++k) {
        ExchangeMatrix next = matrix_mutation(b, k);
        if (seen.insert(next).second) queue.emplace_back(std::move(next), extend(seq, verts[k]));
      }
    }
    if (exhausted) return std::nullopt;
  }
  return qp_search(qp, budget);
}

MutationClass mutation_class(const Quiver& seed, std::size_t max_size) {
  if (seed.has_loops() || seed.has_two_cycles())
    fail(ErrorKind::Precondition, "mutation class seed must have no loops or 2-cycles");
  const std::vector<VertexId>& verts = seed.vertices();

  struct Found {
    Quiver canonical;
    std::vector<int> code;
    MutationSequence provenance;
  };
  std::vector<Found> found;
  std::map<std::vector<int>, std::size_t> index;
  std::set<std::pair<std::size_t, std::size_t>> raw_edges;

  auto finish = [&] {
    std::vector<std::size_t> order(found.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return found[a].code < found[b].code; });
    std::vector<std::size_t> rank(found.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
    MutationClass mc;
    for (std::size_t r : order) {
      mc.representatives.push_back(found[r].canonical);
      mc.codes.push_back(found[r].code);
      mc.provenance.push_back(found[r].provenance);
    }
    for (const auto& [a, b] : raw_edges) mc.edges.insert(std::minmax(rank[a], rank[b]));
    return mc;
  };
  auto visit = [&](const ExchangeMatrix& b, const MutationSequence& seq) -> std::pair<std::size_t, bool> {
    CanonicalForm form = quiver_canonical_form(quiver_from_exchange_matrix(verts, b));
    const auto it = index.find(form.code);
    if (it != index.end()) return {it->second, false};
    const std::size_t id = found.size();
    index.emplace(form.code, id);
    found.push_back({std::move(form.quiver), std::move(form.code), seq});
    if (found.size() > max_size)
      throw MutationClassOverflow("mutation class exceeds " + std::to_string(max_size) + " quivers", finish());
    return {id, true};
  };

  const ExchangeMatrix b0 = exchange_matrix(seed);
  std::deque<std::pair<ExchangeMatrix, std::size_t>> queue;
  queue.emplace_back(b0, visit(b0, {}).first);
  while (!queue.empty()) {
    auto [b, id] = std::move(queue.front());
    queue.pop_front();
    const MutationSequence seq = found[id].provenance;
    for (std::size_t k = 0; k < verts.size(); ++k) {
      ExchangeMatrix next = matrix_mutation(b, k);
      const auto [nid, fresh] = visit(next, extend(seq, verts[k]));
      raw_edges.insert(std::minmax(id, nid));
      if (fresh) queue.emplace_back(std::move(next), nid);
    }
  }
  return finish();
}

}  // namespace qpmut
