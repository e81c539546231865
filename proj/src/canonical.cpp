#include "qpmut/canonical.hpp"

#include <algorithm>
#include <tuple>

#include "qpmut/errors.hpp"

namespace qpmut {

namespace {

// labels[i][j]: sorted degrees of the arrows i -> j (zeros when ungraded).
using Labels = std::vector<std::vector<std::vector<int>>>;
using Cells = std::vector<std::vector<int>>;

Labels build_labels(const Quiver& q, const DegreeMap* degrees) {
  const std::size_t n = q.vertex_count();
  Labels labels(n, std::vector<std::vector<int>>(n));
  for (const Arrow& a : q.arrows()) {
    const int deg = degrees != nullptr ? degrees->at(a.id) : 0;
    labels[q.vertex_index(a.src)][q.vertex_index(a.tgt)].push_back(deg);
  }
  for (auto& row : labels)
    for (auto& cell : row) std::sort(cell.begin(), cell.end());
  return labels;
}

using Signature = std::vector<std::tuple<int, std::vector<int>, std::vector<int>>>;

// Splits cells until every vertex in a cell sees the same labelled
// neighbourhood, counted per cell. Cell order only depends on signatures, so
// the result is labelling-invariant.
void refine(Cells& cells, const Labels& labels) {
  const std::size_t n = labels.size();
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> cell_of(n);
    for (std::size_t c = 0; c < cells.size(); ++c)
      for (int v : cells[c]) cell_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
    Cells next;
    next.reserve(n);
    for (const auto& cell : cells) {
      if (cell.size() == 1) {
        next.push_back(cell);
        continue;
      }
      std::vector<std::pair<Signature, int>> sigs;
      for (int v : cell) {
        Signature s;
        for (std::size_t u = 0; u < n; ++u) {
          const auto& out = labels[static_cast<std::size_t>(v)][u];
          const auto& in = labels[u][static_cast<std::size_t>(v)];
          if (out.empty() && in.empty()) continue;
          s.emplace_back(cell_of[u], out, in);
        }
        std::sort(s.begin(), s.end());
        sigs.emplace_back(std::move(s), v);
      }
      std::sort(sigs.begin(), sigs.end());
      std::vector<int> group{sigs.front().second};
      for (std::size_t k = 1; k < sigs.size(); ++k) {
        if (sigs[k].first != sigs[k - 1].first) {
          next.push_back(std::move(group));
          group.clear();
          changed = true;
        }
        group.push_back(sigs[k].second);
      }
      next.push_back(std::move(group));
    }
    cells = std::move(next);
  }
}

std::vector<int> encode(const Labels& labels, const std::vector<int>& order) {
  std::vector<int> code;
  code.push_back(static_cast<int>(order.size()));
  for (int i : order)
    for (int j : order) {
      const auto& cell = labels[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      code.push_back(static_cast<int>(cell.size()));
      code.insert(code.end(), cell.begin(), cell.end());
    }
  return code;
}

struct Search {
  const Labels& labels;
  std::size_t leaf_limit;
  std::vector<int> best_code;
  std::vector<std::vector<int>> best_orders;

  void run(Cells cells) {
    refine(cells, labels);
    const auto open = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
    if (open == cells.end()) {
      std::vector<int> order;
      order.reserve(cells.size());
      for (const auto& c : cells) order.push_back(c.front());
      std::vector<int> code = encode(labels, order);
      if (best_orders.empty() || code < best_code) {
        best_code = std::move(code);
        best_orders.assign(1, std::move(order));
      } else if (code == best_code && best_orders.size() < leaf_limit) {
        best_orders.push_back(std::move(order));
      }
      return;
    }
    const std::size_t at = static_cast<std::size_t>(open - cells.begin());
    const std::vector<int> members = cells[at];
    for (int v : members) {
      Cells branch;
      branch.reserve(cells.size() + 1);
      branch.insert(branch.end(), cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(at));
      branch.push_back({v});
      std::vector<int> rest;
      for (int u : members)
        if (u != v) rest.push_back(u);
      branch.push_back(std::move(rest));
      branch.insert(branch.end(), cells.begin() + static_cast<std::ptrdiff_t>(at) + 1, cells.end());
      run(std::move(branch));
    }
  }
};

Search run_search(const Quiver& q, const Labels& labels, std::size_t leaf_limit) {
  if (q.vertex_count() > kMaxCanonicalVertices)
    fail(ErrorKind::Capacity, "canonical form supports at most " + std::to_string(kMaxCanonicalVertices) +
                                  " vertices, got " + std::to_string(q.vertex_count()));
  Search search{labels, leaf_limit, {}, {}};
  std::vector<int> all(q.vertex_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  if (all.empty()) {
    search.best_code = encode(labels, {});
    search.best_orders.push_back({});
    return search;
  }
  search.run({all});
  return search;
}

// Arrows of q grouped by (src index, tgt index), each bundle sorted by
// (degree, id).
std::map<std::pair<std::size_t, std::size_t>, std::vector<ArrowId>> bundles(const Quiver& q,
                                                                            const DegreeMap* degrees) {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<ArrowId>> out;
  for (const Arrow& a : q.arrows()) out[{q.vertex_index(a.src), q.vertex_index(a.tgt)}].push_back(a.id);
  for (auto& [key, ids] : out)
    std::sort(ids.begin(), ids.end(), [&](const ArrowId& x, const ArrowId& y) {
      const int dx = degrees != nullptr ? degrees->at(x) : 0;
      const int dy = degrees != nullptr ? degrees->at(y) : 0;
      return std::tie(dx, x) < std::tie(dy, y);
    });
  return out;
}

}  // namespace

CanonicalForm quiver_canonical_form(const Quiver& q, const DegreeMap* degrees) {
  const Labels labels = build_labels(q, degrees);
  const Search search = run_search(q, labels, 1);
  const std::vector<int>& order = search.best_orders.front();

  CanonicalForm form;
  form.code = search.best_code;
  std::vector<VertexId> verts;
  for (std::size_t m = 0; m < order.size(); ++m) {
    const VertexId fresh = static_cast<VertexId>(m + 1);
    verts.push_back(fresh);
    form.vertex_map[q.vertices()[static_cast<std::size_t>(order[m])]] = fresh;
  }
  const auto grouped = bundles(q, degrees);
  std::vector<Arrow> arrows;
  DegreeMap new_degrees;
  const std::size_t width = std::to_string(q.arrow_count()).size();
  std::size_t counter = 0;
  for (std::size_t m = 0; m < order.size(); ++m)
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto it = grouped.find({static_cast<std::size_t>(order[m]), static_cast<std::size_t>(order[k])});
      if (it == grouped.end()) continue;
      for (const ArrowId& old : it->second) {
        std::string num = std::to_string(++counter);
        num.insert(0, width - num.size(), '0');
        ArrowId id = "x" + num;
        arrows.push_back({id, static_cast<VertexId>(m + 1), static_cast<VertexId>(k + 1)});
        if (degrees != nullptr) new_degrees[id] = degrees->at(old);
        form.arrow_map[old] = id;
      }
    }
  form.quiver = Quiver(std::move(verts), std::move(arrows));
  if (degrees != nullptr) form.degrees = std::move(new_degrees);
  return form;
}

namespace {

// Appends every bijection from `from` onto `to` that keeps degrees when
// `degrees` is set.
void extend_arrow_maps(const std::vector<ArrowId>& from, const std::vector<ArrowId>& to, const DegreeMap* degrees,
                       std::vector<std::map<ArrowId, ArrowId>>& partial, std::size_t limit) {
  std::vector<std::map<ArrowId, ArrowId>> next;
  std::vector<std::size_t> perm(to.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::vector<std::vector<std::size_t>> valid;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < from.size() && ok; ++i)
      ok = degrees == nullptr || degrees->at(from[i]) == degrees->at(to[perm[i]]);
    if (ok) valid.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (const auto& base : partial)
    for (const auto& p : valid) {
      if (next.size() >= limit) break;
      auto m = base;
      for (std::size_t i = 0; i < from.size(); ++i) m[from[i]] = to[p[i]];
      next.push_back(std::move(m));
    }
  partial = std::move(next);
}

}  // namespace

std::vector<QuiverAutomorphism> quiver_automorphisms(const Quiver& q, const DegreeMap* degrees, std::size_t limit) {
  const Labels labels = build_labels(q, degrees);
  const Search search = run_search(q, labels, limit);
  const auto grouped = bundles(q, degrees);
  const std::vector<int>& base = search.best_orders.front();
  std::vector<QuiverAutomorphism> out;
  for (const auto& order : search.best_orders) {
    std::vector<std::size_t> sigma(order.size());
    for (std::size_t m = 0; m < order.size(); ++m)
      sigma[static_cast<std::size_t>(base[m])] = static_cast<std::size_t>(order[m]);
    std::vector<std::map<ArrowId, ArrowId>> arrow_maps{{}};
    for (const auto& [key, ids] : grouped) {
      const auto& image = grouped.at({sigma[key.first], sigma[key.second]});
      extend_arrow_maps(ids, image, degrees, arrow_maps, limit);
    }
    for (auto& am : arrow_maps) {
      if (out.size() >= limit) return out;
      QuiverAutomorphism aut;
      for (std::size_t i = 0; i < sigma.size(); ++i) aut.vertices[q.vertices()[i]] = q.vertices()[sigma[i]];
      aut.arrows = std::move(am);
      out.push_back(std::move(aut));
    }
  }
  return out;
}

std::optional<QuiverAutomorphism> find_isomorphism(const Quiver& a, const Quiver& b, const DegreeMap* da,
                                                   const DegreeMap* db) {
  if (a.vertex_count() != b.vertex_count() || a.arrow_count() != b.arrow_count()) return std::nullopt;
  const CanonicalForm fa = quiver_canonical_form(a, da);
  const CanonicalForm fb = quiver_canonical_form(b, db);
  if (fa.code != fb.code) return std::nullopt;
  std::map<VertexId, VertexId> from_canon_v;
  for (const auto& [orig, canon] : fb.vertex_map) from_canon_v[canon] = orig;
  std::map<ArrowId, ArrowId> from_canon_a;
  for (const auto& [orig, canon] : fb.arrow_map) from_canon_a[canon] = orig;
  QuiverAutomorphism iso;
  for (const auto& [orig, canon] : fa.vertex_map) iso.vertices[orig] = from_canon_v.at(canon);
  for (const auto& [orig, canon] : fa.arrow_map) iso.arrows[orig] = from_canon_a.at(canon);
  return iso;
}

GradedQP canonical_graded_qp(const GradedQP& qp) {
  const CanonicalForm form = quiver_canonical_form(qp.quiver, &qp.degrees);
  const auto relabel = [](const Potential& src, const std::map<ArrowId, ArrowId>& arrows) {
    Potential w;
    for (const auto& [word, coeff] : src.terms()) {
      std::vector<ArrowId> renamed;
      for (const ArrowId& a : word.arrows()) renamed.push_back(arrows.at(a));
      w.add(CyclicWord::from_arrows(std::move(renamed)), coeff);
    }
    return w;
  };
  const Potential base = relabel(qp.potential, form.arrow_map);
  // Graded automorphisms of the canonical quiver, parallel-arrow swaps included,
  // can still move the potential; keep the least image.
  Potential best = base;
  for (const QuiverAutomorphism& aut : quiver_automorphisms(form.quiver, &*form.degrees)) {
    Potential w = relabel(base, aut.arrows);
    if (w.terms() < best.terms()) best = std::move(w);
  }
  return GradedQP(form.quiver, std::move(best), *form.degrees);
}

}  // namespace qpmut
