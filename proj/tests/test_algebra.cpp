#include <doctest.h>

#include <functional>

#include "qpmut/algebra.hpp"
#include "qpmut/canonical.hpp"
#include "qpmut/census.hpp"
#include "qpmut/invariants.hpp"
#include "support.hpp"

using namespace qpt;

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

/// Paths i -> j avoiding relations, by depth-first search.
std::vector<std::vector<long long>> count_paths(const PresentedAlgebra& alg) {
  const Quiver& q = alg.quiver;
  const std::size_t n = q.vertex_count();
  std::vector<std::vector<long long>> c(n, std::vector<long long>(n, 0));
  std::function<void(VertexId, VertexId, const ArrowId*, int)> walk = [&](VertexId start, VertexId at, const ArrowId* last,
                                                                          int depth) {
    ++c[q.vertex_index(start)][q.vertex_index(at)];
    REQUIRE(depth < 64);
    for (const Arrow& a : q.arrows_from(at)) {
      if (last != nullptr && alg.relations.contains({*last, a.id})) continue;
      walk(start, a.tgt, &a.id, depth + 1);
    }
  };
  for (VertexId v : q.vertices()) walk(v, v, nullptr, 0);
  return c;
}

RMatrix inverse(RMatrix m) {
  const std::size_t n = m.size();
  RMatrix inv(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (m[piv][col] == 0) ++piv;
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const Rational d = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r)
      if (r != col && m[r][col] != 0) {
        const Rational f = m[r][col];
        for (std::size_t j = 0; j < n; ++j) {
          m[r][j] -= f * m[col][j];
          inv[r][j] -= f * inv[col][j];
        }
      }
  }
  return inv;
}

Rational det(RMatrix m) {
  const std::size_t n = m.size();
  Rational out = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      out = -out;
    }
    out *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return out;
}

/// det(X - Phi) evaluated at X = 0..n and interpolated.
Polynomial oracle_coxeter(const PresentedAlgebra& alg) {
  const auto counts = count_paths(alg);
  const std::size_t n = counts.size();
  RMatrix c(n, std::vector<Rational>(n)), ct(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      c[i][j] = counts[i][j];
      ct[j][i] = counts[i][j];
    }
  const RMatrix cti = inverse(ct);
  RMatrix phi(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) phi[i][j] -= cti[i][k] * c[k][j];
  std::vector<Rational> values;
  for (std::size_t x = 0; x <= n; ++x) {
    RMatrix m = phi;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = (i == j ? Rational(static_cast<long long>(x)) : Rational(0)) - phi[i][j];
    values.push_back(det(m));
  }
  // Newton divided differences on the nodes 0..n, then expand.
  std::vector<Rational> coef = values;
  for (std::size_t level = 1; level <= n; ++level)
    for (std::size_t i = n; i >= level; --i) coef[i] = (coef[i] - coef[i - 1]) / Rational(static_cast<long long>(level));
  std::vector<Rational> poly{coef[n]};
  for (std::size_t k = n; k-- > 0;) {
    std::vector<Rational> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * Rational(static_cast<long long>(k));
    }
    next[0] += coef[k];
    poly = next;
  }
  Polynomial out;
  for (const Rational& r : poly) {
    REQUIRE(is_integer(r));
    out.push_back(static_cast<long long>(numerator(r)));
  }
  while (out.size() > n + 1) out.pop_back();
  return out;
}

PresentedAlgebra hereditary(const Quiver& q) { return PresentedAlgebra(q, {}); }

}  // namespace

TEST_CASE("degree zero part examples") {
  const PresentedAlgebra lambda = degree_zero_part(fixture("overline5.qp.json"));
  CHECK(lambda.quiver.vertex_count() == 5);
  CHECK(lambda.quiver.arrow_count() == 6);
  CHECK(lambda.relations == std::set<Relation>{{"alpha", "beta"}});
  CHECK(lambda == algebra_from_json(parse_json(read_text(data_path("overline5.alg.json")))));

  const PresentedAlgebra plain = degree_zero_part(fixture("atilde22-a.qp.json"));
  CHECK(plain.relations.empty());
  CHECK(plain.quiver.arrow_count() == 4);

  const PresentedAlgebra d4 = degree_zero_part(fixture("d4-gldim3.qp.json"));
  CHECK(d4.quiver.arrow_count() == 3);
  CHECK(d4.relations == std::set<Relation>{{"b'", "c"}, {"c", "a"}});
  CHECK(d4.quiver.arrow("b'").src == 3);
  CHECK(d4.quiver.arrow("c").src == 4);
  CHECK(d4.quiver.arrow("a").tgt == 2);
}

TEST_CASE("degree zero part rejects non-W-gradings") {
  const GradedQP qbar = fixture("overline5.qp.json");
  CHECK_THROWS_AS(degree_zero_part(GradedQP(qbar.quiver, qbar.potential, zero_degrees(qbar.quiver))), QpError);
}

TEST_CASE("overline construction examples and round trip") {
  const PresentedAlgebra lambda = algebra_from_json(parse_json(read_text(data_path("overline5.alg.json"))));
  const GradedQP qbar = build_overline_qp(lambda);
  REQUIRE(qbar.quiver.arrow_count() == 7);
  const Arrow& r = qbar.quiver.arrow("r1");
  CHECK(r.src == 3);
  CHECK(r.tgt == 1);
  CHECK(qbar.degree("r1") == 1);
  REQUIRE(qbar.potential.size() == 1);
  CHECK(qbar.potential.terms().begin()->first ==
        canonicalize_word(qbar.quiver, std::vector<ArrowId>{"alpha", "beta", "r1"}));
  CHECK(check_w_grading(qbar));
  CHECK(degree_zero_part(qbar) == lambda);

  const GradedQP a = build_overline_qp(hereditary(fixture("atilde22-a.qp.json").quiver));
  CHECK(a.potential.empty());
  CHECK(a.quiver == fixture("atilde22-a.qp.json").quiver);
  CHECK(find_acyclic_sequence(a)->empty());

  const ClassificationReport rep = classify(3, 2);
  for (const GradedAlgebraEntry& e : rep.algebras) {
    const GradedQP& base = rep.quivers[e.quiver];
    const PresentedAlgebra alg = degree_zero_part(GradedQP(base.quiver, base.potential, e.degrees));
    CHECK(degree_zero_part(build_overline_qp(alg)) == alg);
  }
}

TEST_CASE("path basis examples") {
  CHECK(path_basis(hereditary(linear_an_quiver(2))).dimension == 3);
  const PresentedAlgebra d4 = degree_zero_part(fixture("d4-gldim3.qp.json"));
  CHECK(path_basis(d4).dimension == 7);
  for (const auto& [p, q] : std::vector<std::pair<int, int>>{{2, 2}, {3, 1}, {4, 3}, {5, 2}}) {
    const PresentedAlgebra h = hereditary(atilde_quiver(p, q));
    long long expected = 0;
    for (const auto& row : count_paths(h))
      for (long long x : row) expected += x;
    CHECK(path_basis(h).dimension == static_cast<std::size_t>(expected));
  }
  const Quiver tri = vertices_and({1, 2, 3}, {arrow("a", 1, 2), arrow("b", 2, 3), arrow("c", 3, 1)});
  try {
    path_basis(hereditary(tri));
    FAIL("expected dimensionality error");
  } catch (const QpError& e) {
    CHECK(e.kind() == ErrorKind::Dimensionality);
  }
}

TEST_CASE("path basis is closed under truncation") {
  const ClassificationReport rep = classify(3, 3);
  for (const GradedAlgebraEntry& e : rep.algebras) {
    const GradedQP& base = rep.quivers[e.quiver];
    const PresentedAlgebra alg = degree_zero_part(GradedQP(base.quiver, base.potential, e.degrees));
    const PathBasis basis = path_basis(alg);
    std::set<Path> all;
    for (const auto& [ends, paths] : basis.paths) all.insert(paths.begin(), paths.end());
    for (const Path& p : all)
      if (!p.empty()) {
        CHECK(all.contains(Path(p.begin() + 1, p.end())));
        CHECK(all.contains(Path(p.begin(), p.end() - 1)));
      }
  }
}

TEST_CASE("global dimension examples") {
  CHECK(global_dimension(hereditary(linear_an_quiver(4))) == 1);
  CHECK(global_dimension(hereditary(atilde_quiver(3, 2))) == 1);
  CHECK(global_dimension(PresentedAlgebra(Quiver({1}, {}), {})) == 0);
  CHECK(global_dimension(degree_zero_part(fixture("d4-gldim3.qp.json"))) == 3);
  CHECK(global_dimension(degree_zero_part(fixture("overline5.qp.json"))) == 2);
}

TEST_CASE("Coxeter polynomial anchors") {
  CHECK(coxeter_polynomial(hereditary(linear_an_quiver(2))) == Polynomial{1, 1, 1});
  for (int n = 1; n <= 8; ++n) CHECK(coxeter_polynomial(hereditary(linear_an_quiver(n))) == Polynomial(n + 1, 1));
  for (const auto& [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {3, 1}, {4, 3}}) {
    Polynomial expected(p + q + 1, 0);
    expected[0] += 1;
    expected[p] -= 1;
    expected[q] -= 1;
    expected[p + q] += 1;
    const Polynomial got = coxeter_polynomial(hereditary(atilde_quiver(p, q)));
    CHECK(got == expected);
    CHECK(got == oracle_coxeter(hereditary(atilde_quiver(p, q))));
  }
  const ClassificationReport rep = classify(2, 2);
  bool seen_weight_one = false;
  for (const GradedAlgebraEntry& e : rep.algebras)
    if (e.canonical == 1) {
      seen_weight_one = true;
      CHECK(e.coxeter == Polynomial{1, 1, 0, 1, 1});
    }
  CHECK(seen_weight_one);
}

TEST_CASE("Coxeter polynomial agrees with an evaluation oracle on every enumerated algebra") {
  for (const auto& [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 2}, {4, 2}}) {
    const ClassificationReport rep = classify(p, q);
    for (const GradedAlgebraEntry& e : rep.algebras) {
      const GradedQP& base = rep.quivers[e.quiver];
      const PresentedAlgebra alg = degree_zero_part(GradedQP(base.quiver, base.potential, e.degrees));
      CHECK(coxeter_polynomial(alg) == oracle_coxeter(alg));
      CHECK(cartan_matrix(alg) == count_paths(alg));
    }
  }
}

TEST_CASE("Coxeter needs a unimodular Cartan matrix") {
  const Quiver tri = vertices_and({1, 2, 3}, {arrow("a", 1, 2), arrow("b", 2, 3), arrow("c", 3, 1)});
  const PresentedAlgebra jac(tri, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
  CHECK(path_basis(jac).dimension == 6);
  CHECK_FALSE(global_dimension(jac).has_value());
  try {
    coxeter_polynomial(jac);
    FAIL("expected convention error");
  } catch (const QpError& e) {
    CHECK(e.kind() == ErrorKind::Convention);
  }
}

TEST_CASE("induced graded quivers of the overline QP: Coxeter data is consistent with the grading verdict") {
  const GradedQP qbar = fixture("overline5.qp.json");
  const GradedQP first = mutate(qbar, MutationSequence{{2, Direction::Left}});
  const GradedQP second = mutate(qbar, MutationSequence{{2, Direction::Left}, {5, Direction::Left}, {4, Direction::Left},
                                                        {1, Direction::Left}, {2, Direction::Left}});
  // W = 0 and degrees are nonnegative, so degree zero is spanned by paths of degree-0 arrows.
  const auto degree_zero_paths = [](const GradedQP& qp) {
    REQUIRE(qp.potential.empty());
    std::vector<Arrow> arrows;
    for (const Arrow& a : qp.quiver.arrows())
      if (qp.degree(a.id) == 0) arrows.push_back(a);
    return PresentedAlgebra(Quiver(qp.quiver.vertices(), arrows), {});
  };
  const Polynomial c1 = coxeter_polynomial(degree_zero_paths(first));
  const Polynomial c2 = coxeter_polynomial(degree_zero_paths(second));
  const auto iso = find_isomorphism(second.quiver, first.quiver);
  REQUIRE(iso);
  DegreeMap carried;
  for (const auto& [from, to] : iso->arrows) carried[to] = second.degree(from);
  const GradingVerdict v = grading_equivalent(first.quiver, first.degrees, carried, true);
  if (c1 != c2) CHECK_FALSE(v.equivalent);
  CHECK_FALSE(v.equivalent);
}

TEST_CASE("relations must be paths of known arrows") {
  const Quiver q = linear_an_quiver(3);
  const ArrowId a = q.arrows()[0].id, b = q.arrows()[1].id;
  CHECK_NOTHROW(PresentedAlgebra(q, {{a, b}}));
  CHECK_THROWS_AS(PresentedAlgebra(q, {{b, a}}), QpError);
  CHECK_THROWS_AS(PresentedAlgebra(q, {{a, "zz"}}), QpError);
  CHECK(characteristic_polynomial({{Rational(2)}}) == std::vector<Rational>{-2, 1});
  CHECK(determinant({{1, 2}, {3, 4}}) == -2);
}
