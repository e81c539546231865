#include <doctest.h>

#include <filesystem>

#include "qpmut/canonical.hpp"
#include "qpmut/census.hpp"
#include "qpmut/invariants.hpp"
#include "support.hpp"

using namespace qpt;

namespace {

Quiver oriented_cycle(int n) {
  std::vector<Arrow> arrows;
  std::vector<VertexId> vs;
  for (int k = 1; k <= n; ++k) {
    vs.push_back(k);
    arrows.push_back({"o" + std::to_string(k), k, k % n + 1});
  }
  return Quiver(vs, arrows);
}

}  // namespace

TEST_CASE("M^A recognizer examples") {
  CHECK(is_in_MA(linear_an_quiver(4)));
  CHECK(is_in_MA(oriented_cycle(3)));
  CHECK_FALSE(is_in_MA(oriented_cycle(4)));
  CHECK_FALSE(is_in_MA(atilde_quiver(2, 2)));
}

TEST_CASE("M^A recognizer agrees with mutation classes of linear A_n") {
  for (int n = 2; n <= 7; ++n) {
    const MutationClass mc = mutation_class(linear_an_quiver(n));
    for (const Quiver& q : mc.representatives) CHECK(is_in_MA(q));
  }
  std::mt19937 rng(8);
  int positives = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const Quiver q = random_quiver(rng, n, n - 1 + static_cast<int>(rng() % 3), 1);
    if (!q.is_connected()) continue;
    const MutationClass mc = mutation_class(linear_an_quiver(n));
    const bool member = mc.find(q).has_value();
    positives += member ? 1 : 0;
    CHECK(static_cast<bool>(is_in_MA(q)) == member);
  }
  CHECK(positives > 30);
}

TEST_CASE("M^Ã recognizer examples") {
  for (const char* name : {"atilde22-a.qp.json", "atilde22-b.qp.json", "atilde22-c.qp.json", "atilde22-d.qp.json"}) {
    const MAtildeVerdict v = is_in_MAtilde(fixture(name).quiver, 2, 2);
    CHECK(v.member);
    CHECK(v.consistent);
    CHECK(v.decomposition.has_value());
  }
  const MAtildeVerdict h = is_in_MAtilde(atilde_quiver(3, 2), 3, 2);
  CHECK(h.member);
  REQUIRE(h.decomposition);
  CHECK(h.decomposition->triangles.empty());
  CHECK(h.decomposition->cycle.size() == 5);
  CHECK_FALSE(is_in_MAtilde(oriented_cycle(4), 2, 2).member);
  CHECK_FALSE(mutation_class(atilde_quiver(2, 2)).find(oriented_cycle(4)).has_value());
}

TEST_CASE("the four Ã(2,2) fixtures are the class representatives") {
  const MutationClass& mc = atilde_mutation_class(2, 2);
  REQUIRE(mc.representatives.size() == 4);
  std::set<std::size_t> hit;
  for (const char* name : {"atilde22-a.qp.json", "atilde22-b.qp.json", "atilde22-c.qp.json", "atilde22-d.qp.json"}) {
    const auto idx = mc.find(fixture(name).quiver);
    REQUIRE(idx);
    hit.insert(*idx);
  }
  CHECK(hit.size() == 4);
}

TEST_CASE("decompositions respect the arm-count identity and cover every arrow once") {
  for (const auto& [p, q] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {4, 2}, {3, 3}}) {
    for (const Quiver& quiver : atilde_mutation_class(p, q).representatives) {
      const std::vector<MAtildeDecomposition> decs = matilde_decompositions(quiver);
      REQUIRE_FALSE(decs.empty());
      bool matched = false;
      for (const MAtildeDecomposition& d : decs) {
        std::size_t p_branch = 0, q_branch = 0;
        for (std::size_t k = 0; k < d.triangles.size(); ++k)
          (d.p_arrows.contains(d.triangles[k].alpha) ? p_branch : q_branch) += d.branches[k].size();
        CHECK(static_cast<std::size_t>(d.p + d.q) == d.p_arrows.size() + d.q_arrows.size() + p_branch + q_branch);
        const bool forward = static_cast<std::size_t>(d.p) == d.p_arrows.size() + p_branch;
        const bool swapped = static_cast<std::size_t>(d.p) == d.q_arrows.size() + q_branch;
        CHECK((forward || swapped));
        std::multiset<ArrowId> used;
        for (const CycleStep& s : d.cycle) used.insert(s.arrow);
        for (const AnchoredTriangle& t : d.triangles) {
          used.insert(t.alpha1);
          used.insert(t.alpha2);
        }
        for (const std::set<VertexId>& b : d.branches) {
          const Quiver branch = quiver.full_subquiver(b);
          for (const Arrow& a : branch.arrows()) used.insert(a.id);
        }
        for (const Arrow& a : quiver.arrows()) CHECK(used.count(a.id) == 1);
        CHECK(used.size() == quiver.arrow_count());
        matched = matched || (d.p == p && d.q == q);
      }
      CHECK(matched);
    }
  }
}

TEST_CASE("W-grading enumeration") {
  CHECK(enumerate_w_gradings(atilde_quiver(3, 2), {}, false).size() == 1);
  const Quiver tri({1, 2, 3}, {arrow("a", 1, 2), arrow("b", 2, 3), arrow("c", 3, 1)});
  Potential w;
  w.add(canonicalize_word(tri, std::vector<ArrowId>{"a", "b", "c"}), 1);
  CHECK(enumerate_w_gradings(tri, w, false).size() == 3);
  const std::vector<std::pair<const char*, std::size_t>> expected{
      {"atilde22-a.qp.json", 1}, {"atilde22-b.qp.json", 1}, {"atilde22-c.qp.json", 3}, {"atilde22-d.qp.json", 6}};
  std::size_t total = 0;
  for (const auto& [name, count] : expected) {
    const GradedQP qp = fixture(name);
    const std::vector<DegreeMap> all = enumerate_w_gradings(qp.quiver, qp.potential, false);
    const std::vector<DegreeMap> up_to_iso = enumerate_w_gradings(qp.quiver, qp.potential, true);
    CHECK(up_to_iso.size() == count);
    // Quotient oracle: classes of the full list under brute-force graded isomorphism.
    std::vector<DegreeMap> reps;
    for (const DegreeMap& d : all) {
      bool fresh = true;
      for (const DegreeMap& r : reps) fresh = fresh && !brute_force_isomorphic(qp.quiver, qp.quiver, &d, &r);
      if (fresh) reps.push_back(d);
    }
    CHECK(reps.size() == count);
    for (const DegreeMap& d : all) CHECK(check_w_grading(GradedQP(qp.quiver, qp.potential, d)));
    total += up_to_iso.size();
  }
  CHECK(total == 11);
}

TEST_CASE("classification census for small shapes") {
  const ClassificationReport r22 = classify(2, 2);
  CHECK(r22.quivers.size() == 4);
  CHECK(r22.algebras.size() == 11);
  REQUIRE(r22.classes.size() == 2);
  CHECK(r22.classes[0].canonical_weight == 0);
  CHECK(r22.classes[0].size == 8);
  CHECK(r22.classes[1].canonical_weight == 1);
  CHECK(r22.classes[1].size == 3);

  CHECK(classify(3, 2).classes.size() == 3);
  const ClassificationReport r11 = classify(1, 1);
  CHECK(r11.classes.size() == 1);
  CHECK(r11.algebras.size() == 1);
  CHECK(r11.algebras[0].gldim == 1);
}

TEST_CASE("class counts, bounds and endpoints for p+q <= 6") {
  for (int total = 2; total <= 6; ++total)
    for (int q = 1; 2 * q <= total; ++q) {
      const int p = total - q;
      const ClassificationReport r = classify(p, q);
      CHECK(static_cast<int>(r.classes.size()) == derived_class_count(p, q));
      std::set<int> weights;
      for (const GradedAlgebraEntry& e : r.algebras) {
        CHECK(e.gldim <= 2);
        CHECK(canonical_weight(e.structural_weight, p, q) == e.canonical);
        weights.insert(e.canonical);
        CHECK(e.canonical >= (p == q ? 0 : -(q / 2)));
        CHECK(e.canonical <= p / 2);
      }
      CHECK(weights.contains(p / 2));
      if (p != q) CHECK(weights.contains(-(q / 2)));
    }
}

TEST_CASE("classification guards") {
  CHECK_THROWS_AS(classify(2, 3), QpError);
  try {
    classify(6, 5);
    FAIL("expected capacity error");
  } catch (const QpError& e) {
    CHECK(e.kind() == ErrorKind::Capacity);
  }
}

TEST_CASE("reports are deterministic and pinned") {
  const std::string a = dump(report_to_json(classify(3, 2)));
  const std::string b = dump(report_to_json(classify(3, 2)));
  CHECK(a == b);
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "qpmut-pin-test";
  std::filesystem::remove_all(dir);
  CHECK(pin_report(classify(2, 2), dir) == "written");
  CHECK(pin_report(classify(2, 2), dir) == "unchanged");
  {
    std::ofstream out(dir / "atilde-2-2.json", std::ios::app);
    out << " ";
  }
  try {
    pin_report(classify(2, 2), dir);
    FAIL("expected drift");
  } catch (const QpError& e) {
    CHECK(e.kind() == ErrorKind::Consistency);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("class potential is W_Q") {
  const GradedQP d = fixture("atilde22-d.qp.json");
  CHECK(class_potential(d.quiver) == d.potential);
  const GradedQP c = fixture("atilde22-c.qp.json");
  CHECK(class_potential(c.quiver) == c.potential);
  CHECK(class_potential(oriented_cycle(3)).size() == 1);
}
