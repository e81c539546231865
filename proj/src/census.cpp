#include "qpmut/census.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <thread>
#include <vector>
#include <map>
#include <sstream>

#include "qpmut/classes.hpp"
#include "qpmut/invariants.hpp"

namespace qpmut {

namespace {

[[noreturn]] void reject(const GradedQP& qp, const std::string& why) {
  fail(ErrorKind::Classification, why + "\noffending instance:\n" + dump(qp_to_json(qp)));
}


struct QuiverResult {
  GradedQP base;
  std::vector<GradedAlgebraEntry> entries;
};

QuiverResult examine_quiver(const Quiver& quiver, int p, int q) {
  const GradedQP plain(quiver);
  std::optional<MAtildeDecomposition> dec;
  for (MAtildeDecomposition& d : matilde_decompositions(quiver))
    if (d.p == p && d.q == q) {
      dec = std::move(d);
      break;
    }
  if (!dec) reject(plain, "quiver of the mutation class has no valid decomposition");
  QuiverResult out;
  out.base = GradedQP(quiver, dec->wq, zero_degrees(quiver));
  const std::optional<MutationSequence> seq = find_acyclic_sequence(out.base);
  if (!seq) reject(out.base, "no acyclic mutation sequence found");

  for (const DegreeMap& d : enumerate_w_gradings(quiver, dec->wq, true)) {
    const GradedQP qp(quiver, dec->wq, d);
    GradedAlgebraEntry e;
    e.degrees = d;
    try {
      if (const Verdict v = check_w_grading(qp); !v) reject(qp, "not a W-grading: " + v.reason);
      const WeightResult structural = weight_structural(qp);
      const WeightResult via = weight_via_sequence(qp, *seq);
      if (via.p != p || via.q != q) reject(qp, "mutation reaches the wrong Ã shape");
      if (structural.canonical != via.canonical || (p != q && structural.weight != via.weight))
        reject(qp, "structural weight " + std::to_string(structural.weight) + " differs from mutation weight " +
                       std::to_string(via.weight));
      e.weight = via.weight;
      e.structural_weight = structural.weight;
      e.canonical = via.canonical;
      const int lo = p == q ? 0 : -(q / 2);
      if (e.canonical < lo || e.canonical > p / 2)
        reject(qp, "weight " + std::to_string(e.weight) + " outside [" + std::to_string(-(q / 2)) + ", " +
                       std::to_string(p / 2) + "]");
      const PresentedAlgebra alg = degree_zero_part(qp);
      const std::optional<int> gl = global_dimension(alg);
      if (!gl || *gl > 2) reject(qp, "global dimension exceeds 2");
      e.gldim = *gl;
      e.coxeter = coxeter_polynomial(alg);
      if (e.coxeter != atilde_coxeter_formula(p, q, e.weight))
        reject(qp, "Coxeter polynomial differs from the formula at weight " + std::to_string(e.weight));
    } catch (const QpError& err) {
      if (err.kind() == ErrorKind::Classification) throw;
      reject(qp, std::string("check failed (") + to_string(err.kind()) + "): " + err.what());
    }
    out.entries.push_back(std::move(e));
  }
  return out;
}

}  // namespace

ClassificationReport classify(int p, int q, const ClassifyOptions& options) {
  if (q < 1 || p < q) fail(ErrorKind::Precondition, "classify needs p >= q >= 1");
  if (!options.allow_large && p + q > kDefaultCensusCapacity)
    fail(ErrorKind::Capacity, "p+q = " + std::to_string(p + q) + " exceeds the census capacity " +
                                  std::to_string(kDefaultCensusCapacity) + " (override to proceed)");

  std::optional<MutationClass> local;
  if (options.max_class_size != ClassifyOptions{}.max_class_size)
    local = mutation_class(atilde_quiver(p, q), options.max_class_size);
  const MutationClass& mc = local ? *local : atilde_mutation_class(p, q);
  const std::size_t n = mc.representatives.size();

  std::vector<QuiverResult> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = examine_quiver(mc.representatives[i], p, q);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  ClassificationReport report;
  report.p = p;
  report.q = q;
  std::map<int, std::size_t> class_sizes;
  for (std::size_t i = 0; i < n; ++i) {
    report.quivers.push_back(std::move(results[i].base));
    for (GradedAlgebraEntry& e : results[i].entries) {
      e.quiver = i;
      ++class_sizes[e.canonical];
      report.algebras.push_back(std::move(e));
    }
  }
  for (const auto& [w, size] : class_sizes) report.classes.push_back({w, size});
  return report;
}

Json report_to_json(const ClassificationReport& report) {
  Json quivers = Json::array();
  for (const GradedQP& qp : report.quivers)
    quivers.push_back({{"vertices", qp.quiver.vertices()},
                       {"arrows", quiver_to_json(qp.quiver)["arrows"]},
                       {"potential", potential_to_json(qp.potential)}});
  Json algebras = Json::array();
  for (const GradedAlgebraEntry& e : report.algebras)
    algebras.push_back({{"quiver", e.quiver},
                        {"degrees", degrees_to_json(e.degrees)},
                        {"weight", e.weight},
                        {"canonicalWeight", e.canonical},
                        {"coxeter", polynomial_to_json(e.coxeter)},
                        {"gldim", e.gldim}});
  Json classes = Json::array();
  for (const DerivedClassEntry& c : report.classes)
    classes.push_back({{"canonicalWeight", c.canonical_weight}, {"size", c.size}});
  return {{"p", report.p},
          {"q", report.q},
          {"quivers", std::move(quivers)},
          {"algebras", std::move(algebras)},
          {"classes", std::move(classes)}};
}

std::string pin_report(const ClassificationReport& report, const std::filesystem::path& dir) {
  const std::string text = dump(report_to_json(report));
  const std::filesystem::path file =
      dir / ("atilde-" + std::to_string(report.p) + "-" + std::to_string(report.q) + ".json");
  if (std::filesystem::exists(file)) {
    std::ifstream in(file, std::ios::binary);
    std::stringstream old;
    old << in.rdbuf();
    if (old.str() != text) fail(ErrorKind::Consistency, "report drift against " + file.string());
    return "unchanged";
  }
  std::filesystem::create_directories(dir);
  std::ofstream out(file, std::ios::binary);
  out << text;
  if (!out) fail(ErrorKind::Consistency, "cannot write " + file.string());
  return "written";
}

}  // namespace qpmut
