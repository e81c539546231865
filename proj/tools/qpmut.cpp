#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpmut/algebra.hpp"
#include "qpmut/census.hpp"
#include "qpmut/classes.hpp"
#include "qpmut/invariants.hpp"
#include "qpmut/io.hpp"
#include "qpmut/service.hpp"

using namespace qpmut;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitCapacity = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_doc(const std::string& path) { return parse_json(read_file(path), path); }

GradedQP read_qp(const std::string& path) {
  try {
    return qp_from_json(read_doc(path));
  } catch (const QpError& e) {
    throw QpError(e.kind(), path + e.what());
  }
}

/// Accepts an algebra document, or a QP document whose degree zero part is taken.
PresentedAlgebra read_algebra(const std::string& path) {
  const Json doc = read_doc(path);
  if (doc.is_object() && doc.contains("quiver")) return algebra_from_json(doc);
  return degree_zero_part(qp_from_json(doc));
}

std::string render_text(const Json& doc) {
  if (!doc.is_object()) return doc.dump() + "\n";
  std::string out;
  for (const auto& [key, value] : doc.items()) out += key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded quivers with potential: mutation, weights and Ã classification"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output = "json";
  app.add_option("--output", output, "Output format")->check(CLI::IsMember({"json", "text"}));

  Json result;
  std::function<void()> action;

  std::string file, file2, file3;

  auto* mutate_cmd = app.add_subcommand("mutate", "Graded mutation at one or more vertices, applied in order");
  std::vector<int> at;
  std::string direction = "left";
  mutate_cmd->add_option("file", file, "QP document")->required();
  mutate_cmd->add_option("--at", at, "Vertex (repeat or comma-separate for a sequence)")->required()->delimiter(',');
  mutate_cmd->add_option("--direction", direction)->check(CLI::IsMember({"left", "right", "plain", "ungraded"}));
  mutate_cmd->callback([&] {
    action = [&] {
      const GradedQP qp = read_qp(file);
      MutationSequence steps;
      for (int v : at) steps.push_back({v, parse_direction(direction)});
      result = qp_to_json(mutate(qp, steps));
    };
  });

  auto* weight_cmd = app.add_subcommand("weight", "Weight of a W-graded QP of type Ã");
  std::string method = "mutation";
  weight_cmd->add_option("file", file, "QP document")->required();
  weight_cmd->add_option("--method", method)->check(CLI::IsMember({"structural", "mutation", "both"}));
  weight_cmd->callback([&] {
    action = [&] {
      const GradedQP qp = read_qp(file);
      if (method == "structural") {
        result = weight_to_json(weight_structural(qp));
      } else if (method == "mutation") {
        result = weight_to_json(weight_via_mutation(qp));
      } else {
        const WeightResult s = weight_structural(qp);
        const WeightResult m = weight_via_mutation(qp);
        result = {{"structural", weight_to_json(s)}, {"mutation", weight_to_json(m)}, {"agree", s.canonical == m.canonical}};
      }
    };
  });

  auto* geq_cmd = app.add_subcommand("grading-eq", "Whether two gradings differ by vertex offsets");
  bool up_to_aut = false;
  geq_cmd->add_option("file", file, "Quiver or QP document")->required();
  geq_cmd->add_option("d1", file2, "Degree document")->required();
  geq_cmd->add_option("d2", file3, "Degree document")->required();
  geq_cmd->add_flag("--up-to-aut", up_to_aut, "Allow precomposing d2 with a quiver automorphism");
  geq_cmd->callback([&] {
    action = [&] {
      const Quiver q = quiver_from_json(read_doc(file));
      result = grading_verdict_to_json(
          grading_equivalent(q, degrees_from_json(read_doc(file2)), degrees_from_json(read_doc(file3)), up_to_aut));
    };
  });

  auto* deq_cmd = app.add_subcommand("derived-eq", "Derived equivalence of two degree zero parts (tree or Ã type)");
  deq_cmd->add_option("a1", file, "QP document")->required();
  deq_cmd->add_option("a2", file2, "QP document")->required();
  deq_cmd->callback([&] {
    action = [&] {
      const DerivedVerdict v = derived_equivalent(read_qp(file), read_qp(file2));
      result = {{"equivalent", v.equivalent}, {"kind", v.kind == ClusterKind::Tree ? "tree" : "atilde"}};
      if (v.weight1) result["weight1"] = weight_to_json(*v.weight1);
      if (v.weight2) result["weight2"] = weight_to_json(*v.weight2);
    };
  });

  auto* induced_cmd = app.add_subcommand("induced-eq", "Compare the gradings induced by two left-mutation sequences");
  induced_cmd->add_option("file", file, "QP document")->required();
  induced_cmd->add_option("s1", file2, "Sequence document")->required();
  induced_cmd->add_option("s2", file3, "Sequence document")->required();
  induced_cmd->callback([&] {
    action = [&] {
      const InducedComparison c = compare_induced_gradings(read_qp(file), sequence_from_json(read_doc(file2)),
                                                           sequence_from_json(read_doc(file3)));
      result = {{"equivalent", c.verdict.equivalent},
                {"degrees1", degrees_to_json(c.degrees1)},
                {"degrees2", degrees_to_json(c.degrees2)},
                {"transported", degrees_to_json(c.transported)},
                {"verdict", grading_verdict_to_json(c.verdict)}};
    };
  });

  auto* cox_cmd = app.add_subcommand("coxeter", "Coxeter polynomial, constant term first");
  cox_cmd->add_option("file", file, "Algebra or QP document")->required();
  cox_cmd->callback([&] {
    action = [&] { result = {{"coxeter", polynomial_to_json(coxeter_polynomial(read_algebra(file)))}}; };
  });

  auto* gldim_cmd = app.add_subcommand("gldim", "Global dimension");
  gldim_cmd->add_option("file", file, "Algebra or QP document")->required();
  gldim_cmd->callback([&] {
    action = [&] {
      const std::optional<int> g = global_dimension(read_algebra(file));
      result = {{"gldim", g ? Json(*g) : Json(nullptr)}};
    };
  });

  auto* overline_cmd = app.add_subcommand("overline", "QP with one degree-1 arrow per relation");
  overline_cmd->add_option("file", file, "Algebra document")->required();
  overline_cmd->callback([&] { action = [&] { result = qp_to_json(build_overline_qp(algebra_from_json(read_doc(file)))); }; });

  auto* dz_cmd = app.add_subcommand("degree-zero", "Degree zero part of a W-graded QP");
  dz_cmd->add_option("file", file, "QP document")->required();
  dz_cmd->callback([&] { action = [&] { result = algebra_to_json(degree_zero_part(read_qp(file))); }; });

  int p = 0, q = 0;
  bool allow_large = false;
  auto* enum_cmd = app.add_subcommand("enumerate", "Mutation class of Ã_{p,q} with W_Q-grading counts");
  enum_cmd->add_option("--p", p)->required();
  enum_cmd->add_option("--q", q)->required();
  enum_cmd->callback([&] {
    action = [&] {
      if (q < 1 || p < q) fail(ErrorKind::Precondition, "enumerate needs p >= q >= 1");
      const MutationClass& mc = atilde_mutation_class(p, q);
      Json quivers = Json::array();
      std::size_t total = 0;
      for (const Quiver& quiver : mc.representatives) {
        const Potential w = class_potential(quiver);
        const std::size_t n = enumerate_w_gradings(quiver, w, true).size();
        total += n;
        quivers.push_back({{"quiver", quiver_to_json(quiver)}, {"potential", potential_to_json(w)}, {"gradings", n}});
      }
      result = {{"p", p}, {"q", q}, {"size", mc.representatives.size()}, {"gradings", total}, {"quivers", std::move(quivers)}};
    };
  });

  std::string pin;
  auto* classify_cmd = app.add_subcommand("classify", "Classify W_Q-graded algebras of type Ã_{p,q} up to derived equivalence");
  classify_cmd->add_option("--p", p)->required();
  classify_cmd->add_option("--q", q)->required();
  classify_cmd->add_option("--pin", pin, "Directory of pinned reports");
  classify_cmd->add_flag("--allow-large", allow_large, "Lift the size guard");
  classify_cmd->callback([&] {
    action = [&] {
      ClassifyOptions options;
      options.allow_large = allow_large;
      const ClassificationReport report = classify(p, q, options);
      result = report_to_json(report);
      if (!pin.empty()) result["pin"] = pin_report(report, pin);
    };
  });

  int port = 8080;
  std::string bind = "127.0.0.1";
  std::string persist;
  std::string allow_origin;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP session service");
  serve_cmd->add_option("--port", port)->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--bind", bind);
  serve_cmd->add_option("--persist", persist, "Snapshot sessions to this directory on shutdown");
  serve_cmd->add_option("--allow-origin", allow_origin, "CORS origin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (serve_cmd->parsed()) {
      ServiceConfig config;
      config.allow_origin = allow_origin;
      if (!persist.empty()) config.persist_dir = persist;
      SessionStore store(config);
      return run_server(store, bind, port) == 0 ? 0 : kExitUsage;
    }
    action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const QpError& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.is_capacity() ? kExitCapacity : kExitDomain;
  }
  std::cout << (output == "json" ? dump(result) : render_text(result));
  return 0;
}
