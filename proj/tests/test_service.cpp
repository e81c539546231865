#include <doctest.h>

#include <atomic>
#include <sys/wait.h>
#include <cstdio>
#include <filesystem>
#include <thread>

#include <httplib.h>

#include "qpmut/census.hpp"
#include "qpmut/service.hpp"
#include "support.hpp"

using namespace qpt;

namespace {

std::string create_id(SessionStore& store, const GradedQP& qp) {
  const Response r = store.create(dump(qp_to_json(qp)));
  REQUIRE(r.status == 201);
  return r.body.at("id").get<std::string>();
}

std::string step_body(VertexId v, const char* dir) { return dump(Json{{"vertex", v}, {"direction", dir}}); }

GradedQP state_qp(SessionStore& store, const std::string& id) {
  const Response r = store.get(id);
  REQUIRE(r.status == 200);
  return qp_from_json(r.body.at("qp"));
}

struct CliRun {
  int exit_code = 0;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(QPMUT_CLI) + " " + args + " 2>/dev/null";
  std::FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliRun run;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) run.out.append(buf, n);
  const int status = pclose(pipe);
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

std::string temp_file(const std::string& name, const std::string& text) {
  const std::filesystem::path p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

GradedQP weight_one_atilde22() {
  const ClassificationReport rep = classify(2, 2);
  for (const GradedAlgebraEntry& e : rep.algebras)
    if (e.canonical == 1) return GradedQP(rep.quivers[e.quiver].quiver, rep.quivers[e.quiver].potential, e.degrees);
  FAIL("no weight-1 algebra");
  return {};
}

}  // namespace

TEST_CASE("session lifecycle and undo contract") {
  SessionStore store;
  const GradedQP qbar = fixture("overline5.qp.json");
  const std::string id = create_id(store, qbar);
  const Response initial = store.get(id);
  CHECK(initial.body.at("history").empty());
  CHECK(initial.body.contains("invariants"));

  const Response m = store.mutate(id, step_body(2, "left"));
  CHECK(m.status == 200);
  CHECK(m.body.at("history").size() == 1);
  CHECK(m.body.at("history")[0] == Json{{"vertex", 2}, {"direction", "left"}});
  const Response u = store.undo(id);
  CHECK(u.status == 200);
  CHECK(dump(store.get(id).body) == dump(initial.body));
  CHECK(store.undo(id).status == 409);

  CHECK(store.remove(id).status == 204);
  CHECK(store.get(id).status == 404);
  CHECK(store.remove(id).status == 404);
}

TEST_CASE("error statuses") {
  SessionStore store;
  const Response bad = store.create("{\"vertices\": [1");
  CHECK(bad.status == 400);
  CHECK(bad.body.at("error").get<std::string>().find("byte") != std::string::npos);
  CHECK(store.create(R"({"vertices":[1],"arrows":[{"id":"a","src":1,"tgt":9}]})").status == 400);

  const Quiver two({1, 2, 3}, {arrow("x", 1, 2), arrow("y", 2, 1), arrow("z", 2, 3)});
  const std::string id = create_id(store, GradedQP(two));
  const std::string before = dump(store.get(id).body);
  const Response pre = store.mutate(id, step_body(1, "left"));
  CHECK(pre.status == 409);
  CHECK(pre.body.at("error").get<std::string>().find("2-cycle") != std::string::npos);
  CHECK(dump(store.get(id).body) == before);
  CHECK(store.mutate(id, step_body(9, "left")).status == 409);
  CHECK(store.mutate(id, "{\"vertex\": \"two\"}").status == 400);
  CHECK(store.mutate(id, step_body(3, "sideways")).status == 400);
  CHECK(dump(store.get(id).body) == before);

  for (const Response& r : {store.get("nope"), store.mutate("nope", step_body(1, "left")), store.undo("nope"),
                            store.invariants("nope"), store.remove("nope")})
    CHECK(r.status == 404);
  CHECK(store.handle("GET", "/elsewhere", "").status == 404);
  CHECK(store.handle("PUT", "/sessions/" + id, "").status == 405);
  CHECK(store.handle("GET", "/sessions/" + id + "/invariants", "").status == 200);
}

TEST_CASE("overline QP sequence through the API") {
  SessionStore store;
  const std::string id = create_id(store, fixture("overline5.qp.json"));
  for (VertexId v : {2, 5, 4, 1, 2}) REQUIRE(store.mutate(id, step_body(v, "left")).status == 200);
  const GradedQP now = state_qp(store, id);
  const std::vector<std::tuple<VertexId, VertexId, int>> expected{{1, 3, 1}, {2, 1, 1}, {2, 3, 1},
                                                                  {3, 4, 0}, {3, 5, 0}, {5, 4, 0}};
  CHECK(graded_edges(now) == expected);
  const Json inv = store.invariants(id).body;
  CHECK(inv.at("isAcyclic") == true);
  CHECK(inv.at("weight").is_null());
  CHECK(inv.at("inMAtilde") == false);
  // W = 0 with degree-1 arrows is not a W-grading, so there is no degree-zero algebra to report.
  CHECK(inv.at("coxeter").is_null());
  CHECK(inv.at("arSummary").is_null());
}

TEST_CASE("invariants on a weight-1 Ã(2,2) session") {
  SessionStore store;
  const std::string id = create_id(store, weight_one_atilde22());
  const Json inv = store.invariants(id).body;
  CHECK(inv.at("canonicalWeight") == 1);
  CHECK(inv.at("inMAtilde") == true);
  CHECK(inv.at("arSummary") == Json{{"total", 3}, {"zainfinf", 1}, {"zainf", 2}});
  CHECK(inv.at("coxeter") == Json::array({1, 1, 0, 1, 1}));
  CHECK(inv.at("isAcyclic") == false);

  const std::string hid = create_id(store, fixture("atilde22-a.qp.json"));
  const Json h = store.invariants(hid).body;
  CHECK(h.at("weight") == 0);
  CHECK(h.at("arSummary").at("applicable") == false);
}

TEST_CASE("served invariants agree with the CLI") {
  SessionStore store;
  std::mt19937 rng(12);
  int coxeter_compared = 0;
  const auto agree = [&](const Json& state) {
    const std::string file = temp_file("qpmut-agree.json", dump(state.at("qp")));
    const Json& inv = state.at("invariants");
    const CliRun weight = run_cli("weight " + file + " --method mutation");
    REQUIRE(weight.exit_code == 0);
    CHECK(parse_json(weight.out).at("weight") == inv.at("weight"));
    CHECK(parse_json(weight.out).at("canonical") == inv.at("canonicalWeight"));
    const CliRun cox = run_cli("coxeter " + file);
    if (inv.at("coxeter").is_null()) {
      CHECK(cox.exit_code == 3);
    } else {
      REQUIRE(cox.exit_code == 0);
      CHECK(parse_json(cox.out).at("coxeter") == inv.at("coxeter"));
      ++coxeter_compared;
    }
  };
  for (int trial = 0; trial < 6; ++trial) {
    const AtildeInstance inst = random_atilde_qp(rng, 6);
    const std::string id = create_id(store, inst.qp);
    agree(store.get(id).body);
    const VertexId v = admissible_vertices(inst.qp.quiver).front();
    REQUIRE(store.mutate(id, step_body(v, "left")).status == 200);
    agree(store.get(id).body);
  }
  CHECK(coxeter_compared >= 6);
}

TEST_CASE("posting a served qp document round-trips") {
  SessionStore store;
  const std::string id = create_id(store, fixture("atilde22-d.qp.json"));
  REQUIRE(store.mutate(id, step_body(3, "right")).status == 200);
  const Json qp = store.get(id).body.at("qp");
  const Response again = store.create(dump(qp));
  REQUIRE(again.status == 201);
  CHECK(dump(store.get(again.body.at("id").get<std::string>()).body.at("qp")) == dump(qp));
}

TEST_CASE("random request interleavings keep history replayable") {
  SessionStore store;
  std::mt19937 rng(13);
  for (int session = 0; session < 5; ++session) {
    const AtildeInstance inst = random_atilde_qp(rng, 6);
    const std::string id = create_id(store, inst.qp);
    for (int op = 0; op < 25; ++op) {
      const int kind = static_cast<int>(rng() % 5);
      if (kind == 0) {
        store.undo(id);
      } else if (kind == 1) {
        store.mutate(id, "not json");
      } else {
        const VertexId v = inst.qp.quiver.vertices()[rng() % inst.qp.quiver.vertex_count()];
        store.mutate(id, step_body(v, rng() % 2 ? "left" : "right"));
      }
      const Json state = store.get(id).body;
      const GradedQP replayed = mutate(inst.qp, sequence_from_json(state.at("history")));
      CHECK(dump(qp_to_json(replayed)) == dump(state.at("qp")));
    }
  }
}

TEST_CASE("history is bounded") {
  ServiceConfig config;
  config.history_limit = 3;
  SessionStore store(config);
  const std::string id = create_id(store, GradedQP(atilde_quiver(3, 2)));
  for (int k = 0; k < 5; ++k) REQUIRE(store.mutate(id, step_body(1, "left")).status == 200);
  CHECK(store.get(id).body.at("history").size() == 3);
  for (int k = 0; k < 3; ++k) CHECK(store.undo(id).status == 200);
  CHECK(store.undo(id).status == 409);
  // Five source flips at vertex 1 leave it flipped once relative to the start; three undos leave two applied.
  const GradedQP expected = mutate(GradedQP(atilde_quiver(3, 2)), MutationSequence{{1, Direction::Left}, {1, Direction::Left}});
  CHECK(dump(qp_to_json(state_qp(store, id))) == dump(qp_to_json(expected)));
}

TEST_CASE("concurrent writers on one session are serialized") {
  SessionStore store;
  const GradedQP start = fixture("atilde22-d.qp.json");
  const std::string id = create_id(store, start);
  std::atomic<int> ok{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      for (int k = 0; k < 10; ++k) {
        if (store.mutate(id, step_body(1 + (t + k) % 4, "left")).status == 200) ++ok;
        store.get(id);
        store.invariants(id);
      }
    });
  for (std::thread& t : threads) t.join();
  const Json state = store.get(id).body;
  CHECK(static_cast<int>(state.at("history").size()) == ok.load());
  CHECK(dump(qp_to_json(mutate(start, sequence_from_json(state.at("history"))))) == dump(state.at("qp")));
}

TEST_CASE("snapshots survive a restart") {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "qpmut-persist-test";
  std::filesystem::remove_all(dir);
  std::string id;
  std::string before;
  {
    SessionStore store;
    id = create_id(store, fixture("overline5.qp.json"));
    REQUIRE(store.mutate(id, step_body(2, "left")).status == 200);
    before = dump(store.get(id).body);
    store.save(dir);
  }
  SessionStore restored;
  restored.load(dir);
  CHECK(dump(restored.get(id).body) == before);
  CHECK(restored.undo(id).status == 200);
  std::filesystem::remove_all(dir);
}

TEST_CASE("HTTP binding with CORS") {
  ServiceConfig config;
  config.allow_origin = "http://localhost:5173";
  SessionStore store(config);
  const int port = 20000 + static_cast<int>(std::random_device{}() % 20000);
  std::thread server([&] { run_server(store, "127.0.0.1", port); });
  httplib::Client client("127.0.0.1", port);
  httplib::Result created;
  for (int attempt = 0; attempt < 200; ++attempt) {
    created = client.Post("/sessions", read_text(data_path("atilde22-a.qp.json")), "application/json");
    if (created) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  REQUIRE(created);
  CHECK(created->status == 201);
  CHECK(created->get_header_value("Access-Control-Allow-Origin") == "http://localhost:5173");
  const std::string id = parse_json(created->body).at("id").get<std::string>();
  const auto inv = client.Get(("/sessions/" + id + "/invariants").c_str());
  REQUIRE(inv);
  CHECK(inv->status == 200);
  CHECK(parse_json(inv->body).at("weight") == 0);
  const auto mutated = client.Post(("/sessions/" + id + "/mutations").c_str(), step_body(1, "left"), "application/json");
  REQUIRE(mutated);
  CHECK(mutated->status == 200);
  const auto missing = client.Get("/sessions/unknown");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  const auto del = client.Delete(("/sessions/" + id).c_str());
  REQUIRE(del);
  CHECK(del->status == 204);
  stop_server();
  server.join();
}
