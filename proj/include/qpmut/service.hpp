#pragma once

#include <chrono>
#include <cstddef>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "qpmut/io.hpp"

namespace qpmut {

struct ServiceConfig {
  std::size_t history_limit = 1000;
  /// Budget for the acyclic-sequence search behind the invariants panel.
  std::size_t search_budget = 20000;
  /// Value of Access-Control-Allow-Origin; empty disables CORS headers.
  std::string allow_origin;
  std::optional<std::filesystem::path> persist_dir;
};

struct Response {
  int status = 200;
  /// Null for 204.
  Json body;
};

/// In-memory sessions behind the HTTP API. Every entry point is safe to call
/// concurrently; writers to one session are serialized.
class SessionStore {
 public:
  explicit SessionStore(ServiceConfig config = {});

  Response create(std::string_view body);
  Response get(const std::string& id);
  Response mutate(const std::string& id, std::string_view body);
  Response undo(const std::string& id);
  Response invariants(const std::string& id);
  Response remove(const std::string& id);

  /// Dispatches on method and path, e.g. ("POST", "/sessions/abc/undo").
  Response handle(const std::string& method, const std::string& path, std::string_view body);

  /// Writes every session to dir/sessions.json.
  void save(const std::filesystem::path& dir) const;
  /// Restores sessions written by save(); a missing file is not an error.
  void load(const std::filesystem::path& dir);

  const ServiceConfig& config() const noexcept { return config_; }
  std::size_t size() const;

 private:
  struct Session {
    mutable std::mutex lock;
    std::string id;
    GradedQP initial;
    GradedQP current;
    std::deque<std::pair<MutationStep, GradedQP>> history;
    std::chrono::system_clock::time_point created;
    std::optional<Json> cached_invariants;
  };

  std::shared_ptr<Session> find(const std::string& id) const;
  Json state_json(Session& s);
  Json invariants_json(Session& s);
  std::string fresh_id();

  ServiceConfig config_;
  mutable std::shared_mutex sessions_lock_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex rng_lock_;
  std::mt19937_64 rng_;
};

/// Invariant panel for a QP, with nulls where a precondition fails.
Json compute_invariants(const GradedQP& qp, std::size_t search_budget);

/// Blocks serving HTTP until stop_server() or SIGINT/SIGTERM; saves sessions
/// to the persist directory on the way out.
int run_server(SessionStore& store, const std::string& bind, int port);
void stop_server();

}  // namespace qpmut
