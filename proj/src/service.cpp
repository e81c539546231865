#include "qpmut/service.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "qpmut/classes.hpp"

namespace qpmut {

namespace {

Response error_response(int status, const std::string& message, const char* kind = nullptr) {
  Json body{{"error", message}};
  if (kind != nullptr) body["kind"] = kind;
  return {status, std::move(body)};
}

int status_for(const QpError& e) {
  switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::Composition:
      return 400;
    default:
      return 409;
  }
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::stringstream ss(path);
  for (std::string part; std::getline(ss, part, '/');)
    if (!part.empty()) parts.push_back(part);
  return parts;
}

}  // namespace

Json compute_invariants(const GradedQP& qp, std::size_t search_budget) {
  Json out{{"isAcyclic", qp.potential.empty() && qp.quiver.is_acyclic()},
           {"weight", nullptr},
           {"canonicalWeight", nullptr},
           {"p", nullptr},
           {"q", nullptr},
           {"inMAtilde", nullptr},
           {"coxeter", nullptr},
           {"arSummary", nullptr}};
  std::optional<ClusterType> type;
  try {
    type = cluster_type(qp, search_budget);
  } catch (const QpError& e) {
    // An acyclic mutant that is neither a tree nor Ã rules out every M^Ã class.
    if (e.kind() == ErrorKind::Scope) out["inMAtilde"] = false;
  }
  if (type && type->kind == ClusterKind::Atilde) {
    out["p"] = type->p;
    out["q"] = type->q;
    try {
      const WeightResult w = weight_via_sequence(qp, type->sequence);
      out["weight"] = w.weight;
      out["canonicalWeight"] = w.canonical;
      out["arSummary"] = ar_summary_to_json(ar_summary(w.canonical));
    } catch (const QpError&) {
    }
    try {
      out["inMAtilde"] = is_in_MAtilde(qp.quiver, type->p, type->q).member;
    } catch (const QpError&) {
    }
  } else if (type) {
    out["inMAtilde"] = false;
  }
  try {
    out["coxeter"] = polynomial_to_json(coxeter_polynomial(degree_zero_part(qp)));
  } catch (const QpError&) {
  }
  return out;
}

SessionStore::SessionStore(ServiceConfig config) : config_(std::move(config)), rng_(std::random_device{}()) {}

std::string SessionStore::fresh_id() {
  const std::lock_guard<std::mutex> guard(rng_lock_);
  static constexpr char hex[] = "0123456789abcdef";
  for (;;) {
    std::string id;
    std::uint64_t bits = rng_();
    for (int k = 0; k < 16; ++k, bits >>= 4) id.push_back(hex[bits & 15]);
    const std::shared_lock<std::shared_mutex> read(sessions_lock_);
    if (!sessions_.contains(id)) return id;
  }
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) const {
  const std::shared_lock<std::shared_mutex> read(sessions_lock_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::size_t SessionStore::size() const {
  const std::shared_lock<std::shared_mutex> read(sessions_lock_);
  return sessions_.size();
}

Json SessionStore::invariants_json(Session& s) {
  if (!s.cached_invariants) s.cached_invariants = compute_invariants(s.current, config_.search_budget);
  return *s.cached_invariants;
}

Json SessionStore::state_json(Session& s) {
  Json history = Json::array();
  for (const auto& [step, prior] : s.history) history.push_back(step_to_json(step));
  return {{"id", s.id}, {"qp", qp_to_json(s.current)}, {"history", std::move(history)}, {"invariants", invariants_json(s)}};
}

Response SessionStore::create(std::string_view body) {
  GradedQP qp;
  try {
    qp = parse_qp(body);
  } catch (const QpError& e) {
    return error_response(400, e.what(), to_string(e.kind()));
  }
  auto s = std::make_shared<Session>();
  s->id = fresh_id();
  s->initial = qp;
  s->current = std::move(qp);
  s->created = std::chrono::system_clock::now();
  {
    const std::unique_lock<std::shared_mutex> write(sessions_lock_);
    sessions_[s->id] = s;
  }
  return {201, {{"id", s->id}}};
}

Response SessionStore::get(const std::string& id) {
  const auto s = find(id);
  if (!s) return error_response(404, "unknown session " + id);
  const std::lock_guard<std::mutex> guard(s->lock);
  return {200, state_json(*s)};
}

Response SessionStore::mutate(const std::string& id, std::string_view body) {
  const auto s = find(id);
  if (!s) return error_response(404, "unknown session " + id);
  MutationStep step;
  try {
    const Json doc = parse_json(body, "mutation request");
    const MutationSequence one = sequence_from_json(Json::array({doc}));
    step = one.front();
  } catch (const QpError& e) {
    return error_response(400, e.what(), to_string(e.kind()));
  }
  const std::lock_guard<std::mutex> guard(s->lock);
  GradedQP next;
  try {
    next = qpmut::mutate(s->current, step);
  } catch (const QpError& e) {
    return error_response(409, e.what(), to_string(e.kind()));
  }
  s->history.emplace_back(step, std::move(s->current));
  s->current = std::move(next);
  if (s->history.size() > config_.history_limit) {
    s->history.pop_front();
    s->initial = s->history.front().second;
  }
  s->cached_invariants.reset();
  return {200, state_json(*s)};
}

Response SessionStore::undo(const std::string& id) {
  const auto s = find(id);
  if (!s) return error_response(404, "unknown session " + id);
  const std::lock_guard<std::mutex> guard(s->lock);
  if (s->history.empty()) return error_response(409, "history is empty", "precondition");
  s->current = std::move(s->history.back().second);
  s->history.pop_back();
  s->cached_invariants.reset();
  return {200, state_json(*s)};
}

Response SessionStore::invariants(const std::string& id) {
  const auto s = find(id);
  if (!s) return error_response(404, "unknown session " + id);
  const std::lock_guard<std::mutex> guard(s->lock);
  return {200, invariants_json(*s)};
}

Response SessionStore::remove(const std::string& id) {
  const std::unique_lock<std::shared_mutex> write(sessions_lock_);
  if (sessions_.erase(id) == 0) return error_response(404, "unknown session " + id);
  return {204, nullptr};
}

Response SessionStore::handle(const std::string& method, const std::string& path, std::string_view body) {
  const std::vector<std::string> parts = split_path(path);
  if (parts.empty() || parts[0] != "sessions") return error_response(404, "no route for " + path);
  try {
    if (parts.size() == 1 && method == "POST") return create(body);
    if (parts.size() == 2 && method == "GET") return get(parts[1]);
    if (parts.size() == 2 && method == "DELETE") return remove(parts[1]);
    if (parts.size() == 3 && parts[2] == "mutations" && method == "POST") return mutate(parts[1], body);
    if (parts.size() == 3 && parts[2] == "undo" && method == "POST") return undo(parts[1]);
    if (parts.size() == 3 && parts[2] == "invariants" && method == "GET") return invariants(parts[1]);
  } catch (const QpError& e) {
    return error_response(status_for(e), e.what(), to_string(e.kind()));
  }
  if (parts.size() <= 3) return error_response(405, "method " + method + " not allowed on " + path);
  return error_response(404, "no route for " + path);
}

void SessionStore::save(const std::filesystem::path& dir) const {
  Json all = Json::array();
  {
    const std::shared_lock<std::shared_mutex> read(sessions_lock_);
    for (const auto& [id, s] : sessions_) {
      const std::lock_guard<std::mutex> guard(s->lock);
      Json history = Json::array();
      for (const auto& [step, prior] : s->history) history.push_back(step_to_json(step));
      all.push_back({{"id", id}, {"initial", qp_to_json(s->initial)}, {"history", std::move(history)}});
    }
  }
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "sessions.json", std::ios::binary);
  out << dump(all);
}

void SessionStore::load(const std::filesystem::path& dir) {
  const std::filesystem::path file = dir / "sessions.json";
  if (!std::filesystem::exists(file)) return;
  std::ifstream in(file, std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  const Json all = parse_json(text.str(), file.string());
  for (const Json& entry : all) {
    auto s = std::make_shared<Session>();
    s->id = entry.at("id").get<std::string>();
    s->initial = qp_from_json(entry.at("initial"));
    s->current = s->initial;
    s->created = std::chrono::system_clock::now();
    for (const MutationStep& step : sequence_from_json(entry.at("history"))) {
      GradedQP next = qpmut::mutate(s->current, step);
      s->history.emplace_back(step, std::move(s->current));
      s->current = std::move(next);
    }
    const std::unique_lock<std::shared_mutex> write(sessions_lock_);
    sessions_[s->id] = std::move(s);
  }
}

}  // namespace qpmut
