#include <atomic>
#include <csignal>
#include <cstdlib>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "qpmut/service.hpp"

namespace qpmut {

namespace {

std::atomic<httplib::Server*> g_server{nullptr};

extern "C" void on_signal(int) {
  if (httplib::Server* s = g_server.load()) s->stop();
}

void configure_logging() {
  const char* env = std::getenv("QPMUT_LOG");
  const std::string level = env != nullptr ? env : "info";
  if (level == "debug")
    spdlog::set_level(spdlog::level::debug);
  else if (level == "error")
    spdlog::set_level(spdlog::level::err);
  else
    spdlog::set_level(spdlog::level::info);
}

}  // namespace

void stop_server() {
  if (httplib::Server* s = g_server.load()) s->stop();
}

int run_server(SessionStore& store, const std::string& bind, int port) {
  configure_logging();
  const ServiceConfig& config = store.config();
  if (config.persist_dir) {
    store.load(*config.persist_dir);
    spdlog::info("restored {} sessions from {}", store.size(), config.persist_dir->string());
  }

  httplib::Server server;
  const auto cors = [&config](httplib::Response& res) {
    if (config.allow_origin.empty()) return;
    res.set_header("Access-Control-Allow-Origin", config.allow_origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  };
  const auto route = [&store, &cors](const httplib::Request& req, httplib::Response& res) {
    const Response out = store.handle(req.method, req.path, req.body);
    res.status = out.status;
    if (out.status != 204) res.set_content(dump(out.body), "application/json");
    cors(res);
    spdlog::info("{} {} -> {}", req.method, req.path, out.status);
    spdlog::debug("request body: {}", req.body);
  };
  const std::string any = R"(/.*)";
  server.Get(any, route);
  server.Post(any, route);
  server.Delete(any, route);
  server.Options(any, [&cors](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    cors(res);
  });

  g_server.store(&server);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  spdlog::info("listening on {}:{}", bind, port);
  const bool ok = server.listen(bind, port);
  g_server.store(nullptr);
  if (config.persist_dir) {
    store.save(*config.persist_dir);
    spdlog::info("saved {} sessions to {}", store.size(), config.persist_dir->string());
  }
  if (!ok) {
    spdlog::error("cannot listen on {}:{}", bind, port);
    return 1;
  }
  return 0;
}

}  // namespace qpmut
