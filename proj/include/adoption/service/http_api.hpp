#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "adoption/service/session_service.hpp"

namespace adoption::service {

struct HttpOptions {
  std::size_t worker_threads = 64;  // each open event stream holds one
  std::chrono::milliseconds keepalive{15000};
};

/// JSON API over a SessionService:
///   POST /sessions                      -> 201 session
///   GET  /sessions/{id}                 -> session
///   POST /sessions/{id}/snippets        {"text", "label"?} -> 201 snippet
///   PUT  /sessions/{id}/draft           {"draft"} -> timeline point
///   GET  /sessions/{id}/timeline?since= -> [points]
///   GET  /sessions/{id}/export          -> export document
///   GET  /sessions/{id}/events          -> text/event-stream of points
///   GET  /health
/// Errors are {"error": code, "message": text} with 404 (unknown session),
/// 422 (bad request body or empty snippet) or 503 (storage/provider).
class HttpServer {
 public:
  HttpServer(SessionService& service, HttpOptions options = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds without serving; port 0 picks a free port. Returns the port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); returns false if the server failed.
  bool run();
  /// Ends open event streams and stops the listener. Safe from any thread.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// "host:port" or ":port" (host 0.0.0.0); throws std::invalid_argument.
std::pair<std::string, int> parse_listen_address(const std::string& address);

}  // namespace adoption::service
