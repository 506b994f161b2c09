#include "adoption/service/http_api.hpp"

#include <charconv>

#include <httplib.h>

#include "adoption/embedding.hpp"

namespace adoption::service {

using nlohmann::ordered_json;

namespace {

void send_json(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
  send_json(res, status, {{"error", code}, {"message", message}});
}

class BadRequest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json parse_body(const httplib::Request& req) {
  try {
    auto j = nlohmann::json::parse(req.body);
    if (!j.is_object()) throw BadRequest("request body must be a JSON object");
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw BadRequest(std::string("request body is not valid JSON: ") + e.what());
  }
}

std::string string_field(const nlohmann::json& body, const char* key, bool required) {
  if (!body.contains(key) || body[key].is_null()) {
    if (required) throw BadRequest(std::string("missing field \"") + key + "\"");
    return {};
  }
  if (!body[key].is_string()) throw BadRequest(std::string("field \"") + key + "\" must be a string");
  return body[key].get<std::string>();
}

std::optional<std::int64_t> parse_int(const std::string& s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const UnknownSession& e) {
      send_error(res, 404, "unknown_session", e.what());
    } catch (const EmptySnippet& e) {
      send_error(res, 422, "empty_snippet", e.what());
    } catch (const BadRequest& e) {
      send_error(res, 422, "invalid_request", e.what());
    } catch (const embed::ProviderUnavailable& e) {
      send_error(res, 503, "provider_unavailable", e.what());
    } catch (const StorageError& e) {
      send_error(res, 503, "storage_unavailable", e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "internal", e.what());
    }
  };
}

std::string sse_frame(std::size_t index, const TimelinePoint& point) {
  return "id: " + std::to_string(index) + "\nevent: point\ndata: " + to_json(point).dump() + "\n\n";
}

}  // namespace

struct HttpServer::Impl {
  SessionService& service;
  HttpOptions options;
  httplib::Server server;

  Impl(SessionService& s, HttpOptions o) : service(s), options(o) {
    const std::size_t threads = options.worker_threads;
    server.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type, Last-Event-ID");
      res.status = 204;
    });
    routes();
  }

  void routes() {
    server.Post("/sessions", guarded([this](const httplib::Request&, httplib::Response& res) {
      send_json(res, 201, to_json(service.create_session()));
    }));

    server.Get(R"(/sessions/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, 200, to_json(service.get_session(req.matches[1])));
    }));

    server.Post(R"(/sessions/([^/]+)/snippets)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto body = parse_body(req);
      const std::string text = string_field(body, "text", true);
      std::optional<std::string> label;
      if (body.contains("label") && !body["label"].is_null()) label = string_field(body, "label", true);
      send_json(res, 201, to_json(service.add_snippet(req.matches[1], text, std::move(label))));
    }));

    server.Put(R"(/sessions/([^/]+)/draft)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto body = parse_body(req);
      std::string draft = string_field(body, "draft", true);
      send_json(res, 200, to_json(service.update_draft(req.matches[1], std::move(draft))));
    }));

    server.Get(R"(/sessions/([^/]+)/timeline)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      std::optional<Micros> since;
      if (req.has_param("since")) {
        since = parse_int(req.get_param_value("since"));
        if (!since) throw BadRequest("since must be an integer timestamp in microseconds");
      }
      ordered_json points = ordered_json::array();
      for (const auto& p : service.get_timeline(req.matches[1], since)) points.push_back(to_json(p));
      send_json(res, 200, points);
    }));

    server.Get(R"(/sessions/([^/]+)/export)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, 200, service.export_session(req.matches[1]));
    }));

    // Event ids are 1-based timeline positions, so Last-Event-ID (or
    // ?after=) resumes after the last point a client saw. Without either the
    // stream starts with the next new point.
    server.Get(R"(/sessions/([^/]+)/events)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      std::size_t known = service.get_session(id).timeline.size();
      std::string resume = req.get_header_value("Last-Event-ID");
      if (resume.empty() && req.has_param("after")) resume = req.get_param_value("after");
      if (!resume.empty()) {
        const auto v = parse_int(resume);
        if (!v || *v < 0) throw BadRequest("Last-Event-ID must be a non-negative integer");
        known = static_cast<std::size_t>(*v);
      }
      res.set_header("Cache-Control", "no-cache");
      res.set_header("X-Accel-Buffering", "no");
      auto first = std::make_shared<bool>(true);
      res.set_chunked_content_provider(
          "text/event-stream", [this, id, known, first](std::size_t, httplib::DataSink& sink) mutable {
            if (*first) {
              *first = false;
              const std::string hello = "retry: 2000\n: connected\n\n";
              return sink.write(hello.data(), hello.size());
            }
            if (service.stopping()) {
              sink.done();
              return true;
            }
            std::string out;
            try {
              for (const auto& p : service.wait_for_points(id, known, options.keepalive)) out += sse_frame(++known, p);
            } catch (const UnknownSession&) {
              sink.done();
              return true;
            }
            if (out.empty()) out = ": keepalive\n\n";
            if (service.stopping()) {
              sink.write(out.data(), out.size());
              sink.done();
              return true;
            }
            return sink.write(out.data(), out.size());
          });
    }));

    server.Get("/health", guarded([this](const httplib::Request&, httplib::Response& res) {
      const auto& provider = service.scorer().provider();
      const auto health = provider.healthcheck();
      ordered_json body;
      body["status"] = health.healthy ? "ok" : "degraded";
      body["sessions"] = service.session_ids().size();
      body["embedding"] = {{"kind", provider.kind() == embed::ProviderKind::kRemote ? "remote" : "fallback"},
                           {"healthy", health.healthy},
                           {"latency_ms", health.latency.count()},
                           {"detail", health.detail}};
      send_json(res, 200, body);
    }));
  }
};

HttpServer::HttpServer(SessionService& service, HttpOptions options)
    : impl_(std::make_unique<Impl>(service, options)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::run() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  impl_->service.shutdown();
  impl_->server.stop();
}

std::pair<std::string, int> parse_listen_address(const std::string& address) {
  const auto colon = address.rfind(':');
  if (colon == std::string::npos) throw std::invalid_argument("listen address must be host:port");
  std::string host = address.substr(0, colon);
  if (host.empty()) host = "0.0.0.0";
  const auto port = parse_int(address.substr(colon + 1));
  if (!port || *port < 0 || *port > 65535) throw std::invalid_argument("bad port in listen address " + address);
  return {host, static_cast<int>(*port)};
}

}  // namespace adoption::service
