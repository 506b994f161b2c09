#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "adoption/metrics.hpp"
#include "adoption/service/event_log.hpp"

namespace adoption::service {

class UnknownSession : public std::runtime_error {
 public:
  explicit UnknownSession(const std::string& id) : std::runtime_error("unknown session " + id) {}
};

class EmptySnippet : public std::invalid_argument {
 public:
  EmptySnippet() : std::invalid_argument("snippet text is empty after trimming") {}
};

struct Snippet {
  std::string id;
  std::string text;
  std::optional<std::string> label;
  Micros added_at = 0;

  bool operator==(const Snippet&) const = default;
};

struct TimelinePoint {
  Micros at = 0;
  std::size_t draft_length = 0;  // Unicode code points
  /// True when the embedding provider failed and embedding_cosine is absent.
  bool partial = false;
  /// In snippet insertion order.
  std::vector<std::pair<std::string, metrics::MetricVector>> per_snippet;
  metrics::MetricVector aggregate;

  bool operator==(const TimelinePoint&) const = default;
};

struct SessionState {
  std::string id;
  Micros created_at = 0;
  std::string draft;
  std::vector<Snippet> snippets;
  std::vector<TimelinePoint> timeline;
};

/// Per-metric maximum over snippets; all zeros for no snippets. The
/// embedding maximum skips absent values and is absent only if all are.
metrics::MetricVector aggregate_max(const std::vector<std::pair<std::string, metrics::MetricVector>>& per_snippet);

std::size_t code_point_count(std::string_view utf8);

nlohmann::ordered_json to_json(const metrics::MetricVector& m);
nlohmann::ordered_json to_json(const Snippet& s);
nlohmann::ordered_json to_json(const TimelinePoint& p);
nlohmann::ordered_json to_json(const SessionState& s);
metrics::MetricVector metric_vector_from_json(const nlohmann::ordered_json& j);
TimelinePoint point_from_json(const nlohmann::ordered_json& j);

/// Export document with a fixed field order:
/// {"format","version","session":{"id","created_at"},"draft","snippets","timeline"}.
nlohmann::ordered_json export_document(const SessionState& s);
/// Inverse of export_document; throws std::invalid_argument on a document
/// in another format.
SessionState import_export(const nlohmann::ordered_json& doc);

/// Session state is a left fold over the event log.
SessionState replay(const std::vector<Event>& events);

struct ServiceConfig {
  std::filesystem::path data_dir = "sessions";
  /// Draft updates arriving within this window of the first pending one
  /// are coalesced; only the latest draft is scored.
  std::chrono::milliseconds debounce{500};
};

/// Sessions backed by one event log each. Sessions are independent; within
/// a session every write goes through a ticketed single-writer queue, so
/// updates are applied in arrival order. Readers copy state under a shared
/// lock and see a prefix of the log.
class SessionService {
 public:
  SessionService(ServiceConfig config, std::shared_ptr<const metrics::Scorer> scorer);
  ~SessionService();

  SessionState create_session();
  SessionState get_session(const std::string& id) const;
  Snippet add_snippet(const std::string& id, const std::string& text, std::optional<std::string> label = {});
  /// Blocks for up to the debounce window. Callers whose drafts were
  /// coalesced all receive the point computed for the latest draft.
  TimelinePoint update_draft(const std::string& id, std::string draft);
  /// Points with at > since, or every point.
  std::vector<TimelinePoint> get_timeline(const std::string& id, std::optional<Micros> since = {}) const;
  nlohmann::ordered_json export_session(const std::string& id) const;

  /// Waits until the session has more than `known` points, the timeout
  /// passes, or the service shuts down; returns the points from index
  /// `known` on (possibly none).
  std::vector<TimelinePoint> wait_for_points(const std::string& id, std::size_t known,
                                             std::chrono::milliseconds timeout) const;
  /// Wakes every waiter; later waits return immediately.
  void shutdown();
  bool stopping() const { return stopping_; }

  std::vector<std::string> session_ids() const;
  const metrics::Scorer& scorer() const { return *scorer_; }
  const ServiceConfig& config() const { return config_; }

 private:
  struct Session;
  struct Batch;

  std::shared_ptr<Session> find(const std::string& id) const;
  void load_existing();
  TimelinePoint compute_point(Session& session, const std::string& draft) const;
  Micros next_at(Session& session) const;

  ServiceConfig config_;
  std::shared_ptr<const metrics::Scorer> scorer_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::atomic<bool> stopping_{false};
};

}  // namespace adoption::service
