#include "adoption/service/session_service.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <thread>

namespace adoption::service {

using nlohmann::ordered_json;

namespace {

constexpr const char* kExportFormat = "adoption-session-export";
constexpr int kExportVersion = 1;

std::string fresh_id() {
  static std::mutex mutex;
  static std::mt19937_64 engine{[] {
    std::random_device rd;
    std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd(), rd(), rd()};
    return std::mt19937_64(seq);
  }()};
  std::lock_guard lock(mutex);
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(engine()),
                static_cast<unsigned long long>(engine()));
  return buf;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; });
}

std::optional<std::string> optional_string(const ordered_json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<std::string>();
}

}  // namespace

metrics::MetricVector aggregate_max(const std::vector<std::pair<std::string, metrics::MetricVector>>& per_snippet) {
  metrics::MetricVector agg;
  if (per_snippet.empty()) return agg;
  agg.jaccard = agg.pos_tf_isf_cosine = agg.sentiment_match = -std::numeric_limits<double>::infinity();
  agg.embedding_cosine.reset();
  for (const auto& [id, m] : per_snippet) {
    agg.jaccard = std::max(agg.jaccard, m.jaccard);
    agg.pos_tf_isf_cosine = std::max(agg.pos_tf_isf_cosine, m.pos_tf_isf_cosine);
    agg.sentiment_match = std::max(agg.sentiment_match, m.sentiment_match);
    if (m.embedding_cosine) {
      agg.embedding_cosine = agg.embedding_cosine ? std::max(*agg.embedding_cosine, *m.embedding_cosine)
                                                  : *m.embedding_cosine;
    }
  }
  return agg;
}

std::size_t code_point_count(std::string_view utf8) {
  return static_cast<std::size_t>(
      std::count_if(utf8.begin(), utf8.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

ordered_json to_json(const metrics::MetricVector& m) {
  ordered_json j;
  j["jaccard"] = m.jaccard;
  j["pos_tf_isf_cosine"] = m.pos_tf_isf_cosine;
  j["embedding_cosine"] = m.embedding_cosine ? ordered_json(*m.embedding_cosine) : ordered_json(nullptr);
  j["sentiment_match"] = m.sentiment_match;
  return j;
}

ordered_json to_json(const Snippet& s) {
  ordered_json j;
  j["id"] = s.id;
  j["text"] = s.text;
  j["label"] = s.label ? ordered_json(*s.label) : ordered_json(nullptr);
  j["added_at"] = s.added_at;
  return j;
}

ordered_json to_json(const TimelinePoint& p) {
  ordered_json j;
  j["at"] = p.at;
  j["draft_length"] = p.draft_length;
  j["partial"] = p.partial;
  ordered_json per = ordered_json::object();
  for (const auto& [id, m] : p.per_snippet) per[id] = to_json(m);
  j["per_snippet"] = std::move(per);
  j["aggregate"] = to_json(p.aggregate);
  return j;
}

ordered_json to_json(const SessionState& s) {
  ordered_json j;
  j["id"] = s.id;
  j["created_at"] = s.created_at;
  j["draft"] = s.draft;
  j["snippets"] = ordered_json::array();
  for (const auto& sn : s.snippets) j["snippets"].push_back(to_json(sn));
  j["timeline"] = ordered_json::array();
  for (const auto& p : s.timeline) j["timeline"].push_back(to_json(p));
  return j;
}

metrics::MetricVector metric_vector_from_json(const ordered_json& j) {
  metrics::MetricVector m;
  m.jaccard = j.at("jaccard").get<double>();
  m.pos_tf_isf_cosine = j.at("pos_tf_isf_cosine").get<double>();
  if (j.at("embedding_cosine").is_null()) {
    m.embedding_cosine.reset();
  } else {
    m.embedding_cosine = j["embedding_cosine"].get<double>();
  }
  m.sentiment_match = j.at("sentiment_match").get<double>();
  return m;
}

TimelinePoint point_from_json(const ordered_json& j) {
  TimelinePoint p;
  p.at = j.at("at").get<Micros>();
  p.draft_length = j.at("draft_length").get<std::size_t>();
  p.partial = j.at("partial").get<bool>();
  for (const auto& [id, m] : j.at("per_snippet").items()) p.per_snippet.emplace_back(id, metric_vector_from_json(m));
  p.aggregate = metric_vector_from_json(j.at("aggregate"));
  return p;
}

ordered_json export_document(const SessionState& s) {
  ordered_json j;
  j["format"] = kExportFormat;
  j["version"] = kExportVersion;
  j["session"] = {{"id", s.id}, {"created_at", s.created_at}};
  j["draft"] = s.draft;
  j["snippets"] = ordered_json::array();
  for (const auto& sn : s.snippets) j["snippets"].push_back(to_json(sn));
  j["timeline"] = ordered_json::array();
  for (const auto& p : s.timeline) j["timeline"].push_back(to_json(p));
  return j;
}

SessionState import_export(const ordered_json& doc) {
  if (!doc.is_object() || doc.value("format", "") != kExportFormat) {
    throw std::invalid_argument("not a session export document");
  }
  if (doc.value("version", 0) != kExportVersion) throw std::invalid_argument("unsupported export version");
  try {
    SessionState s;
    s.id = doc.at("session").at("id").get<std::string>();
    s.created_at = doc.at("session").at("created_at").get<Micros>();
    s.draft = doc.at("draft").get<std::string>();
    for (const auto& sn : doc.at("snippets")) {
      s.snippets.push_back({sn.at("id").get<std::string>(), sn.at("text").get<std::string>(),
                            optional_string(sn, "label"), sn.at("added_at").get<Micros>()});
    }
    for (const auto& p : doc.at("timeline")) s.timeline.push_back(point_from_json(p));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed export: ") + e.what());
  }
}

SessionState replay(const std::vector<Event>& events) {
  if (events.empty() || events.front().kind != "created") throw StorageError("log does not start with a created event");
  SessionState s;
  try {
    for (const auto& e : events) {
      if (e.kind == "created") {
        if (!s.id.empty()) throw StorageError("duplicate created event");
        s.id = e.payload.at("id").get<std::string>();
        s.created_at = e.at;
      } else if (e.kind == "snippet_added") {
        s.snippets.push_back({e.payload.at("id").get<std::string>(), e.payload.at("text").get<std::string>(),
                              optional_string(e.payload, "label"), e.at});
      } else if (e.kind == "draft_scored") {
        s.draft = e.payload.at("draft").get<std::string>();
        s.timeline.push_back(point_from_json(e.payload.at("point")));
      } else {
        throw StorageError("unknown event kind " + e.kind);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw StorageError(std::string("malformed event payload: ") + e.what());
  }
  return s;
}

// A set of coalesced draft updates, scored once by the call that opened it.
struct SessionService::Batch {
  std::string draft;
  bool done = false;
  std::optional<TimelinePoint> point;
  std::exception_ptr error;
};

struct SessionService::Session {
  std::unique_ptr<EventLog> log;

  mutable std::shared_mutex state_mutex;
  mutable std::condition_variable_any state_changed;
  SessionState state;

  // Writer queue. Tickets are handed out in arrival order; the holder of
  // `serving` is the only writer. Everything below is writer-only.
  std::mutex queue_mutex;
  std::condition_variable queue_cv;
  std::uint64_t next_ticket = 0;
  std::uint64_t serving = 0;
  std::shared_ptr<Batch> open_batch;

  std::vector<Document> snippet_docs;
  Micros last_at = 0;
};

namespace {

template <typename SessionT>
class WriterTurn {
 public:
  WriterTurn(SessionT& s, std::uint64_t ticket) : s_(s) {
    std::unique_lock lock(s_.queue_mutex);
    s_.queue_cv.wait(lock, [&] { return s_.serving == ticket; });
  }
  ~WriterTurn() {
    {
      std::lock_guard lock(s_.queue_mutex);
      ++s_.serving;
    }
    s_.queue_cv.notify_all();
  }
  WriterTurn(const WriterTurn&) = delete;
  WriterTurn& operator=(const WriterTurn&) = delete;

 private:
  SessionT& s_;
};

}  // namespace

SessionService::SessionService(ServiceConfig config, std::shared_ptr<const metrics::Scorer> scorer)
    : config_(std::move(config)), scorer_(std::move(scorer)) {
  std::error_code ec;
  std::filesystem::create_directories(config_.data_dir, ec);
  if (ec) throw StorageError("cannot create data directory " + config_.data_dir.string() + ": " + ec.message());
  load_existing();
}

SessionService::~SessionService() { shutdown(); }

void SessionService::load_existing() {
  for (const auto& entry : std::filesystem::directory_iterator(config_.data_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".jsonl") continue;
    auto events = EventLog::read(entry.path());
    if (events.empty()) continue;  // created event never acknowledged
    auto session = std::make_shared<Session>();
    session->state = replay(events);
    for (const auto& e : events) session->last_at = std::max(session->last_at, e.at);
    for (const auto& sn : session->state.snippets) session->snippet_docs.push_back(scorer_->analyze(sn.text));
    session->log = std::make_unique<EventLog>(entry.path());
    sessions_.emplace(session->state.id, std::move(session));
  }
}

std::shared_ptr<SessionService::Session> SessionService::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw UnknownSession(id);
  return it->second;
}

Micros SessionService::next_at(Session& session) const {
  session.last_at = std::max(now_micros(), session.last_at + 1);
  return session.last_at;
}

SessionState SessionService::create_session() {
  auto session = std::make_shared<Session>();
  std::string id = fresh_id();
  session->log = std::make_unique<EventLog>(config_.data_dir / (id + ".jsonl"));
  const Micros at = next_at(*session);
  session->log->append({at, "created", {{"id", id}}});
  session->state.id = id;
  session->state.created_at = at;
  SessionState copy = session->state;
  std::unique_lock lock(sessions_mutex_);
  sessions_.emplace(std::move(id), std::move(session));
  return copy;
}

SessionState SessionService::get_session(const std::string& id) const {
  auto session = find(id);
  std::shared_lock lock(session->state_mutex);
  return session->state;
}

Snippet SessionService::add_snippet(const std::string& id, const std::string& text, std::optional<std::string> label) {
  auto session = find(id);
  if (blank(text)) throw EmptySnippet();

  std::uint64_t ticket;
  {
    std::lock_guard lock(session->queue_mutex);
    ticket = session->next_ticket++;
  }
  WriterTurn turn(*session, ticket);

  Snippet snippet{fresh_id().substr(0, 16), text, std::move(label), next_at(*session)};
  ordered_json payload;
  payload["id"] = snippet.id;
  payload["text"] = snippet.text;
  payload["label"] = snippet.label ? ordered_json(*snippet.label) : ordered_json(nullptr);
  session->log->append({snippet.added_at, "snippet_added", std::move(payload)});
  session->snippet_docs.push_back(scorer_->analyze(snippet.text));
  {
    std::unique_lock lock(session->state_mutex);
    session->state.snippets.push_back(snippet);
  }
  return snippet;
}

TimelinePoint SessionService::compute_point(Session& session, const std::string& draft) const {
  const Document doc = scorer_->analyze(draft);
  TimelinePoint point;
  point.draft_length = code_point_count(draft);
  std::shared_lock lock(session.state_mutex);  // snippet ids; writers are excluded by the turn anyway
  for (std::size_t i = 0; i < session.snippet_docs.size(); ++i) {
    auto m = scorer_->score(doc, session.snippet_docs[i], metrics::OnProviderFailure::kMarkAbsent);
    point.partial = point.partial || !m.embedding_cosine.has_value();
    point.per_snippet.emplace_back(session.state.snippets[i].id, m);
  }
  point.aggregate = aggregate_max(point.per_snippet);
  return point;
}

TimelinePoint SessionService::update_draft(const std::string& id, std::string draft) {
  auto session = find(id);

  std::shared_ptr<Batch> batch;
  bool leader = false;
  std::uint64_t ticket = 0;
  {
    std::unique_lock lock(session->queue_mutex);
    if (session->open_batch) {
      batch = session->open_batch;
      batch->draft = std::move(draft);
    } else {
      batch = std::make_shared<Batch>();
      batch->draft = std::move(draft);
      session->open_batch = batch;
      leader = true;
      ticket = session->next_ticket++;
    }
    if (!leader) {
      session->queue_cv.wait(lock, [&] { return batch->done; });
      if (batch->error) std::rethrow_exception(batch->error);
      return *batch->point;
    }
  }

  if (config_.debounce.count() > 0) std::this_thread::sleep_for(config_.debounce);

  std::optional<TimelinePoint> point;
  std::exception_ptr error;
  {
    WriterTurn turn(*session, ticket);
    std::string latest;
    {
      std::lock_guard lock(session->queue_mutex);
      if (session->open_batch == batch) session->open_batch.reset();
      latest = batch->draft;
    }
    try {
      TimelinePoint p = compute_point(*session, latest);
      p.at = next_at(*session);
      ordered_json payload;
      payload["draft"] = latest;
      payload["point"] = to_json(p);
      session->log->append({p.at, "draft_scored", std::move(payload)});
      {
        std::unique_lock lock(session->state_mutex);
        session->state.draft = std::move(latest);
        session->state.timeline.push_back(p);
      }
      session->state_changed.notify_all();
      point = std::move(p);
    } catch (...) {
      error = std::current_exception();
    }
  }
  {
    std::lock_guard lock(session->queue_mutex);
    batch->done = true;
    batch->point = point;
    batch->error = error;
  }
  session->queue_cv.notify_all();
  if (error) std::rethrow_exception(error);
  return *point;
}

std::vector<TimelinePoint> SessionService::get_timeline(const std::string& id, std::optional<Micros> since) const {
  auto session = find(id);
  std::shared_lock lock(session->state_mutex);
  const auto& timeline = session->state.timeline;
  if (!since) return timeline;
  const auto first =
      std::upper_bound(timeline.begin(), timeline.end(), *since, [](Micros t, const TimelinePoint& p) { return t < p.at; });
  return {first, timeline.end()};
}

ordered_json SessionService::export_session(const std::string& id) const {
  return export_document(get_session(id));
}

std::vector<TimelinePoint> SessionService::wait_for_points(const std::string& id, std::size_t known,
                                                           std::chrono::milliseconds timeout) const {
  auto session = find(id);
  std::shared_lock lock(session->state_mutex);
  session->state_changed.wait_for(lock, timeout,
                                  [&] { return stopping_.load() || session->state.timeline.size() > known; });
  const auto& timeline = session->state.timeline;
  if (timeline.size() <= known) return {};
  return {timeline.begin() + static_cast<std::ptrdiff_t>(known), timeline.end()};
}

void SessionService::shutdown() {
  stopping_ = true;
  std::shared_lock lock(sessions_mutex_);
  for (const auto& [id, session] : sessions_) {
    // Take the lock so a waiter between its predicate check and its wait
    // cannot miss the notification.
    { std::unique_lock state_lock(session->state_mutex); }
    session->state_changed.notify_all();
  }
}

std::vector<std::string> SessionService::session_ids() const {
  std::shared_lock lock(sessions_mutex_);
  std::vector<std::string> ids;
  for (const auto& [id, s] : sessions_) ids.push_back(id);
  return ids;
}

}  // namespace adoption::service
