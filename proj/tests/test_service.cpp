#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include "adoption/service/event_log.hpp"
#include "adoption/service/http_api.hpp"
#include "adoption/service/session_service.hpp"
#include "oracles.hpp"

using namespace adoption;
using namespace adoption::service;
using namespace std::chrono_literals;
using nlohmann::ordered_json;

namespace {

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("adoption-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

ServiceConfig config_for(const TempDir& dir, std::chrono::milliseconds debounce = 0ms) {
  return {dir.path(), debounce};
}

class FailingProvider : public embed::EmbeddingProvider {
 public:
  embed::Vector embed(std::string_view) const override { throw embed::ProviderUnavailable("embedding service down"); }
  std::size_t dimension() const override { return 256; }
  embed::ProviderKind kind() const override { return embed::ProviderKind::kRemote; }
  embed::Health healthcheck() const override { return {false, 0ms, "down"}; }
};

std::shared_ptr<const metrics::Scorer> failing_scorer() {
  const auto base = metrics::Scorer::offline();
  return std::make_shared<const metrics::Scorer>(std::shared_ptr<const Analyzer>(base, &base->analyzer()),
                                                 sentiment::SentimentLexicon::builtin(),
                                                 std::make_shared<FailingProvider>());
}

std::filesystem::path log_path(const TempDir& dir, const std::string& id) { return dir.path() / (id + ".jsonl"); }

const std::string kSnippetA =
    "Bob waited at the old restaurant for twenty years. His loyalty was admirable but his hope was misguided.";
const std::string kSnippetB = "Jimmy chose duty over friendship. The choice was painful and tragic.";

}  // namespace

TEST_CASE("session lifecycle") {
  TempDir dir;
  SessionService service(config_for(dir), metrics::Scorer::offline());
  const auto s = service.create_session();
  CHECK(!s.id.empty());
  CHECK(s.created_at > 0);
  CHECK(s.snippets.empty());
  CHECK(s.timeline.empty());
  CHECK(std::filesystem::exists(log_path(dir, s.id)));

  CHECK_THROWS_AS(service.get_session("nope"), UnknownSession);
  CHECK_THROWS_AS(service.add_snippet("nope", "text"), UnknownSession);
  CHECK_THROWS_AS(service.update_draft("nope", "text"), UnknownSession);
  CHECK_THROWS_AS(service.get_timeline("nope"), UnknownSession);
  CHECK_THROWS_AS(service.add_snippet(s.id, ""), EmptySnippet);
  CHECK_THROWS_AS(service.add_snippet(s.id, " \n\t "), EmptySnippet);

  const auto a = service.add_snippet(s.id, kSnippetA, "analysis");
  const auto b = service.add_snippet(s.id, kSnippetB);
  CHECK(a.id.size() == 16);
  CHECK(a.id != b.id);
  CHECK(a.label == "analysis");
  CHECK_FALSE(b.label);
  CHECK(b.added_at > a.added_at);

  // No snippets yet scored: adding one does not create a point.
  CHECK(service.get_timeline(s.id).empty());

  const auto p = service.update_draft(s.id, kSnippetA);
  REQUIRE(p.per_snippet.size() == 2);
  CHECK(p.per_snippet[0].first == a.id);
  CHECK(p.per_snippet[1].first == b.id);
  CHECK(p.per_snippet[0].second.jaccard == 1.0);
  CHECK(p.per_snippet[0].second.pos_tf_isf_cosine == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p.aggregate.jaccard == 1.0);
  CHECK_FALSE(p.partial);
  CHECK(p.draft_length == kSnippetA.size());

  const auto state = service.get_session(s.id);
  CHECK(state.draft == kSnippetA);
  CHECK(state.snippets.size() == 2);
  CHECK(state.timeline.size() == 1);
  CHECK(state.timeline.front() == p);
  CHECK(service.session_ids() == std::vector<std::string>{s.id});
}

TEST_CASE("draft scoring extremes and monotone pasting") {
  TempDir dir;
  SessionService service(config_for(dir), metrics::Scorer::offline());
  const auto id = service.create_session().id;
  service.add_snippet(id, "alpha beta gamma delta epsilon zeta eta theta");

  CHECK(service.update_draft(id, "").aggregate.jaccard == 0.0);
  CHECK(service.update_draft(id, "quick brown fox").aggregate.jaccard == 0.0);
  double last = -1.0;
  for (const std::string draft : {"alpha", "alpha beta", "alpha beta gamma delta", "alpha beta gamma delta epsilon zeta",
                                  "alpha beta gamma delta epsilon zeta eta theta"}) {
    const double j = service.update_draft(id, draft).aggregate.jaccard;
    CHECK(j > last);
    last = j;
  }
  CHECK(last == 1.0);

  // Code points, not bytes.
  CHECK(service.update_draft(id, "caf\xC3\xA9 \xE2\x80\x94 ok").draft_length == 9);
  CHECK(code_point_count("\xF0\x9F\x98\x80") == 1);
}

TEST_CASE("aggregate is the per-metric maximum") {
  TempDir dir;
  SessionService service(config_for(dir), metrics::Scorer::offline());
  const auto id = service.create_session().id;
  service.add_snippet(id, kSnippetA);
  service.add_snippet(id, kSnippetB);
  service.add_snippet(id, "A completely different sentence about the weather.");
  oracle::TextGenerator gen(5);
  for (int i = 0; i < 10; ++i) {
    const auto p = service.update_draft(id, gen.text() + " " + (i % 2 ? kSnippetB : kSnippetA));
    metrics::MetricVector expect{0, 0, 0.0, 0};
    bool first = true;
    for (const auto& [sid, m] : p.per_snippet) {
      expect.jaccard = first ? m.jaccard : std::max(expect.jaccard, m.jaccard);
      expect.pos_tf_isf_cosine = first ? m.pos_tf_isf_cosine : std::max(expect.pos_tf_isf_cosine, m.pos_tf_isf_cosine);
      expect.embedding_cosine = first ? *m.embedding_cosine : std::max(*expect.embedding_cosine, *m.embedding_cosine);
      expect.sentiment_match = first ? m.sentiment_match : std::max(expect.sentiment_match, m.sentiment_match);
      first = false;
    }
    CHECK(p.aggregate == expect);
  }
  CHECK(aggregate_max({}) == metrics::MetricVector{0, 0, 0.0, 0});
  metrics::MetricVector absent{0.5, 0.5, std::nullopt, 0.0};
  metrics::MetricVector present{0.1, 0.1, -0.2, 0.3};
  CHECK(aggregate_max({{"a", absent}, {"b", present}}).embedding_cosine == -0.2);
  CHECK_FALSE(aggregate_max({{"a", absent}, {"b", absent}}).embedding_cosine);
  CHECK(aggregate_max({{"a", absent}, {"b", present}}).jaccard == 0.5);
}

TEST_CASE("timeline filtering by time") {
  TempDir dir;
  SessionService service(config_for(dir), metrics::Scorer::offline());
  const auto id = service.create_session().id;
  service.add_snippet(id, kSnippetA);
  std::vector<TimelinePoint> points;
  for (int i = 0; i < 5; ++i) points.push_back(service.update_draft(id, "draft number " + std::to_string(i)));
  for (std::size_t i = 1; i < points.size(); ++i) CHECK(points[i].at > points[i - 1].at);
  CHECK(service.get_timeline(id).size() == 5);
  CHECK(service.get_timeline(id, 0).size() == 5);
  CHECK(service.get_timeline(id, points[1].at).size() == 3);
  CHECK(service.get_timeline(id, points[1].at).front() == points[2]);
  CHECK(service.get_timeline(id, points[1].at + 1).size() == 3);
  CHECK(service.get_timeline(id, points.back().at).empty());
}

TEST_CASE("debounce coalesces a burst into one point for the latest draft") {
  TempDir dir;
  SessionService service(config_for(dir, 200ms), metrics::Scorer::offline());
  const auto id = service.create_session().id;
  service.add_snippet(id, kSnippetA);

  std::vector<TimelinePoint> results(6);
  std::vector<std::thread> writers;
  for (std::size_t i = 0; i < results.size(); ++i) {
    writers.emplace_back([&, i] {
      std::this_thread::sleep_for(std::chrono::milliseconds(15 * i));
      results[i] = service.update_draft(id, i + 1 == results.size() ? kSnippetA : "partial draft " + std::to_string(i));
    });
  }
  for (auto& w : writers) w.join();

  const auto timeline = service.get_timeline(id);
  REQUIRE(timeline.size() == 1);
  for (const auto& r : results) CHECK(r == timeline.front());
  CHECK(timeline.front().aggregate.jaccard == 1.0);
  CHECK(service.get_session(id).draft == kSnippetA);

  // A later update opens a new window.
  const auto next = service.update_draft(id, "something else");
  CHECK(next.at > timeline.front().at);
  CHECK(service.get_timeline(id).size() == 2);
}

TEST_CASE("concurrent readers only see whole points") {
  TempDir dir;
  SessionService service(config_for(dir), metrics::Scorer::offline());
  const auto id = service.create_session().id;
  service.add_snippet(id, kSnippetA);
  service.add_snippet(id, kSnippetB);

  std::atomic<bool> done{false};
  std::atomic<int> violations{0}, reads{0};
  std::vector<std::thread> readers;
  for (int r = 0; r < 4; ++r) {
    readers.emplace_back([&] {
      while (!done) {
        const auto s = service.get_session(id);
        ++reads;
        for (std::size_t i = 0; i < s.timeline.size(); ++i) {
          if (s.timeline[i].per_snippet.size() != 2) ++violations;
          if (i > 0 && s.timeline[i].at <= s.timeline[i - 1].at) ++violations;
        }
        if (!s.timeline.empty() && s.timeline.back().draft_length != code_point_count(s.draft)) ++violations;
      }
    });
  }
  std::vector<std::thread> writers;
  for (int w = 0; w < 3; ++w) {
    writers.emplace_back([&, w] {
      oracle::TextGenerator gen(100 + w);
      for (int i = 0; i < 20; ++i) service.update_draft(id, gen.text());
    });
  }
  for (auto& w : writers) w.join();
  done = true;
  for (auto& r : readers) r.join();
  CHECK(violations.load() == 0);
  CHECK(reads.load() > 0);
  // Writers that arrive while a batch is open join it, even without a
  // debounce window.
  const auto n = service.get_timeline(id).size();
  CHECK(n >= 20);
  CHECK(n <= 60);
}

TEST_CASE("sessions are independent") {
  TempDir dir;
  SessionService service(config_for(dir, 100ms), metrics::Scorer::offline());
  const auto a = service.create_session().id;
  const auto b = service.create_session().id;
  service.add_snippet(a, kSnippetA);
  service.add_snippet(b, kSnippetB);
  std::thread ta([&] { service.update_draft(a, kSnippetA); });
  std::thread tb([&] { service.update_draft(b, kSnippetA); });
  ta.join();
  tb.join();
  CHECK(service.get_timeline(a).front().aggregate.jaccard == 1.0);
  CHECK(service.get_timeline(b).front().aggregate.jaccard < 1.0);
}

TEST_CASE("event log replay reproduces the export byte for byte") {
  TempDir dir;
  std::string id;
  std::string exported;
  {
    SessionService service(config_for(dir), metrics::Scorer::offline());
    id = service.create_session().id;
    service.add_snippet(id, kSnippetA, "a");
    service.add_snippet(id, kSnippetB);
    oracle::TextGenerator gen(77);
    for (int i = 0; i < 5; ++i) service.update_draft(id, gen.text());
    exported = service.export_session(id).dump();

    const auto replayed = replay(EventLog::read(log_path(dir, id)));
    CHECK(export_document(replayed).dump() == exported);
  }
  // A fresh process over the same directory serves the same session.
  SessionService restarted(config_for(dir), metrics::Scorer::offline());
  CHECK(restarted.session_ids() == std::vector<std::string>{id});
  CHECK(restarted.export_session(id).dump() == exported);
  const auto p = restarted.update_draft(id, kSnippetB);
  CHECK(p.at > restarted.get_timeline(id).front().at);
  CHECK(restarted.get_timeline(id).size() == 6);
}

TEST_CASE("a torn final line is ignored and trimmed") {
  TempDir dir;
  std::string id;
  {
    SessionService service(config_for(dir), metrics::Scorer::offline());
    id = service.create_session().id;
    service.add_snippet(id, kSnippetA);
    service.update_draft(id, kSnippetA);
  }
  {
    std::ofstream out(log_path(dir, id), std::ios::app | std::ios::binary);
    out << R"({"at":99999999999999999,"kind":"draft_scored","payload":{"draft":"half)";
  }
  std::size_t torn = 0;
  CHECK(EventLog::read(log_path(dir, id), &torn).size() == 3);
  CHECK(torn == 1);

  SessionService restarted(config_for(dir), metrics::Scorer::offline());
  CHECK(restarted.get_timeline(id).size() == 1);
  restarted.update_draft(id, "after the crash");
  torn = 0;
  const auto events = EventLog::read(log_path(dir, id), &torn);
  CHECK(torn == 0);
  CHECK(events.size() == 4);
  CHECK(events.back().payload.at("draft") == "after the crash");
}

TEST_CASE("event log format") {
  TempDir dir;
  const auto path = dir.path() / "log.jsonl";
  {
    EventLog log(path);
    log.append({1, "created", {{"id", "x"}}});
    log.append({2, "snippet_added", {{"id", "s"}, {"text", "line\nbreak \"quoted\""}, {"label", nullptr}}});
  }
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first == R"({"at":1,"kind":"created","payload":{"id":"x"}})");
  const auto events = EventLog::read(path);
  REQUIRE(events.size() == 2);
  CHECK(events[1].payload.at("text") == "line\nbreak \"quoted\"");
  CHECK_THROWS_AS(parse_event("{\"at\":1}"), StorageError);
  CHECK_THROWS_AS(parse_event("not json"), StorageError);
  CHECK_THROWS_AS(EventLog::read(dir.path() / "missing.jsonl"), StorageError);
}

TEST_CASE("provider failure yields partial points") {
  TempDir dir;
  SessionService service(config_for(dir), failing_scorer());
  const auto id = service.create_session().id;
  service.add_snippet(id, kSnippetA);
  const auto p = service.update_draft(id, kSnippetA);
  CHECK(p.partial);
  CHECK_FALSE(p.per_snippet[0].second.embedding_cosine);
  CHECK_FALSE(p.aggregate.embedding_cosine);
  CHECK(p.aggregate.jaccard == 1.0);
  const auto j = to_json(p);
  CHECK(j.at("aggregate").at("embedding_cosine").is_null());
  CHECK(point_from_json(j) == p);
}

TEST_CASE("export import round trip and recomputation") {
  TempDir dir;
  SessionService service(config_for(dir), metrics::Scorer::offline());
  const auto id = service.create_session().id;
  service.add_snippet(id, kSnippetA, "first");
  service.add_snippet(id, kSnippetB);
  const std::string draft = "Bob waited twenty years, and Jimmy chose duty. It was tragic.";
  service.update_draft(id, "early text");
  service.update_draft(id, draft);

  const auto doc = service.export_session(id);
  CHECK(doc.at("format") == "adoption-session-export");
  CHECK(doc.at("version") == 1);
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"format", "version", "session", "draft", "snippets", "timeline"});

  const auto imported = import_export(ordered_json::parse(doc.dump()));
  CHECK(export_document(imported).dump() == doc.dump());
  CHECK(imported.draft == draft);

  // The last point is reproducible from the exported texts alone.
  const auto scorer = metrics::Scorer::offline();
  const auto response = scorer->analyze(imported.draft);
  const auto& last = imported.timeline.back();
  REQUIRE(last.per_snippet.size() == imported.snippets.size());
  for (std::size_t i = 0; i < imported.snippets.size(); ++i) {
    CHECK(last.per_snippet[i].first == imported.snippets[i].id);
    CHECK(last.per_snippet[i].second == scorer->score(response, scorer->analyze(imported.snippets[i].text)));
  }

  auto wrong = doc;
  wrong["format"] = "other";
  CHECK_THROWS_AS(import_export(wrong), std::invalid_argument);
}

TEST_CASE("wait_for_points") {
  TempDir dir;
  SessionService service(config_for(dir), metrics::Scorer::offline());
  const auto id = service.create_session().id;
  service.add_snippet(id, kSnippetA);
  CHECK(service.wait_for_points(id, 0, 20ms).empty());
  std::thread writer([&] {
    std::this_thread::sleep_for(50ms);
    service.update_draft(id, "hello");
  });
  const auto got = service.wait_for_points(id, 0, 5s);
  writer.join();
  CHECK(got.size() == 1);
  service.shutdown();
  const auto t0 = std::chrono::steady_clock::now();
  CHECK(service.wait_for_points(id, 1, 5s).empty());
  CHECK(std::chrono::steady_clock::now() - t0 < 1s);
}

namespace {

struct RunningServer {
  TempDir dir;
  SessionService service;
  HttpServer http;
  int port = 0;
  std::thread thread;

  explicit RunningServer(std::shared_ptr<const metrics::Scorer> scorer = metrics::Scorer::offline())
      : service(config_for(dir), std::move(scorer)), http(service, HttpOptions{8, 200ms}) {
    port = http.bind("127.0.0.1", 0);
    thread = std::thread([this] { http.run(); });
    httplib::Client probe("127.0.0.1", port);
    for (int i = 0; i < 100 && !probe.Get("/health"); ++i) std::this_thread::sleep_for(10ms);
  }
  ~RunningServer() {
    http.stop();
    thread.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(5s);
    return c;
  }
};

ordered_json body_of(const httplib::Result& r) {
  REQUIRE(r);
  return ordered_json::parse(r->body);
}

}  // namespace

TEST_CASE("HTTP API routes") {
  RunningServer server;
  auto c = server.client();

  auto created = c.Post("/sessions", "", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  CHECK(created->get_header_value("Access-Control-Allow-Origin") == "*");
  const std::string id = body_of(created).at("id");

  auto snip = c.Post("/sessions/" + id + "/snippets", R"({"text":"the cat sat on the mat","label":"ai"})",
                     "application/json");
  REQUIRE(snip);
  CHECK(snip->status == 201);
  CHECK(body_of(snip).at("label") == "ai");
  CHECK(c.Post("/sessions/" + id + "/snippets", R"({"text":"   "})", "application/json")->status == 422);
  CHECK(body_of(c.Post("/sessions/" + id + "/snippets", R"({"text":"  "})", "application/json")).at("error") ==
        "empty_snippet");
  CHECK(c.Post("/sessions/" + id + "/snippets", R"({"label":"x"})", "application/json")->status == 422);
  CHECK(c.Post("/sessions/" + id + "/snippets", "{broken", "application/json")->status == 422);
  CHECK(c.Post("/sessions/" + id + "/snippets", R"({"text":5})", "application/json")->status == 422);

  auto put = c.Put("/sessions/" + id + "/draft", R"({"draft":"the cat sat on the mat"})", "application/json");
  REQUIRE(put);
  CHECK(put->status == 200);
  const auto point = body_of(put);
  CHECK(point.at("aggregate").at("jaccard") == 1.0);
  CHECK(c.Put("/sessions/" + id + "/draft", R"({"text":"x"})", "application/json")->status == 422);
  c.Put("/sessions/" + id + "/draft", R"({"draft":"a dog"})", "application/json");

  const auto timeline = body_of(c.Get("/sessions/" + id + "/timeline"));
  CHECK(timeline.size() == 2);
  const std::int64_t first_at = point.at("at");
  CHECK(body_of(c.Get("/sessions/" + id + "/timeline?since=" + std::to_string(first_at))).size() == 1);
  CHECK(c.Get("/sessions/" + id + "/timeline?since=yesterday")->status == 422);

  const auto session = body_of(c.Get("/sessions/" + id));
  CHECK(session.at("draft") == "a dog");
  const auto exported = body_of(c.Get("/sessions/" + id + "/export"));
  CHECK(exported.dump() == server.service.export_session(id).dump());

  auto missing = c.Get("/sessions/nope");
  CHECK(missing->status == 404);
  CHECK(body_of(missing).at("error") == "unknown_session");
  CHECK(c.Put("/sessions/nope/draft", R"({"draft":"x"})", "application/json")->status == 404);
  CHECK(c.Get("/sessions/nope/events")->status == 404);

  const auto health = body_of(c.Get("/health"));
  CHECK(health.at("status") == "ok");
  CHECK(health.at("sessions") == 1);
  CHECK(health.at("embedding").at("kind") == "fallback");

  auto preflight = c.Options("/sessions");
  REQUIRE(preflight);
  CHECK(preflight->status == 204);
  CHECK(preflight->get_header_value("Access-Control-Allow-Methods").find("PUT") != std::string::npos);
}

TEST_CASE("HTTP health reports a degraded provider") {
  RunningServer server(failing_scorer());
  auto c = server.client();
  const auto health = body_of(c.Get("/health"));
  CHECK(health.at("status") == "degraded");
  CHECK(health.at("embedding").at("healthy") == false);
  const std::string id = body_of(c.Post("/sessions", "", "application/json")).at("id");
  c.Post("/sessions/" + id + "/snippets", R"({"text":"hello there"})", "application/json");
  const auto point = body_of(c.Put("/sessions/" + id + "/draft", R"({"draft":"hello"})", "application/json"));
  CHECK(point.at("partial") == true);
  CHECK(point.at("aggregate").at("embedding_cosine").is_null());
}

namespace {

// Collects SSE frames from a stream until `want` point events arrive.
struct SseReader {
  std::string raw;
  std::vector<std::pair<std::string, ordered_json>> points;  // (id, data)

  void feed(const char* data, std::size_t n) {
    raw.append(data, n);
    for (std::size_t end = raw.find("\n\n"); end != std::string::npos; end = raw.find("\n\n")) {
      const std::string frame = raw.substr(0, end);
      raw.erase(0, end + 2);
      std::string id, event, payload;
      std::size_t start = 0;
      while (start <= frame.size()) {
        std::size_t nl = frame.find('\n', start);
        if (nl == std::string::npos) nl = frame.size();
        const std::string line = frame.substr(start, nl - start);
        if (line.rfind("id: ", 0) == 0) id = line.substr(4);
        if (line.rfind("event: ", 0) == 0) event = line.substr(7);
        if (line.rfind("data: ", 0) == 0) payload = line.substr(6);
        start = nl + 1;
      }
      if (event == "point") points.emplace_back(id, ordered_json::parse(payload));
    }
  }
};

}  // namespace

TEST_CASE("HTTP event stream") {
  RunningServer server;
  auto c = server.client();
  const std::string id = body_of(c.Post("/sessions", "", "application/json")).at("id");
  c.Post("/sessions/" + id + "/snippets", R"({"text":"the cat sat"})", "application/json");
  c.Put("/sessions/" + id + "/draft", R"({"draft":"before the stream"})", "application/json");

  SseReader live;
  std::string content_type;
  std::thread listener([&] {
    auto sc = server.client();
    sc.Get(
        "/sessions/" + id + "/events",
        [&](const httplib::Response& r) {
          content_type = r.get_header_value("Content-Type");
          return true;
        },
        [&](const char* data, std::size_t n) {
          live.feed(data, n);
          return live.points.size() < 2;
        });
  });
  std::this_thread::sleep_for(300ms);
  c.Put("/sessions/" + id + "/draft", R"({"draft":"the cat"})", "application/json");
  c.Put("/sessions/" + id + "/draft", R"({"draft":"the cat sat"})", "application/json");
  listener.join();

  CHECK(content_type.find("text/event-stream") == 0);
  REQUIRE(live.points.size() == 2);
  CHECK(live.points[0].first == "2");
  CHECK(live.points[1].first == "3");
  CHECK(live.points[1].second.at("aggregate").at("jaccard") == 1.0);
  const auto timeline = server.service.get_timeline(id);
  CHECK(live.points[0].second.dump() == to_json(timeline[1]).dump());

  // Resuming from Last-Event-ID replays what was missed.
  SseReader resumed;
  auto rc = server.client();
  httplib::Headers headers{{"Last-Event-ID", "0"}};
  rc.Get("/sessions/" + id + "/events", headers, [&](const char* data, std::size_t n) {
    resumed.feed(data, n);
    return resumed.points.size() < 3;
  });
  REQUIRE(resumed.points.size() == 3);
  CHECK(resumed.points[0].first == "1");
  CHECK(resumed.points[0].second.dump() == to_json(timeline[0]).dump());

  SseReader after;
  server.client().Get("/sessions/" + id + "/events?after=2", [&](const char* data, std::size_t n) {
    after.feed(data, n);
    return after.points.empty();
  });
  REQUIRE(after.points.size() == 1);
  CHECK(after.points[0].first == "3");
  CHECK(server.client().Get("/sessions/" + id + "/events?after=-4")->status == 422);
}

TEST_CASE("listen address parsing") {
  CHECK(parse_listen_address("127.0.0.1:8080") == std::pair<std::string, int>{"127.0.0.1", 8080});
  CHECK(parse_listen_address(":0") == std::pair<std::string, int>{"0.0.0.0", 0});
  CHECK_THROWS_AS(parse_listen_address("localhost"), std::invalid_argument);
  CHECK_THROWS_AS(parse_listen_address("host:99999"), std::invalid_argument);
  CHECK_THROWS_AS(parse_listen_address("host:http"), std::invalid_argument);
}
