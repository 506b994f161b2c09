#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numeric>
#include <set>

#include "adoption/embedding.hpp"
#include "adoption/text_core.hpp"
#include "oracles.hpp"

using namespace adoption;
using namespace adoption::embed;

namespace {

double norm(const Vector& v) { return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0)); }

// FNV-1a 64, then the golden-ratio multiply, high bits scaled to dim.
std::size_t oracle_bucket(std::string_view token, std::size_t dim) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : token) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  const unsigned __int128 mixed = static_cast<unsigned __int128>(h * 0x9E3779B97F4A7C15ULL) * dim;
  return static_cast<std::size_t>(mixed >> 64);
}

std::string vector_body(std::size_t dim, double fill) {
  nlohmann::json j;
  j["vector"] = std::vector<double>(dim, fill);
  return j.dump();
}

}  // namespace

TEST_CASE("hashing provider basics") {
  const HashingProvider p;
  CHECK(p.dimension() == 256);
  CHECK(p.kind() == ProviderKind::kFallback);
  const Vector empty = p.embed("");
  CHECK(empty.size() == 256);
  CHECK(norm(empty) == 0.0);
  CHECK(norm(p.embed("12 -- ?")) == 0.0);
  CHECK(std::fabs(norm(p.embed("The officer waited.")) - 1.0) < 1e-9);
  CHECK(cosine(p.embed("cat cat"), p.embed("cat")) == doctest::Approx(1.0).epsilon(1e-12));
  const Health h = p.healthcheck();
  CHECK(h.healthy);
  CHECK(h.latency.count() == 0);
}

TEST_CASE("hash buckets are pinned") {
  const HashingProvider p;
  CHECK(p.bucket("cat") == 31);
  CHECK(p.bucket("dog") == 116);
  CHECK(p.bucket("the") == 232);
  CHECK(p.bucket("bob's") == 198);
  oracle::TextGenerator gen(4);
  for (int i = 0; i < 200; ++i) {
    for (const auto& t : text::tokenize(gen.sentence())) CHECK(p.bucket(t) == oracle_bucket(t, 256));
  }
  const HashingProvider small(16);
  CHECK(small.bucket("cat") == oracle_bucket("cat", 16));
}

TEST_CASE("unit norm and determinism on random text") {
  const HashingProvider p;
  oracle::TextGenerator gen(12);
  for (int i = 0; i < 300; ++i) {
    const std::string t = gen.text();
    const Vector v = p.embed(t);
    CHECK(std::fabs(norm(v) - 1.0) < 1e-9);
    CHECK(p.embed(t) == v);
  }
}

TEST_CASE("collision-free disjoint texts are orthogonal") {
  const HashingProvider p;
  const std::vector<std::string> words = {"red",  "green", "blue",  "black", "white", "yellow", "purple", "orange",
                                          "pink", "brown", "grey",  "cyan",  "teal",  "olive",  "navy",   "maroon",
                                          "gold", "silver", "amber", "ivory"};
  // Split words into two texts whose bucket sets do not intersect.
  std::set<std::size_t> used_a, used_b;
  std::string a, b;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::size_t bucket = oracle_bucket(words[i], 256);
    if (i % 2 == 0 && !used_b.contains(bucket)) {
      used_a.insert(bucket);
      a += words[i] + " ";
    } else if (i % 2 == 1 && !used_a.contains(bucket)) {
      used_b.insert(bucket);
      b += words[i] + " ";
    }
  }
  REQUIRE(used_a.size() >= 5);
  REQUIRE(used_b.size() >= 5);
  CHECK(cosine(p.embed(a), p.embed(b)) == 0.0);
}

TEST_CASE("cosine helpers") {
  CHECK(cosine(Vector{1, 0}, Vector{-1, 0}) == -1.0);
  CHECK(cosine(Vector{0, 0}, Vector{1, 0}) == 0.0);
  CHECK(cosine(Vector{3, 4}, Vector{6, 8}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(cosine(Vector{1, 0}, Vector{1, 0, 0}), std::invalid_argument);
  Vector v{3, 4};
  l2_normalize(v);
  CHECK(v == Vector{0.6, 0.8});
}

TEST_CASE("cache never changes results") {
  auto inner = std::make_shared<const HashingProvider>();
  const CachingProvider cached(inner, 8);
  oracle::TextGenerator gen(31);
  std::vector<std::string> texts;
  for (int i = 0; i < 20; ++i) texts.push_back(gen.text());
  for (int round = 0; round < 5; ++round) {
    for (const auto& t : texts) CHECK(cached.embed(t) == inner->embed(t));
  }
  CHECK(cached.size() <= 8);
  CHECK(cached.embed(texts.back()) == inner->embed(texts.back()));
  CHECK(cached.hits() > 0);
  CHECK(cached.kind() == ProviderKind::kFallback);
}

TEST_CASE("remote provider contract") {
  std::atomic<int> calls{0};
  oracle::StubServer stub([&](const httplib::Request& req, httplib::Response& res) {
    ++calls;
    const auto body = nlohmann::json::parse(req.body);
    const std::string text = body.at("text");
    if (text == "fail") {
      res.status = 500;
      res.set_content("{}", "application/json");
    } else if (text == "garbage") {
      res.set_content("not json", "application/json");
    } else if (text == "short") {
      res.set_content(vector_body(3, 1.0), "application/json");
    } else if (text == "missing") {
      res.set_content(R"({"embedding":[1,2]})", "application/json");
    } else if (text == "slow") {
      std::this_thread::sleep_for(std::chrono::milliseconds(600));
      res.set_content(vector_body(4, 1.0), "application/json");
    } else {
      res.set_content(R"({"vector":[3,0,0,4]})", "application/json");
    }
  });
  RemoteConfig config;
  config.endpoint = stub.endpoint();
  config.dimension = 4;
  config.timeout = std::chrono::milliseconds(300);
  const RemoteProvider remote(config);

  CHECK(remote.kind() == ProviderKind::kRemote);
  CHECK(remote.dimension() == 4);
  CHECK(remote.embed("hello") == Vector{0.6, 0.0, 0.0, 0.8});
  CHECK_THROWS_AS(remote.embed("fail"), ProviderUnavailable);
  CHECK_THROWS_AS(remote.embed("garbage"), ProviderUnavailable);
  CHECK_THROWS_AS(remote.embed("missing"), ProviderUnavailable);
  CHECK_THROWS_AS(remote.embed("short"), DimensionMismatch);
  CHECK_THROWS_AS(remote.embed("slow"), ProviderUnavailable);
  const Health h = remote.healthcheck();
  CHECK(h.healthy);
  CHECK(calls.load() >= 7);
}

TEST_CASE("remote provider bounds requests in flight") {
  std::atomic<int> in_flight{0}, peak{0};
  oracle::StubServer stub([&](const httplib::Request&, httplib::Response& res) {
    const int now = ++in_flight;
    int seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    --in_flight;
    res.set_content(R"({"vector":[1,1]})", "application/json");
  });
  RemoteConfig config;
  config.endpoint = stub.endpoint();
  config.dimension = 2;
  config.max_in_flight = 2;
  const RemoteProvider remote(config);
  std::vector<std::thread> threads;
  std::atomic<int> ok{0};
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&] {
      for (int k = 0; k < 3; ++k) {
        if (remote.embed("x").size() == 2) ++ok;
      }
    });
  }
  for (auto& t : threads) t.join();
  CHECK(ok.load() == 24);
  CHECK(peak.load() <= 2);
}

TEST_CASE("unreachable remote") {
  RemoteConfig config;
  config.endpoint = "http://127.0.0.1:1/embed";
  config.timeout = std::chrono::milliseconds(200);
  const RemoteProvider remote(config);
  CHECK_THROWS_AS(remote.embed("hello"), ProviderUnavailable);
  const Health h = remote.healthcheck();
  CHECK_FALSE(h.healthy);
  CHECK(!h.detail.empty());
}

TEST_CASE("endpoint validation") {
  RemoteConfig config;
  config.endpoint = "ftp://host/embed";
  CHECK_THROWS_AS(RemoteProvider{config}, std::invalid_argument);
  config.endpoint = "http://host:8080/embed";
  config.dimension = 0;
  CHECK_THROWS_AS(RemoteProvider{config}, std::invalid_argument);
}
