#include "adoption/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <httplib.h>
#include <json.hpp>

#include "adoption/text_core.hpp"

namespace adoption::embed {

DimensionMismatch::DimensionMismatch(std::size_t expected, std::size_t got)
    : ProviderUnavailable("embedding dimension mismatch: expected " + std::to_string(expected) + ", got " +
                          std::to_string(got)) {}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("cosine: vectors differ in length");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

void l2_normalize(Vector& v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  if (sum == 0.0) return;
  const double norm = std::sqrt(sum);
  for (double& x : v) x /= norm;
}

// ---------------------------------------------------------------- fallback

HashingProvider::HashingProvider(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw std::invalid_argument("embedding dimension must be positive");
}

std::size_t HashingProvider::bucket(std::string_view token) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : token) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  const std::uint64_t mixed = h * kMultiplier;
  return static_cast<std::size_t>((static_cast<unsigned __int128>(mixed) * dimension_) >> 64);
}

Vector HashingProvider::embed(std::string_view text) const {
  Vector v(dimension_, 0.0);
  for (const std::string& token : text::tokenize(text)) v[bucket(token)] += 1.0;
  l2_normalize(v);
  return v;
}

// ------------------------------------------------------------------ remote

namespace {

void split_endpoint(const std::string& endpoint, std::string& scheme_host_port, std::string& path) {
  const auto scheme_end = endpoint.find("://");
  // TLS is not compiled into the HTTP client.
  if (scheme_end != std::string::npos && endpoint.compare(0, scheme_end, "http") != 0) {
    throw std::invalid_argument("unsupported endpoint scheme in " + endpoint + " (only http is supported)");
  }
  const auto host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  const auto slash = endpoint.find('/', host_start);
  if (slash == std::string::npos) {
    scheme_host_port = endpoint;
    path = "/";
  } else {
    scheme_host_port = endpoint.substr(0, slash);
    path = endpoint.substr(slash);
  }
  if (scheme_end == std::string::npos) scheme_host_port = "http://" + scheme_host_port;
}

class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<>& sem) : sem_(sem) { sem_.acquire(); }
  ~SlotGuard() { sem_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<>& sem_;
};

}  // namespace

RemoteProvider::RemoteProvider(RemoteConfig config)
    : config_(std::move(config)), slots_(static_cast<std::ptrdiff_t>(std::max<std::size_t>(1, config_.max_in_flight))) {
  if (config_.endpoint.empty()) throw std::invalid_argument("remote embedding endpoint is empty");
  if (config_.dimension == 0) throw std::invalid_argument("embedding dimension must be positive");
  split_endpoint(config_.endpoint, scheme_host_port_, path_);
}

RemoteProvider::~RemoteProvider() = default;

Vector RemoteProvider::embed(std::string_view text) const {
  SlotGuard slot(slots_);

  httplib::Client client(scheme_host_port_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  const nlohmann::json body = {{"text", std::string(text)}};
  const auto res = client.Post(path_, body.dump(), "application/json");
  if (!res) {
    throw ProviderUnavailable("embedding request to " + config_.endpoint + " failed: " +
                              httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw ProviderUnavailable("embedding service returned HTTP " + std::to_string(res->status));
  }

  Vector v;
  try {
    const auto parsed = nlohmann::json::parse(res->body);
    const auto& arr = parsed.at("vector");
    if (!arr.is_array()) throw ProviderUnavailable("embedding response: 'vector' is not an array");
    v.reserve(arr.size());
    for (const auto& x : arr) v.push_back(x.get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw ProviderUnavailable(std::string("malformed embedding response: ") + e.what());
  }
  if (v.size() != config_.dimension) throw DimensionMismatch(config_.dimension, v.size());
  for (double x : v) {
    if (!std::isfinite(x)) throw ProviderUnavailable("embedding response contains a non-finite value");
  }
  l2_normalize(v);
  return v;
}

Health RemoteProvider::healthcheck() const {
  const auto start = std::chrono::steady_clock::now();
  try {
    (void)embed("healthcheck");
  } catch (const ProviderUnavailable& e) {
    return {false, std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start),
            e.what()};
  }
  return {true, std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start),
          config_.endpoint};
}

// ------------------------------------------------------------------- cache

CachingProvider::CachingProvider(std::shared_ptr<const EmbeddingProvider> inner, std::size_t capacity)
    : inner_(std::move(inner)), capacity_(capacity) {
  if (!inner_) throw std::invalid_argument("CachingProvider needs an inner provider");
}

Vector CachingProvider::embed(std::string_view text) const {
  const std::string key(text);
  {
    std::lock_guard lock(mu_);
    if (auto it = map_.find(key); it != map_.end()) {
      order_.splice(order_.begin(), order_, it->second);
      ++hits_;
      return it->second->second;
    }
  }
  Vector v = inner_->embed(text);
  if (capacity_ == 0) return v;
  std::lock_guard lock(mu_);
  if (map_.find(key) == map_.end()) {
    order_.emplace_front(key, v);
    map_[key] = order_.begin();
    if (order_.size() > capacity_) {
      map_.erase(order_.back().first);
      order_.pop_back();
    }
  }
  return v;
}

std::size_t CachingProvider::hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

std::size_t CachingProvider::size() const {
  std::lock_guard lock(mu_);
  return order_.size();
}

}  // namespace adoption::embed
