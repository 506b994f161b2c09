#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <semaphore>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace adoption::embed {

using Vector = std::vector<double>;

class ProviderUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public ProviderUnavailable {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got);
};

enum class ProviderKind { kRemote, kFallback };

struct Health {
  bool healthy = false;
  std::chrono::milliseconds latency{0};
  std::string detail;
};

/// Source of fixed-dimension text vectors. Implementations must accept
/// concurrent embed() calls.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  /// Unit-length vector of size dimension(), or all zeros when the text has
  /// no content.
  virtual Vector embed(std::string_view text) const = 0;
  virtual std::size_t dimension() const = 0;
  virtual ProviderKind kind() const = 0;
  virtual Health healthcheck() const = 0;
};

/// Cosine of two equal-length vectors; 0.0 if either has zero norm.
double cosine(std::span<const double> a, std::span<const double> b);

/// Scales v to unit L2 norm in place; leaves a zero vector untouched.
void l2_normalize(Vector& v);

/// Offline provider: hashed unigram term frequencies, L2-normalized.
/// Each token (as produced by text::tokenize) is hashed with 64-bit FNV-1a,
/// mixed with a fixed multiplicative constant and mapped to one of
/// dimension() buckets.
class HashingProvider final : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDefaultDimension = 256;
  static constexpr std::uint64_t kMultiplier = 0x9E3779B97F4A7C15ULL;

  explicit HashingProvider(std::size_t dimension = kDefaultDimension);

  Vector embed(std::string_view text) const override;
  std::size_t dimension() const override { return dimension_; }
  ProviderKind kind() const override { return ProviderKind::kFallback; }
  Health healthcheck() const override { return {true, std::chrono::milliseconds(0), "local"}; }

  std::size_t bucket(std::string_view token) const;

 private:
  std::size_t dimension_;
};

struct RemoteConfig {
  std::string endpoint;  // http://host[:port]/path
  std::size_t dimension = 768;
  std::chrono::milliseconds timeout{5000};
  std::size_t max_in_flight = 8;
};

/// Client for an embedding service speaking
///   POST endpoint  {"text": "..."}  ->  200 {"vector": [...]}
/// Requests beyond max_in_flight queue until a slot frees up.
class RemoteProvider final : public EmbeddingProvider {
 public:
  explicit RemoteProvider(RemoteConfig config);
  ~RemoteProvider() override;

  Vector embed(std::string_view text) const override;
  std::size_t dimension() const override { return config_.dimension; }
  ProviderKind kind() const override { return ProviderKind::kRemote; }
  Health healthcheck() const override;

  const RemoteConfig& config() const { return config_; }

 private:
  RemoteConfig config_;
  std::string scheme_host_port_;
  std::string path_;
  mutable std::counting_semaphore<> slots_;
};

/// LRU cache in front of another provider. Returns exactly what the inner
/// provider returned for the same text.
class CachingProvider final : public EmbeddingProvider {
 public:
  CachingProvider(std::shared_ptr<const EmbeddingProvider> inner, std::size_t capacity);

  Vector embed(std::string_view text) const override;
  std::size_t dimension() const override { return inner_->dimension(); }
  ProviderKind kind() const override { return inner_->kind(); }
  Health healthcheck() const override { return inner_->healthcheck(); }

  std::size_t hits() const;
  std::size_t size() const;

 private:
  std::shared_ptr<const EmbeddingProvider> inner_;
  std::size_t capacity_;
  mutable std::mutex mu_;
  mutable std::list<std::pair<std::string, Vector>> order_;
  mutable std::unordered_map<std::string, std::list<std::pair<std::string, Vector>>::iterator> map_;
  mutable std::size_t hits_ = 0;
};

}  // namespace adoption::embed
