#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace planfit {

/// Dense vector with its cached L2 norm.
struct EmbeddingVector {
  std::vector<double> values;
  double norm = 0.0;

  static EmbeddingVector from_values(std::vector<double> values);
  std::size_t dims() const noexcept { return values.size(); }

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;
};

enum class EmbedderMode { Fallback, Remote };

/// Which catalog fields make up an entry's index text.
enum class IndexFields { All, NameDescription };

struct RemoteEndpoint {
  std::string base_url;  // e.g. "https://api.openai.com"
  std::string model = "text-embedding-ada-002";
  std::string api_key;
  int timeout_seconds = 30;
};

struct RetrievalConfig {
  int k = 5;
  EmbedderMode embedder_mode = EmbedderMode::Fallback;
  int fallback_dims = 256;
  IndexFields index_fields = IndexFields::All;
  RemoteEndpoint remote;

  void validate() const;  // k >= 1, fallback_dims >= 16
};

/// 64-bit FNV-1a. The fallback embedder buckets tokens with
/// `fnv1a64(token) % fallback_dims`, so vectors are identical on every platform.
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 14695981039346656037ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual EmbeddingVector embed(std::string_view text) const = 0;
  virtual EmbedderMode mode() const noexcept = 0;
};

/// Hashed bag-of-words: lowercase, split on non-alphanumerics, count tokens per
/// FNV-1a bucket, L2-normalise.
class HashingEmbedder final : public Embedder {
 public:
  explicit HashingEmbedder(int dims = 256);
  EmbeddingVector embed(std::string_view text) const override;
  EmbedderMode mode() const noexcept override { return EmbedderMode::Fallback; }
  int dims() const noexcept { return dims_; }

 private:
  int dims_;
};

/// Calls an OpenAI-style `POST /v1/embeddings` endpoint.
class RemoteEmbedder final : public Embedder {
 public:
  explicit RemoteEmbedder(RemoteEndpoint endpoint);
  EmbeddingVector embed(std::string_view text) const override;
  EmbedderMode mode() const noexcept override { return EmbedderMode::Remote; }

 private:
  RemoteEndpoint endpoint_;
};

std::unique_ptr<Embedder> make_embedder(const RetrievalConfig& config);

/// Throws EmptyText for blank input; ProviderUnavailable when remote fails.
EmbeddingVector embed_text(std::string_view text, const RetrievalConfig& config);

/// dot(a,b) / (|a| |b|). Throws DimensionMismatch or ZeroVector.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

}  // namespace planfit
