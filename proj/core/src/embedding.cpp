#include "planfit/embedding.h"

#include <cmath>

#include "http_client.h"
#include "planfit/error.h"
#include "planfit/text.h"

namespace planfit {

namespace {

double l2(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

}  // namespace

EmbeddingVector EmbeddingVector::from_values(std::vector<double> values) {
  EmbeddingVector v;
  v.norm = l2(values);
  v.values = std::move(values);
  return v;
}

void RetrievalConfig::validate() const {
  if (k < 1) throw Error(ErrorCode::InvalidConfig, "k", "k must be >= 1");
  if (fallback_dims < 16) throw Error(ErrorCode::InvalidConfig, "fallback_dims", "fallback_dims must be >= 16");
}

HashingEmbedder::HashingEmbedder(int dims) : dims_(dims) {
  if (dims < 16) throw Error(ErrorCode::InvalidConfig, "fallback_dims", "fallback_dims must be >= 16");
}

EmbeddingVector HashingEmbedder::embed(std::string_view input) const {
  const auto tokens = text::word_tokens(input);
  if (tokens.empty()) throw Error(ErrorCode::EmptyText, std::string(input.substr(0, 40)));
  std::vector<double> counts(static_cast<std::size_t>(dims_), 0.0);
  for (const auto& t : tokens) counts[fnv1a64(t) % static_cast<std::uint64_t>(dims_)] += 1.0;
  const double n = l2(counts);
  for (double& c : counts) c /= n;
  return EmbeddingVector::from_values(std::move(counts));
}

RemoteEmbedder::RemoteEmbedder(RemoteEndpoint endpoint) : endpoint_(std::move(endpoint)) {}

EmbeddingVector RemoteEmbedder::embed(std::string_view input) const {
  if (text::trim(input).empty()) throw Error(ErrorCode::EmptyText, "");
  nlohmann::json body = {{"model", endpoint_.model}, {"input", std::string(input)}};
  auto response = detail::post_json(endpoint_.base_url, "/v1/embeddings", endpoint_.api_key, body,
                                    endpoint_.timeout_seconds);
  try {
    auto values = response.at("data").at(0).at("embedding").get<std::vector<double>>();
    if (values.empty()) throw Error(ErrorCode::ProviderUnavailable, "embedding", "empty embedding");
    return EmbeddingVector::from_values(std::move(values));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ProviderUnavailable, "embedding", e.what());
  }
}

std::unique_ptr<Embedder> make_embedder(const RetrievalConfig& config) {
  config.validate();
  if (config.embedder_mode == EmbedderMode::Remote) return std::make_unique<RemoteEmbedder>(config.remote);
  return std::make_unique<HashingEmbedder>(config.fallback_dims);
}

EmbeddingVector embed_text(std::string_view input, const RetrievalConfig& config) {
  if (text::trim(input).empty()) throw Error(ErrorCode::EmptyText, "");
  return make_embedder(config)->embed(input);
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dims() != b.dims()) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(a.dims()) + " vs " + std::to_string(b.dims()));
  }
  if (a.norm <= 0.0 || b.norm <= 0.0) throw Error(ErrorCode::ZeroVector, "");
  double dot = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) dot += a.values[i] * b.values[i];
  double c = dot / (a.norm * b.norm);
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return c;
}

}  // namespace planfit
