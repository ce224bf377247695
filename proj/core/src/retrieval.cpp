#include "planfit/retrieval.h"

#include <algorithm>
#include <set>
#include <string_view>

#include "planfit/error.h"
#include "planfit/text.h"

namespace planfit {

ExerciseIndex::ExerciseIndex(std::shared_ptr<const Catalog> catalog, const RetrievalConfig& config)
    : ExerciseIndex(std::move(catalog), std::shared_ptr<const Embedder>(make_embedder(config)), config.index_fields) {}

ExerciseIndex::ExerciseIndex(std::shared_ptr<const Catalog> catalog, std::shared_ptr<const Embedder> embedder,
                             IndexFields fields)
    : catalog_(std::move(catalog)), embedder_(std::move(embedder)), fields_(fields) {
  if (!catalog_ || !embedder_) throw Error(ErrorCode::IndexNotBuilt, "", "catalog and embedder required");
  vectors_.reserve(catalog_->size());
  for (const auto& e : catalog_->entries()) vectors_.push_back(embedder_->embed(text_for(e)));
}

EmbedderMode ExerciseIndex::mode() const {
  if (!embedder_) throw Error(ErrorCode::IndexNotBuilt, "");
  return embedder_->mode();
}

const Catalog& ExerciseIndex::catalog() const {
  if (!catalog_) throw Error(ErrorCode::IndexNotBuilt, "");
  return *catalog_;
}

const Embedder& ExerciseIndex::embedder() const {
  if (!embedder_) throw Error(ErrorCode::IndexNotBuilt, "");
  return *embedder_;
}

std::string ExerciseIndex::text_for(const ExerciseEntry& entry) const {
  return fields_ == IndexFields::All ? entry.index_text() : entry.name_description_text();
}

std::vector<ScoredExercise> retrieve_top_k(const std::vector<std::string>& query_keywords, const ExerciseIndex& index,
                                           const RetrievalConfig& config) {
  config.validate();
  std::vector<std::string> kept;
  for (const auto& k : query_keywords) {
    auto t = text::trim(k);
    if (!t.empty()) kept.push_back(std::move(t));
  }
  if (kept.empty()) throw Error(ErrorCode::EmptyQuery, "");
  if (!index.built() || index.catalog().empty()) throw Error(ErrorCode::IndexNotBuilt, "", "empty or missing index");
  if (index.mode() != config.embedder_mode) throw Error(ErrorCode::IndexNotBuilt, "", "index built with another embedder");

  const auto query = index.embedder().embed(text::join(kept, " "));
  const auto& entries = index.catalog().entries();
  std::vector<std::pair<std::size_t, double>> scored;
  scored.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    scored.emplace_back(i, cosine_similarity(query, index.vectors()[i]));
  }
  std::sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return row_id_less(entries[a.first].row_id, entries[b.first].row_id);
  });
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(config.k), scored.size());
  std::vector<ScoredExercise> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back({entries[scored[i].first], scored[i].second});
  return out;
}

std::vector<std::string> extract_keywords(const std::vector<std::string>& phrases) {
  static const std::set<std::string, std::less<>> kStop = {
      "a",     "about", "after",  "again", "all",   "also",   "am",    "an",    "and",   "any",   "are",
      "as",    "at",    "be",     "been",  "being", "but",    "by",    "can",   "could", "do",    "does",
      "doing", "don",   "dont",   "for",   "from",  "get",    "go",    "had",   "has",   "have",  "i",
      "if",    "in",    "into",   "is",    "it",    "its",    "just",  "like",  "make",  "me",    "more",
      "my",    "no",    "not",    "of",    "on",    "or",     "other", "our",   "so",    "some",  "such",
      "t",     "than",  "that",   "the",   "their", "them",   "then",  "there", "these", "they",  "this",
      "to",    "too",   "up",     "very",  "wanna", "want",   "was",   "we",    "were",  "what",  "when",
      "which", "while", "who",    "will",  "wish",  "with",   "would", "you",   "your",  "s",     "since",
      "day",   "days",  "want",   "be",    "able",  "lot",    "much",  "way",   "feel",  "using", "use"};
  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen;
  for (const auto& p : phrases) {
    for (auto& w : text::word_tokens(p)) {
      if (w.size() < 2 || kStop.count(w) > 0) continue;
      bool digits = std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; });
      if (digits) continue;
      if (seen.insert(w).second) out.push_back(w);
    }
  }
  return out;
}

}  // namespace planfit
