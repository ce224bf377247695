#pragma once

#include <memory>
#include <string>
#include <vector>

#include "planfit/catalog.h"
#include "planfit/embedding.h"

namespace planfit {

struct ScoredExercise {
  ExerciseEntry entry;
  double score = 0.0;
};

/// Embeddings of every catalog entry, built once; immutable afterwards and
/// safe to share between threads.
class ExerciseIndex {
 public:
  ExerciseIndex() = default;  // not built
  ExerciseIndex(std::shared_ptr<const Catalog> catalog, const RetrievalConfig& config);
  ExerciseIndex(std::shared_ptr<const Catalog> catalog, std::shared_ptr<const Embedder> embedder,
                IndexFields fields = IndexFields::All);

  bool built() const noexcept { return embedder_ != nullptr; }
  EmbedderMode mode() const;
  const Catalog& catalog() const;
  const std::vector<EmbeddingVector>& vectors() const noexcept { return vectors_; }
  const Embedder& embedder() const;

  /// Index text for an entry under this index's field selection.
  std::string text_for(const ExerciseEntry& entry) const;

 private:
  std::shared_ptr<const Catalog> catalog_;
  std::shared_ptr<const Embedder> embedder_;
  IndexFields fields_ = IndexFields::All;
  std::vector<EmbeddingVector> vectors_;
};

/// Top min(k, n) entries by cosine similarity to the space-joined keywords,
/// descending score, ties by ascending row id. Throws EmptyQuery or IndexNotBuilt.
std::vector<ScoredExercise> retrieve_top_k(const std::vector<std::string>& query_keywords, const ExerciseIndex& index,
                                           const RetrievalConfig& config);

/// Exercise-related keywords from free text: word tokens minus stop words,
/// de-duplicated in order of appearance.
std::vector<std::string> extract_keywords(const std::vector<std::string>& phrases);

}  // namespace planfit
