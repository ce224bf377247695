#include <doctest.h>

#include <cmath>

#include "planfit/embedding.h"
#include "planfit/error.h"
#include "planfit/retrieval.h"
#include "test_support.h"

using namespace planfit;

TEST_SUITE("retrieval") {
  TEST_CASE("fnv-1a reference values") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
  }

  TEST_CASE("hashing embedder is normalised and deterministic") {
    HashingEmbedder e(64);
    const auto a = e.embed("Running, running and JOGGING!");
    const auto b = e.embed("running running and jogging");
    CHECK(a == b);
    CHECK(a.dims() == 64);
    CHECK(a.norm == doctest::Approx(1.0));
    double sum = 0;
    for (double v : a.values) sum += v * v;
    CHECK(std::sqrt(sum) == doctest::Approx(1.0));
  }

  TEST_CASE("embed_text errors") {
    RetrievalConfig cfg;
    CHECK_THROWS_AS(embed_text("   ", cfg), Error);
    cfg.k = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
  }

  TEST_CASE("cosine similarity") {
    const auto a = EmbeddingVector::from_values({1, 0});
    const auto b = EmbeddingVector::from_values({0, 2});
    const auto c = EmbeddingVector::from_values({3, 0});
    CHECK(cosine_similarity(a, b) == doctest::Approx(0.0));
    CHECK(cosine_similarity(a, c) == doctest::Approx(1.0));
    CHECK_THROWS_AS(cosine_similarity(a, EmbeddingVector::from_values({1, 0, 0})), Error);
    CHECK_THROWS_AS(cosine_similarity(a, EmbeddingVector::from_values({0, 0})), Error);
  }

  TEST_CASE("top-k ranking") {
    const auto index = testing::shared_index();
    RetrievalConfig cfg;
    auto hits = retrieve_top_k({"jogging"}, *index, cfg);
    REQUIRE(hits.size() == 5);
    CHECK(hits.front().entry.name == "Running");
    for (std::size_t i = 1; i < hits.size(); ++i) {
      CHECK(hits[i - 1].score >= hits[i].score);
      if (hits[i - 1].score == hits[i].score) CHECK(row_id_less(hits[i - 1].entry.row_id, hits[i].entry.row_id));
    }
    cfg.k = 1000;
    CHECK(retrieve_top_k({"swim"}, *index, cfg).size() == 112);
  }

  TEST_CASE("ties break by row id") {
    auto catalog = std::make_shared<const Catalog>(std::vector<ExerciseEntry>{
        {"10", "Alpha", {}, Intensity::Moderate, "", "same text", "legs; cardio", Category::Cardio},
        {"2", "Alpha", {}, Intensity::Moderate, "", "same text", "legs; cardio", Category::Cardio}});
    ExerciseIndex index(catalog, RetrievalConfig{});
    RetrievalConfig cfg;
    cfg.k = 2;
    auto hits = retrieve_top_k({"alpha"}, index, cfg);
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].entry.row_id == "2");
    CHECK(hits[1].entry.row_id == "10");
  }

  TEST_CASE("retrieval errors") {
    RetrievalConfig cfg;
    CHECK_THROWS_AS(retrieve_top_k({}, *testing::shared_index(), cfg), Error);
    CHECK_THROWS_AS(retrieve_top_k({"  "}, *testing::shared_index(), cfg), Error);
    ExerciseIndex unbuilt;
    try {
      retrieve_top_k({"run"}, unbuilt, cfg);
      FAIL("expected IndexNotBuilt");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IndexNotBuilt);
    }
  }

  TEST_CASE("index field selection") {
    RetrievalConfig cfg;
    cfg.index_fields = IndexFields::NameDescription;
    ExerciseIndex index(testing::shared_catalog(), cfg);
    const auto& e = testing::shared_catalog()->at("1");
    CHECK(index.text_for(e) == e.name_description_text());
    CHECK(testing::shared_index()->text_for(e) == e.index_text());
  }

  TEST_CASE("keyword extraction") {
    const auto kw = extract_keywords({"I want to lose weight", "Lose weight and swim"});
    CHECK(kw == std::vector<std::string>{"lose", "weight", "swim"});
    CHECK(extract_keywords({"I want to do it"}).empty());
  }
}
