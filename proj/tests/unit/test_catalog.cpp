#include <doctest.h>

#include <sstream>

#include "planfit/catalog.h"
#include "planfit/error.h"
#include "test_support.h"

using namespace planfit;

namespace {

constexpr const char* kHeader = "row_id,name,alt_keywords,intensity,description,muscles\n";

ErrorCode load_error(const std::string& csv) {
  std::istringstream in(csv);
  try {
    load_catalog(in);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("csv reader handles quotes, embedded commas and newlines") {
    std::istringstream in("a,\"b,c\",\"say \"\"hi\"\"\"\n1,\"two\nlines\",3\n");
    const auto records = read_csv(in);
    REQUIRE(records.size() == 2);
    CHECK(records[0].fields == std::vector<std::string>{"a", "b,c", "say \"hi\""});
    CHECK(records[1].line == 2);
    CHECK(records[1].fields[1] == "two\nlines");
  }

  TEST_CASE("intensity parsing") {
    CHECK(parse_intensity("moderate (6 miles per hour)") == Intensity::Moderate);
    CHECK(parse_intensity("Vigorous") == Intensity::Vigorous);
    CHECK_THROWS_AS(parse_intensity("light"), Error);
  }

  TEST_CASE("category from the muscles field") {
    CHECK(infer_category("Lower extremity muscles including quads, hamstrings, glutes, calves; cardio") ==
          Category::Cardio);
    CHECK(infer_category("Quads, glutes; strength") == Category::Strength);
    CHECK(infer_category("Quads, glutes") == Category::Strength);
  }

  TEST_CASE("the bundled catalog") {
    const auto& c = *testing::shared_catalog();
    CHECK(c.size() == 112);
    const auto& running = c.at("1");
    CHECK(running.name == "Running");
    CHECK(running.intensity == Intensity::Moderate);
    CHECK(running.intensity_note == "6 miles per hour");
    CHECK(running.category == Category::Cardio);
    CHECK(running.alt_keywords ==
          std::vector<std::string>{"jogging", "running", "cross country running", "10k training"});
    int cardio = 0, strength = 0;
    for (const auto& e : c.entries()) (e.category == Category::Cardio ? cardio : strength)++;
    CHECK(cardio > 0);
    CHECK(strength > 0);
  }

  TEST_CASE("load errors carry the offending detail") {
    CHECK(load_error(std::string(kHeader) + "1,Run,,moderate,desc\n") == ErrorCode::MalformedRow);
    CHECK(load_error(std::string(kHeader) + "1,Run,,moderate,d,legs; cardio\n1,Walk,,moderate,d,legs; cardio\n") ==
          ErrorCode::DuplicateRowId);
    CHECK(load_error(std::string(kHeader) + "1,Run,,light,d,legs; cardio\n") == ErrorCode::UnknownIntensity);
  }

  TEST_CASE("lookup") {
    const auto& c = *testing::shared_catalog();
    CHECK(c.find("9999") == nullptr);
    CHECK_THROWS_AS(c.at("9999"), Error);
    REQUIRE(c.find_by_name("running") != nullptr);
    CHECK(c.find_by_name("jogging")->name == "Running");
    CHECK(c.find_by_name("no such thing") == nullptr);
  }

  TEST_CASE("mentions prefer longer names") {
    const auto& c = *testing::shared_catalog();
    auto hits = c.mentioned_in("I'd like Aqua Jogging and Push-Ups");
    REQUIRE(hits.size() == 2);
    CHECK(hits[0]->name == "Aqua Jogging");
    CHECK(hits[1]->name == "Push-Ups");
    CHECK(c.mentioned_in("nothing to see here").empty());
  }

  TEST_CASE("row id ordering") {
    CHECK(row_id_less("2", "10"));
    CHECK_FALSE(row_id_less("10", "2"));
    CHECK(row_id_less("a", "b"));
  }

  TEST_CASE("index text variants") {
    const auto& e = testing::shared_catalog()->at("1");
    CHECK(e.index_text().find("jogging") != std::string::npos);
    CHECK(e.index_text().find("cardio") != std::string::npos);
    CHECK(e.name_description_text().find("cardio") == std::string::npos);
  }

  TEST_CASE("json view") {
    const Json j = to_json(testing::shared_catalog()->at("1"));
    CHECK(j["name"] == "Running");
    CHECK(j["category"] == "cardio");
    CHECK(j["intensity"] == "moderate");
  }
}
