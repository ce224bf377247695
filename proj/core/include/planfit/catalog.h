#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "planfit/json.h"

namespace planfit {

enum class Intensity { Moderate, Vigorous };
enum class Category { Cardio, Strength };

std::string_view to_string(Intensity i) noexcept;  // "moderate" / "vigorous"
std::string_view to_string(Category c) noexcept;   // "cardio" / "strength"

/// Accepts "moderate", "vigorous", case-insensitive, with optional trailing
/// detail such as "moderate (6 miles per hour)". Throws UnknownIntensity.
Intensity parse_intensity(std::string_view token);

/// Category from the trailing ';'/',' token of a muscles field: "cardio" (or
/// "aerobic") means cardio, anything else names muscle work and is strength.
Category infer_category(std::string_view muscles);

/// One catalog row.
struct ExerciseEntry {
  std::string row_id;
  std::string name;
  std::vector<std::string> alt_keywords;
  Intensity intensity = Intensity::Moderate;
  std::string intensity_note;  // e.g. "6 miles per hour"; empty when absent
  std::string description;
  std::string muscles;
  Category category = Category::Strength;

  /// name, keywords, description and muscles joined with single spaces.
  std::string index_text() const;
  /// name and description only.
  std::string name_description_text() const;

  friend bool operator==(const ExerciseEntry&, const ExerciseEntry&) = default;
};

/// Orders row ids numerically when both are integers, lexicographically otherwise.
bool row_id_less(std::string_view a, std::string_view b);

/// Immutable, row-id indexed list of exercises in file order.
class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<ExerciseEntry> entries);  // throws DuplicateRowId

  const std::vector<ExerciseEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  const ExerciseEntry* find(std::string_view row_id) const;
  const ExerciseEntry& at(std::string_view row_id) const;  // throws UnknownExercise

  /// Case-insensitive match on name, then on alternative keywords.
  const ExerciseEntry* find_by_name(std::string_view name) const;

  /// Entries whose name (or a multi-word keyword) occurs as whole words in
  /// `text`, in order of first mention. Longer names win over their substrings.
  std::vector<const ExerciseEntry*> mentioned_in(std::string_view text) const;

 private:
  std::vector<ExerciseEntry> entries_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

/// RFC-4180 CSV with header row_id,name,alt_keywords,intensity,description,muscles.
/// Throws MalformedRow(line), DuplicateRowId(id), UnknownIntensity(token).
Catalog load_catalog(std::istream& csv);
Catalog load_catalog_file(const std::string& path);

/// Minimal RFC-4180 record reader; exposed for the CSV tests.
struct CsvRecord {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};
std::vector<CsvRecord> read_csv(std::istream& in);

Json to_json(const ExerciseEntry& entry);

}  // namespace planfit
