#include "planfit/catalog.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "planfit/error.h"
#include "planfit/text.h"

namespace planfit {

std::string_view to_string(Intensity i) noexcept { return i == Intensity::Vigorous ? "vigorous" : "moderate"; }

std::string_view to_string(Category c) noexcept { return c == Category::Cardio ? "cardio" : "strength"; }

Intensity parse_intensity(std::string_view token) {
  const auto words = text::word_tokens(token);
  if (!words.empty()) {
    if (words.front() == "moderate") return Intensity::Moderate;
    if (words.front() == "vigorous") return Intensity::Vigorous;
  }
  throw Error(ErrorCode::UnknownIntensity, text::trim(token));
}

Category infer_category(std::string_view muscles) {
  auto parts = text::split_any(muscles, ";,");
  if (parts.empty()) return Category::Strength;
  const std::string last = text::to_lower(parts.back());
  if (last.find("cardio") != std::string::npos || last.find("aerobic") != std::string::npos) {
    return Category::Cardio;
  }
  return Category::Strength;
}

std::string ExerciseEntry::index_text() const {
  std::vector<std::string> parts{name};
  for (const auto& k : alt_keywords) parts.push_back(k);
  parts.push_back(description);
  parts.push_back(muscles);
  return text::collapse_whitespace(text::join(parts, " "));
}

std::string ExerciseEntry::name_description_text() const {
  return text::collapse_whitespace(name + " " + description);
}

bool row_id_less(std::string_view a, std::string_view b) {
  long long x = 0;
  long long y = 0;
  auto ra = std::from_chars(a.data(), a.data() + a.size(), x);
  auto rb = std::from_chars(b.data(), b.data() + b.size(), y);
  bool a_num = ra.ec == std::errc{} && ra.ptr == a.data() + a.size() && !a.empty();
  bool b_num = rb.ec == std::errc{} && rb.ptr == b.data() + b.size() && !b.empty();
  if (a_num && b_num && x != y) return x < y;
  return a < b;
}

Catalog::Catalog(std::vector<ExerciseEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!by_id_.emplace(entries_[i].row_id, i).second) {
      throw Error(ErrorCode::DuplicateRowId, entries_[i].row_id);
    }
  }
}

const ExerciseEntry* Catalog::find(std::string_view row_id) const {
  auto it = by_id_.find(std::string(row_id));
  return it == by_id_.end() ? nullptr : &entries_[it->second];
}

const ExerciseEntry& Catalog::at(std::string_view row_id) const {
  if (const auto* e = find(row_id)) return *e;
  throw Error(ErrorCode::UnknownExercise, std::string(row_id));
}

const ExerciseEntry* Catalog::find_by_name(std::string_view name) const {
  const std::string wanted = text::collapse_whitespace(text::trim(name));
  for (const auto& e : entries_) {
    if (text::iequals(e.name, wanted)) return &e;
  }
  for (const auto& e : entries_) {
    for (const auto& k : e.alt_keywords) {
      if (text::iequals(k, wanted)) return &e;
    }
  }
  return nullptr;
}

namespace {

bool token_match(const std::string& a, const std::string& b) {
  if (a == b) return true;
  if (a.size() + 1 == b.size() && b.back() == 's' && b.compare(0, a.size(), a) == 0) return true;
  if (b.size() + 1 == a.size() && a.back() == 's' && a.compare(0, b.size(), b) == 0) return true;
  return false;
}

}  // namespace

std::vector<const ExerciseEntry*> Catalog::mentioned_in(std::string_view message) const {
  struct Phrase {
    std::vector<std::string> tokens;
    std::size_t entry;
    bool is_name;
  };
  std::vector<Phrase> phrases;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    phrases.push_back({text::word_tokens(entries_[i].name), i, true});
    for (const auto& k : entries_[i].alt_keywords) phrases.push_back({text::word_tokens(k), i, false});
  }

  const auto words = text::word_tokens(message);
  std::vector<const ExerciseEntry*> out;
  std::size_t pos = 0;
  while (pos < words.size()) {
    const Phrase* best = nullptr;
    for (const auto& p : phrases) {
      if (p.tokens.empty() || pos + p.tokens.size() > words.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < p.tokens.size() && ok; ++k) ok = token_match(p.tokens[k], words[pos + k]);
      if (!ok) continue;
      if (best == nullptr || p.tokens.size() > best->tokens.size() ||
          (p.tokens.size() == best->tokens.size() && p.is_name && !best->is_name)) {
        best = &p;
      }
    }
    if (best == nullptr) {
      ++pos;
      continue;
    }
    const ExerciseEntry* e = &entries_[best->entry];
    bool seen = false;
    for (const auto* o : out) seen = seen || o == e;
    if (!seen) out.push_back(e);
    pos += best->tokens.size();
  }
  return out;
}

std::vector<CsvRecord> read_csv(std::istream& in) {
  std::vector<CsvRecord> records;
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (content.size() >= 3 && static_cast<unsigned char>(content[0]) == 0xEF &&
      static_cast<unsigned char>(content[1]) == 0xBB && static_cast<unsigned char>(content[2]) == 0xBF) {
    content.erase(0, 3);
  }

  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = content.size();
  while (i < n) {
    CsvRecord rec;
    rec.line = line;
    std::string field;
    bool record_done = false;
    while (!record_done) {
      field.clear();
      if (i < n && content[i] == '"') {
        ++i;
        while (true) {
          if (i >= n) throw Error(ErrorCode::MalformedRow, std::to_string(rec.line), "unterminated quote");
          char c = content[i];
          if (c == '"') {
            if (i + 1 < n && content[i + 1] == '"') {
              field += '"';
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (c == '\n') ++line;
          field += c;
          ++i;
        }
        // Anything between the closing quote and the delimiter is tolerated as-is.
        while (i < n && content[i] != ',' && content[i] != '\n' && content[i] != '\r') field += content[i++];
      } else {
        while (i < n && content[i] != ',' && content[i] != '\n' && content[i] != '\r') field += content[i++];
      }
      rec.fields.push_back(field);
      if (i >= n) {
        record_done = true;
      } else if (content[i] == ',') {
        ++i;
      } else {
        if (content[i] == '\r') ++i;
        if (i < n && content[i] == '\n') ++i;
        ++line;
        record_done = true;
      }
    }
    bool blank = rec.fields.size() == 1 && text::trim(rec.fields[0]).empty();
    if (!blank) records.push_back(std::move(rec));
  }
  return records;
}

Catalog load_catalog(std::istream& csv) {
  static const std::vector<std::string> kHeader = {"row_id", "name", "alt_keywords", "intensity", "description",
                                                   "muscles"};
  auto records = read_csv(csv);
  if (records.empty()) throw Error(ErrorCode::MalformedRow, "1", "missing header row");
  const auto& header = records.front();
  if (header.fields.size() != kHeader.size()) {
    throw Error(ErrorCode::MalformedRow, std::to_string(header.line), "unexpected header");
  }
  for (std::size_t k = 0; k < kHeader.size(); ++k) {
    if (text::to_lower(text::trim(header.fields[k])) != kHeader[k]) {
      throw Error(ErrorCode::MalformedRow, std::to_string(header.line), "unexpected header column " + header.fields[k]);
    }
  }

  std::vector<ExerciseEntry> entries;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::string line = std::to_string(rec.line);
    if (rec.fields.size() != kHeader.size()) {
      throw Error(ErrorCode::MalformedRow, line,
                  "expected 6 columns, got " + std::to_string(rec.fields.size()));
    }
    ExerciseEntry e;
    e.row_id = text::trim(rec.fields[0]);
    e.name = text::collapse_whitespace(rec.fields[1]);
    if (e.row_id.empty()) throw Error(ErrorCode::MalformedRow, line, "empty row_id");
    if (e.name.empty()) throw Error(ErrorCode::MalformedRow, line, "empty name");
    e.alt_keywords = text::split_any(rec.fields[2], ";");
    e.intensity = parse_intensity(rec.fields[3]);
    auto open = rec.fields[3].find('(');
    auto close = rec.fields[3].rfind(')');
    if (open != std::string::npos && close != std::string::npos && close > open) {
      e.intensity_note = text::trim(std::string_view(rec.fields[3]).substr(open + 1, close - open - 1));
    }
    e.description = text::collapse_whitespace(rec.fields[4]);
    e.muscles = text::collapse_whitespace(rec.fields[5]);
    if (e.muscles.empty()) throw Error(ErrorCode::MalformedRow, line, "empty muscles");
    e.category = infer_category(e.muscles);
    entries.push_back(std::move(e));
  }
  return Catalog(std::move(entries));
}

Catalog load_catalog_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, path, "cannot open catalog");
  return load_catalog(in);
}

Json to_json(const ExerciseEntry& e) {
  return Json{{"row_id", e.row_id},
              {"name", e.name},
              {"alt_keywords", e.alt_keywords},
              {"intensity", std::string(to_string(e.intensity))},
              {"intensity_note", e.intensity_note},
              {"description", e.description},
              {"muscles", e.muscles},
              {"category", std::string(to_string(e.category))}};
}

}  // namespace planfit
