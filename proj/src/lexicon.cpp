#include "coordscope/lexicon.hpp"

#include <fstream>

#include "coordscope/error.hpp"
#include "coordscope/text.hpp"

namespace coordscope {

namespace {
constexpr std::array<std::string_view, kNumCueCategories> kNames = {
    "encouragement", "positive_emotion", "negative_emotion", "belittling",  "unimportance",
    "doubt_equivocal", "join_invitation", "joint_activity",  "rhetorical",
};
}  // namespace

std::string_view to_string(CueCategory c) { return kNames[static_cast<std::size_t>(c)]; }

std::optional<CueCategory> parse_cue_category(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<CueCategory>(i);
  }
  return std::nullopt;
}

void Lexicon::add(std::string_view term, CueCategory category) {
  std::string key = normalize_term(term);
  if (key.empty()) throw ArgumentError("lexicon term is empty after normalization");
  if (!entries_.emplace(key, category).second) {
    throw ArgumentError("duplicate lexicon term '" + key + "'");
  }
}

Lexicon Lexicon::parse(std::istream& in) {
  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) throw ParseError(line_no, "expected 'term,category'");
    const std::string_view term = trim(body.substr(0, comma));
    const std::string_view cat = trim(body.substr(comma + 1));
    if (term.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError(line_no, "lexicon terms must be single tokens");
    }
    auto category = parse_cue_category(cat);
    if (!category) throw ParseError(line_no, "unknown category '" + std::string(cat) + "'");
    try {
      lex.add(term, *category);
    } catch (const ArgumentError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon " + path.string());
  return parse(in);
}

std::optional<CueCategory> Lexicon::lookup(std::string_view normalized_token) const {
  auto it = entries_.find(normalized_token);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::array<std::size_t, kNumCueCategories> Lexicon::category_sizes() const {
  std::array<std::size_t, kNumCueCategories> sizes{};
  for (const auto& [term, cat] : entries_) ++sizes[static_cast<std::size_t>(cat)];
  return sizes;
}

std::filesystem::path default_lexicon_path() {
  return std::filesystem::path(COORDSCOPE_DATA_DIR) / "lexicon_id.csv";
}

}  // namespace coordscope
