#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace coordscope {

enum class CueCategory {
  encouragement,
  positive_emotion,
  negative_emotion,
  belittling,
  unimportance,
  doubt_equivocal,
  join_invitation,
  joint_activity,
  rhetorical,
};

inline constexpr std::size_t kNumCueCategories = 9;

std::string_view to_string(CueCategory c);
std::optional<CueCategory> parse_cue_category(std::string_view name);

/// Term -> category map. Terms are stored in the same normalized form the
/// tokenizer produces (ASCII-lowercase, punctuation removed), so
/// "ramai-ramai" matches the token "ramairamai".
class Lexicon {
 public:
  /// "term,category" lines; '#' starts a comment. Unknown categories,
  /// duplicate terms (after normalization) and malformed lines are
  /// ParseErrors carrying the line number.
  static Lexicon parse(std::istream& in);
  static Lexicon load(const std::filesystem::path& path);

  /// Throws ArgumentError on duplicates.
  void add(std::string_view term, CueCategory category);

  std::optional<CueCategory> lookup(std::string_view normalized_token) const;
  std::size_t size() const { return entries_.size(); }
  std::array<std::size_t, kNumCueCategories> category_sizes() const;
  const std::map<std::string, CueCategory, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, CueCategory, std::less<>> entries_;
};

std::filesystem::path default_lexicon_path();

}  // namespace coordscope
