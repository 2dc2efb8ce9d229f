#include "coordscope/text.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace coordscope {

namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }
bool is_ascii_alnum(unsigned char c) { return c < 0x80 && std::isalnum(c) != 0; }
bool is_ascii_punct(unsigned char c) { return c < 0x80 && std::ispunct(c) != 0; }

// Word characters for entity extraction: ASCII alnum, '_' and any UTF-8 byte.
bool is_word_byte(unsigned char c) { return is_ascii_alnum(c) || c == '_' || c >= 0x80; }

std::vector<std::string> extract_prefixed(std::string_view text, char prefix, bool ascii_only) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != prefix) continue;
    // The marker must start a token: "a#b" is not a hashtag.
    if (i > 0 && is_word_byte(static_cast<unsigned char>(text[i - 1]))) continue;
    std::size_t j = i + 1;
    while (j < text.size()) {
      const auto c = static_cast<unsigned char>(text[j]);
      if (ascii_only ? !(is_ascii_alnum(c) || c == '_') : !is_word_byte(c)) break;
      ++j;
    }
    if (j > i + 1) out.emplace_back(text.substr(i, j - i));
    i = j - 1;
  }
  return out;
}

void dedupe_in_place(std::vector<std::string>& v) {
  std::unordered_set<std::string> seen;
  std::vector<std::string> out;
  out.reserve(v.size());
  for (auto& s : v) {
    if (s.empty() || !seen.insert(s).second) continue;
    out.push_back(std::move(s));
  }
  v = std::move(out);
}

}  // namespace

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (static_cast<unsigned char>(c) < 0x80) c = static_cast<char>(std::tolower(c));
  }
  return out;
}

std::string normalize_hashtag(std::string_view raw) {
  while (!raw.empty() && raw.front() == '#') raw.remove_prefix(1);
  std::string out;
  out.reserve(raw.size());
  for (unsigned char c : raw) {
    if (is_ascii_alnum(c) || c == '_') out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::string normalize_mention(std::string_view raw) {
  raw = trim(raw);
  while (!raw.empty() && raw.front() == '@') raw.remove_prefix(1);
  return std::string(raw);
}

std::vector<std::string> extract_hashtags(std::string_view text) {
  auto raw = extract_prefixed(text, '#', false);
  for (auto& t : raw) t = normalize_hashtag(t);
  dedupe_in_place(raw);
  return raw;
}

std::vector<std::string> extract_mentions(std::string_view text) {
  auto raw = extract_prefixed(text, '@', true);
  for (auto& t : raw) t = normalize_mention(t);
  dedupe_in_place(raw);
  return raw;
}

bool is_url_token(std::string_view token) {
  const std::string lower = ascii_lower(token.substr(0, std::min<std::size_t>(token.size(), 8)));
  return lower.rfind("http://", 0) == 0 || lower.rfind("https://", 0) == 0 ||
         lower.rfind("www.", 0) == 0;
}

std::string normalize_term(std::string_view term) {
  std::string out;
  out.reserve(term.size());
  for (unsigned char c : term) {
    if (is_ascii_punct(c) || is_space(c)) continue;
    out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
  }
  return out;
}

std::vector<std::string> content_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) {
      std::string_view tok = text.substr(i, j - i);
      // Leading punctuation such as quotes or brackets does not hide an entity marker.
      std::string_view core = tok;
      while (!core.empty() && core.front() != '#' && core.front() != '@' &&
             is_ascii_punct(static_cast<unsigned char>(core.front()))) {
        core.remove_prefix(1);
      }
      const bool entity = !core.empty() && (core.front() == '#' || core.front() == '@');
      if (!entity && !is_url_token(core)) {
        std::string norm = normalize_term(tok);
        if (!norm.empty()) out.push_back(std::move(norm));
      }
    }
    i = j;
  }
  return out;
}

}  // namespace coordscope
