#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace coordscope {

std::string_view trim(std::string_view s);
std::string ascii_lower(std::string_view s);

/// Lowercase, drop leading '#', keep only ASCII alphanumerics and '_'.
/// Returns an empty string when nothing survives.
std::string normalize_hashtag(std::string_view raw);

/// Drops leading '@'; ids are otherwise kept verbatim.
std::string normalize_mention(std::string_view raw);

/// '#'-prefixed runs of word characters, normalized, deduplicated, in order.
std::vector<std::string> extract_hashtags(std::string_view text);
/// '@'-prefixed runs of [A-Za-z0-9_], deduplicated, in order.
std::vector<std::string> extract_mentions(std::string_view text);

bool is_url_token(std::string_view token);

/// Whitespace tokens with hashtags, mentions and URLs removed; ASCII
/// punctuation stripped everywhere in the token; ASCII-lowercased; empty
/// results dropped. Non-ASCII bytes are kept as-is.
std::vector<std::string> content_tokens(std::string_view text);

/// Lowercase plus punctuation removal for a single term.
std::string normalize_term(std::string_view term);

}  // namespace coordscope
