#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bibgender::text {

// Lower-cased, diacritic-stripped copy of one name token. ASCII letters and
// digits are kept, Latin-1 / Latin Extended-A letters fold to their ASCII
// base ("é" -> "e", "ß" -> "ss"), punctuation is dropped. Bytes outside the
// foldable range pass through unchanged so non-Latin names stay distinct.
std::string normalize_token(std::string_view token);

// Whitespace-splits, normalizes each token, rejoins with single spaces.
// Used for author-identity and override-table keys.
std::string normalize_full_name(std::string_view name);

// Letter units in a normalized token: ASCII alphanumerics and UTF-8 lead
// bytes each count one, continuation bytes count zero.
std::size_t letter_count(std::string_view normalized);

// Splits on whitespace and hyphens; compound given names contribute their
// first component as the lookup key.
std::vector<std::string_view> split_name_tokens(std::string_view name);

// Initials-only forms: a token containing a period ("J.", "J.R.") or with
// fewer than two letter units.
bool looks_like_initial(std::string_view raw_token);

}  // namespace bibgender::text
