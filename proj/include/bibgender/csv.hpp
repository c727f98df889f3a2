#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bibgender::csv {

struct Row {
    std::vector<std::string> fields;
    std::size_t line = 0;  // 1-based line the record started on
};

// RFC-4180-style parse: quoted fields, doubled quotes, CR/LF line ends,
// embedded newlines inside quotes. With skip_hash_comments, records whose
// first character is '#' are dropped. Throws ParseError on an unterminated
// quote. Blank records are skipped.
std::vector<Row> parse(std::string_view text, bool skip_hash_comments = false);

std::string escape(std::string_view field);
void append_row(std::string& out, std::span<const std::string> fields);

// Stable shortest-ish formatting used by every CSV emitter (%.10g).
std::string format_double(double v);

}  // namespace bibgender::csv
