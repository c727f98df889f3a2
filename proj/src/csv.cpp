#include "bibgender/csv.hpp"

#include <cstdio>

#include "bibgender/errors.hpp"

namespace bibgender::csv {

std::vector<Row> parse(std::string_view text, bool skip_hash_comments) {
    std::vector<Row> rows;
    std::size_t i = 0;
    std::size_t line = 1;
    const std::size_t n = text.size();
    while (i < n) {
        if (text[i] == '\n') { ++line; ++i; continue; }
        if (text[i] == '\r') { ++i; continue; }
        if (skip_hash_comments && text[i] == '#') {
            while (i < n && text[i] != '\n') ++i;
            continue;
        }
        Row row;
        row.line = line;
        std::string field;
        bool any_content = false;
        while (i < n) {
            char c = text[i];
            if (c == '"') {
                any_content = true;
                ++i;
                bool closed = false;
                while (i < n) {
                    if (text[i] == '"') {
                        if (i + 1 < n && text[i + 1] == '"') {
                            field.push_back('"');
                            i += 2;
                        } else {
                            ++i;
                            closed = true;
                            break;
                        }
                    } else {
                        if (text[i] == '\n') ++line;
                        field.push_back(text[i]);
                        ++i;
                    }
                }
                if (!closed) throw ParseError(row.line, "unterminated quoted field");
                continue;
            }
            if (c == ',') {
                row.fields.push_back(std::move(field));
                field.clear();
                any_content = true;
                ++i;
                continue;
            }
            if (c == '\n' || c == '\r') break;
            field.push_back(c);
            any_content = true;
            ++i;
        }
        row.fields.push_back(std::move(field));
        if (any_content) rows.push_back(std::move(row));
        // consume the record terminator
        while (i < n && text[i] == '\r') ++i;
        if (i < n && text[i] == '\n') { ++line; ++i; }
    }
    return rows;
}

std::string escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void append_row(std::string& out, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out.push_back(',');
        out.append(escape(fields[i]));
    }
    out.push_back('\n');
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace bibgender::csv
