#include "bibgender/text.hpp"

#include <cctype>

namespace bibgender::text {

namespace {

// Appends the ASCII base letter(s) of one Latin-1 Supplement or Latin
// Extended-A codepoint. Returns true when the codepoint was handled
// (folded to a letter, or a non-letter in range that should be dropped).
bool append_folded(std::string& out, unsigned cp) {
    if (cp >= 0xC0 && cp <= 0xFF) {
        switch (cp) {
            case 0xC6: case 0xE6: out += "ae"; return true;
            case 0xD7: case 0xF7: return true;  // multiplication / division signs
            case 0xDE: case 0xFE: out += "th"; return true;
            case 0xDF: out += "ss"; return true;
            default: break;
        }
        // clang-format off
        static constexpr char latin1[0x40] = {
            'a','a','a','a','a','a', 0 ,'c','e','e','e','e','i','i','i','i',
            'd','n','o','o','o','o','o', 0 ,'o','u','u','u','u','y', 0 , 0 ,
            'a','a','a','a','a','a', 0 ,'c','e','e','e','e','i','i','i','i',
            'd','n','o','o','o','o','o', 0 ,'o','u','u','u','u','y', 0 ,'y',
        };
        // clang-format on
        char c = latin1[cp - 0xC0];
        if (c == 0) return false;
        out.push_back(c);
        return true;
    }
    if (cp >= 0x100 && cp <= 0x17F) {
        if (cp == 0x132 || cp == 0x133) { out += "ij"; return true; }
        if (cp == 0x152 || cp == 0x153) { out += "oe"; return true; }
        // clang-format off
        static constexpr char latin_ext_a[0x80] = {
            'a','a','a','a','a','a','c','c','c','c','c','c','c','c','d','d',  // 0x100
            'd','d','e','e','e','e','e','e','e','e','e','e','g','g','g','g',  // 0x110
            'g','g','g','g','h','h','h','h','i','i','i','i','i','i','i','i',  // 0x120
            'i','i', 0 , 0 ,'j','j','k','k','k','l','l','l','l','l','l','l',  // 0x130
            'l','l','l','n','n','n','n','n','n','n','n','n','o','o','o','o',  // 0x140
            'o','o', 0 , 0 ,'r','r','r','r','r','r','s','s','s','s','s','s',  // 0x150
            's','s','t','t','t','t','t','t','u','u','u','u','u','u','u','u',  // 0x160
            'u','u','u','u','w','w','y','y','y','z','z','z','z','z','z','s',  // 0x170
        };
        // clang-format on
        char c = latin_ext_a[cp - 0x100];
        if (c == 0) return false;
        out.push_back(c);
        return true;
    }
    return false;
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

}  // namespace

std::string normalize_token(std::string_view token) {
    std::string out;
    out.reserve(token.size());
    std::size_t i = 0;
    while (i < token.size()) {
        unsigned char b = static_cast<unsigned char>(token[i]);
        if (b < 0x80) {
            if (std::isalpha(b)) {
                out.push_back(static_cast<char>(std::tolower(b)));
            } else if (std::isdigit(b)) {
                out.push_back(static_cast<char>(b));
            }
            // ASCII punctuation dropped
            ++i;
            continue;
        }
        // Decode a UTF-8 sequence; foldable letters emit their base form,
        // anything else copies through so distinct scripts stay distinct.
        unsigned cp = 0;
        std::size_t len = 0;
        if ((b & 0xE0) == 0xC0 && i + 1 < token.size()) {
            cp = (b & 0x1Fu) << 6 | (static_cast<unsigned char>(token[i + 1]) & 0x3Fu);
            len = 2;
        } else if ((b & 0xF0) == 0xE0 && i + 2 < token.size()) {
            cp = (b & 0x0Fu) << 12 | (static_cast<unsigned char>(token[i + 1]) & 0x3Fu) << 6 |
                 (static_cast<unsigned char>(token[i + 2]) & 0x3Fu);
            len = 3;
        }
        if (len == 0) {
            out.push_back(token[i]);
            ++i;
            continue;
        }
        if (!append_folded(out, cp)) out.append(token.substr(i, len));
        i += len;
    }
    return out;
}

std::string normalize_full_name(std::string_view name) {
    std::string out;
    std::size_t i = 0;
    while (i < name.size()) {
        while (i < name.size() && is_space(name[i])) ++i;
        std::size_t start = i;
        while (i < name.size() && !is_space(name[i])) ++i;
        if (i == start) break;
        std::string tok = normalize_token(name.substr(start, i - start));
        if (tok.empty()) continue;
        if (!out.empty()) out.push_back(' ');
        out.append(tok);
    }
    return out;
}

std::size_t letter_count(std::string_view normalized) {
    std::size_t n = 0;
    for (unsigned char b : normalized) {
        if (b < 0x80) {
            if (std::isalnum(b)) ++n;
        } else if (b >= 0xC0) {
            ++n;  // UTF-8 lead byte
        }
    }
    return n;
}

std::vector<std::string_view> split_name_tokens(std::string_view name) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < name.size()) {
        while (i < name.size() && (is_space(name[i]) || name[i] == '-')) ++i;
        std::size_t start = i;
        while (i < name.size() && !is_space(name[i]) && name[i] != '-') ++i;
        if (i > start) tokens.push_back(name.substr(start, i - start));
    }
    return tokens;
}

bool looks_like_initial(std::string_view raw_token) {
    if (raw_token.find('.') != std::string_view::npos) return true;
    std::string normalized = normalize_token(raw_token);
    for (unsigned char b : normalized) {
        if (b >= 0x80) return false;  // no initials convention outside Latin scripts
    }
    return letter_count(normalized) < 2;
}

}  // namespace bibgender::text
