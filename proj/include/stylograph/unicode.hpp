#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace stylo {

// Minimal UTF-8 layer: decode, encode, validate, and a case-folding table
// covering Latin (incl. Polish), Greek and Cyrillic. Full ICU would be
// overkill for corpora of European novels.

inline constexpr char32_t kInvalidCodepoint = 0xFFFFFFFF;

// Decodes the codepoint starting at pos and advances pos past it.
// Returns kInvalidCodepoint on malformed input (pos advances by one byte).
inline char32_t decode_utf8(std::string_view s, std::size_t& pos) {
    const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    unsigned char b0 = byte(pos);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    auto fail = [&] {
        ++pos;
        return kInvalidCodepoint;
    };
    auto cont = [&](std::size_t i) {
        return i < s.size() && (byte(i) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0) {
        if (!cont(pos + 1)) return fail();
        char32_t cp = (char32_t(b0 & 0x1F) << 6) | (byte(pos + 1) & 0x3F);
        if (cp < 0x80) return fail();  // overlong
        pos += 2;
        return cp;
    }
    if ((b0 & 0xF0) == 0xE0) {
        if (!cont(pos + 1) || !cont(pos + 2)) return fail();
        char32_t cp = (char32_t(b0 & 0x0F) << 12) | (char32_t(byte(pos + 1) & 0x3F) << 6) | (byte(pos + 2) & 0x3F);
        if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) return fail();
        pos += 3;
        return cp;
    }
    if ((b0 & 0xF8) == 0xF0) {
        if (!cont(pos + 1) || !cont(pos + 2) || !cont(pos + 3)) return fail();
        char32_t cp = (char32_t(b0 & 0x07) << 18) | (char32_t(byte(pos + 1) & 0x3F) << 12) |
                      (char32_t(byte(pos + 2) & 0x3F) << 6) | (byte(pos + 3) & 0x3F);
        if (cp < 0x10000 || cp > 0x10FFFF) return fail();
        pos += 4;
        return cp;
    }
    return fail();
}

inline void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline bool valid_utf8(std::string_view s) {
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (decode_utf8(s, pos) == kInvalidCodepoint) return false;
    }
    return true;
}

inline char32_t to_lower(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp < 0xC0) return cp;
    // Latin-1 capitals, skipping the multiplication sign.
    if (cp <= 0xDE) return cp == 0xD7 ? cp : cp + 0x20;
    if (cp < 0x100) return cp;
    // Latin Extended-A: alternating pairs in three runs.
    if (cp <= 0x137) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x14A && cp <= 0x177) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp == 0x178) return 0xFF;
    if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp == 0x17F) return 0x73;  // long s
    // Greek.
    if (cp == 0x386) return 0x3AC;
    if (cp >= 0x388 && cp <= 0x38A) return cp + 0x25;
    if (cp == 0x38C) return 0x3CC;
    if (cp == 0x38E || cp == 0x38F) return cp + 0x3F;
    if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
    // Cyrillic.
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
    return cp;
}

inline bool is_letter(char32_t cp) {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
    if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
    if (cp >= 0x386 && cp <= 0x3FF) return cp != 0x387;  // Greek block sans ano teleia
    if (cp >= 0x400 && cp <= 0x4FF) return true;
    return false;
}

inline bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

inline bool is_space(char32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v' ||
           cp == 0xA0 || cp == 0x2028 || cp == 0x2029 || (cp >= 0x2000 && cp <= 0x200A) || cp == 0x3000;
}

}  // namespace stylo
