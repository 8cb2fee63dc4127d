#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace morphkit::utf8 {

struct Decoded {
    char32_t cp;
    std::size_t len;
};

/// Decodes the codepoint starting at `pos`. Invalid sequences are consumed
/// one byte at a time with the byte value as codepoint, so iteration always
/// makes progress on arbitrary input.
inline Decoded decode(std::string_view s, std::size_t pos) {
    auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    unsigned char b0 = byte(pos);
    if (b0 < 0x80)
        return {b0, 1};
    auto cont = [&](std::size_t i) {
        return i < s.size() && (byte(i) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(pos + 1)) {
        char32_t cp = ((b0 & 0x1Fu) << 6) | (byte(pos + 1) & 0x3Fu);
        return {cp, 2};
    }
    if ((b0 & 0xF0) == 0xE0 && cont(pos + 1) && cont(pos + 2)) {
        char32_t cp = ((b0 & 0x0Fu) << 12) | ((byte(pos + 1) & 0x3Fu) << 6) |
                      (byte(pos + 2) & 0x3Fu);
        return {cp, 3};
    }
    if ((b0 & 0xF8) == 0xF0 && cont(pos + 1) && cont(pos + 2) && cont(pos + 3)) {
        char32_t cp = ((b0 & 0x07u) << 18) | ((byte(pos + 1) & 0x3Fu) << 12) |
                      ((byte(pos + 2) & 0x3Fu) << 6) | (byte(pos + 3) & 0x3Fu);
        return {cp, 4};
    }
    return {b0, 1};
}

inline void append(std::string& out, char32_t cp) {
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

/// Lowercasing for ASCII plus the Cyrillic ranges used by Russian and
/// Ukrainian text; everything else passes through unchanged.
inline char32_t to_lower(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z')
        return cp + 0x20;
    if (cp >= 0x410 && cp <= 0x42F) // А..Я
        return cp + 0x20;
    if (cp >= 0x400 && cp <= 0x40F) // Ѐ..Џ (includes Ё, Є, І, Ї)
        return cp + 0x50;
    if (cp >= 0x460 && cp < 0x530 && (cp % 2) == 0) // extended Cyrillic pairs, includes Ґ
        return cp + 1;
    return cp;
}

inline std::string lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        auto [cp, len] = decode(s, i);
        append(out, to_lower(cp));
        i += len;
    }
    return out;
}

/// Number of codepoints.
inline std::size_t length(std::string_view s) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.size(); i += decode(s, i).len)
        ++n;
    return n;
}

/// Byte offset of the n-th codepoint (s.size() if past the end).
inline std::size_t offset_of(std::string_view s, std::size_t n) {
    std::size_t i = 0;
    while (n > 0 && i < s.size()) {
        i += decode(s, i).len;
        --n;
    }
    return i;
}

/// First n codepoints.
inline std::string_view take(std::string_view s, std::size_t n) {
    return s.substr(0, offset_of(s, n));
}

/// Last n codepoints.
inline std::string_view tail(std::string_view s, std::size_t n) {
    std::size_t total = length(s);
    if (n >= total)
        return s;
    return s.substr(offset_of(s, total - n));
}

inline bool single_codepoint(std::string_view s) {
    return !s.empty() && decode(s, 0).len == s.size();
}

} // namespace morphkit::utf8
