#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "morphkit/error.hpp"

namespace morphkit {

namespace detail {

constexpr std::array<std::uint32_t, 256> make_crc32_table() {
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int k = 0; k < 8; ++k)
            c = (c & 1) ? (0xEDB88320u ^ (c >> 1)) : (c >> 1);
        table[i] = c;
    }
    return table;
}

inline constexpr auto kCrc32Table = make_crc32_table();

} // namespace detail

inline std::uint32_t crc32(std::string_view data) {
    std::uint32_t c = 0xFFFFFFFFu;
    for (unsigned char b : data)
        c = detail::kCrc32Table[(c ^ b) & 0xFFu] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }

    void u16le(std::uint16_t v) {
        u8(static_cast<std::uint8_t>(v & 0xFF));
        u8(static_cast<std::uint8_t>(v >> 8));
    }

    void u32le(std::uint32_t v) {
        u16le(static_cast<std::uint16_t>(v & 0xFFFF));
        u16le(static_cast<std::uint16_t>(v >> 16));
    }

    void u64le(std::uint64_t v) {
        u32le(static_cast<std::uint32_t>(v & 0xFFFFFFFFu));
        u32le(static_cast<std::uint32_t>(v >> 32));
    }

    void u16be(std::uint16_t v) {
        u8(static_cast<std::uint8_t>(v >> 8));
        u8(static_cast<std::uint8_t>(v & 0xFF));
    }

    void u32be(std::uint32_t v) {
        u16be(static_cast<std::uint16_t>(v >> 16));
        u16be(static_cast<std::uint16_t>(v & 0xFFFF));
    }

    void raw(std::string_view bytes) { buf_.append(bytes); }

    /// Length-prefixed (u32le) byte string.
    void str(std::string_view s) {
        u32le(static_cast<std::uint32_t>(s.size()));
        raw(s);
    }

    const std::string& data() const { return buf_; }
    std::string take() { return std::move(buf_); }
    std::size_t size() const { return buf_.size(); }

private:
    std::string buf_;
};

/// Bounds-checked reader; all failures throw FormatError with the byte
/// offset where the problem was detected.
class ByteReader {
public:
    explicit ByteReader(std::string_view data, std::string label = {})
        : data_(data), label_(std::move(label)) {}

    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(data_[pos_++]);
    }

    std::uint16_t u16le() {
        std::uint16_t lo = u8(), hi = u8();
        return static_cast<std::uint16_t>(lo | (hi << 8));
    }

    std::uint32_t u32le() {
        std::uint32_t lo = u16le(), hi = u16le();
        return lo | (hi << 16);
    }

    std::uint64_t u64le() {
        std::uint64_t lo = u32le(), hi = u32le();
        return lo | (hi << 32);
    }

    std::uint16_t u16be() {
        std::uint16_t hi = u8(), lo = u8();
        return static_cast<std::uint16_t>((hi << 8) | lo);
    }

    std::uint32_t u32be() {
        std::uint32_t hi = u16be(), lo = u16be();
        return (hi << 16) | lo;
    }

    std::string_view raw(std::size_t n) {
        need(n);
        std::string_view out = data_.substr(pos_, n);
        pos_ += n;
        return out;
    }

    std::string_view str() { return raw(u32le()); }

    std::size_t offset() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }
    bool at_end() const { return pos_ == data_.size(); }

    void expect_end() const {
        if (!at_end())
            fail("trailing bytes after end of data");
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw FormatError(label_.empty() ? msg : label_ + ": " + msg, pos_);
    }

private:
    void need(std::size_t n) const {
        if (data_.size() - pos_ < n)
            fail("unexpected end of data");
    }

    std::string_view data_;
    std::string label_;
    std::size_t pos_ = 0;
};

inline std::string be16_bytes(std::uint16_t v) {
    std::string s(2, '\0');
    s[0] = static_cast<char>(v >> 8);
    s[1] = static_cast<char>(v & 0xFF);
    return s;
}

inline std::string be32_bytes(std::uint32_t v) {
    std::string s(4, '\0');
    s[0] = static_cast<char>((v >> 24) & 0xFF);
    s[1] = static_cast<char>((v >> 16) & 0xFF);
    s[2] = static_cast<char>((v >> 8) & 0xFF);
    s[3] = static_cast<char>(v & 0xFF);
    return s;
}

inline std::uint16_t read_be16(std::string_view s, std::size_t pos = 0) {
    if (s.size() < pos + 2)
        throw FormatError("be16 out of range", pos);
    return static_cast<std::uint16_t>((static_cast<unsigned char>(s[pos]) << 8) |
                                      static_cast<unsigned char>(s[pos + 1]));
}

inline std::uint32_t read_be32(std::string_view s, std::size_t pos = 0) {
    if (s.size() < pos + 4)
        throw FormatError("be32 out of range", pos);
    return (static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos])) << 24) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos + 1])) << 16) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos + 2])) << 8) |
           static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos + 3]));
}

} // namespace morphkit
