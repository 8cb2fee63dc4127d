#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace morphkit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed source data (lexicon text, XML, corpus). Carries a 1-based
/// line number when one is known (0 = unknown).
class InputError : public Error {
public:
    explicit InputError(const std::string& what, std::size_t line = 0)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Corrupt or truncated binary data. Carries the byte offset of the failure.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& what, std::size_t offset = 0)
        : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A 16-bit id table overflowed. Exceeding the capacity is a hard error,
/// never a silent truncation.
class CapacityError : public Error {
public:
    using Error::Error;
};

} // namespace morphkit
