#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace f2x {

// Something the caller can fix: malformed input text, bad CSV, mismatched
// variable tables, violated preconditions on user-supplied data.
class data_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parse failure; carries the byte offset of the offending token.
class parse_error : public data_error {
public:
    parse_error(const std::string& what, std::size_t position)
        : data_error(what + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Internal consistency violation (verification of a computed result failed).
// Never a user error; indicates a bug in this library.
class defect_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace f2x
