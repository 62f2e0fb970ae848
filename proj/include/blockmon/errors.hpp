#pragma once

#include <stdexcept>
#include <string>

namespace blockmon {

// Invalid user input: bad group literal, malformed sequence text,
// elements from mismatched groups, broken cache files.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured resource cap (group order, element size, time budget) was
// exceeded. Callers may retry with a larger cap; this is never silent.
struct cap_exceeded : std::runtime_error {
    explicit cap_exceeded(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace blockmon
