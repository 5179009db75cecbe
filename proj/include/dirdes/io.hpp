#pragma once

#include <string>

#include "dirdes/core.hpp"

namespace dirdes::core {

// Thrown by all text parsers; line/col are 1-based.
struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error("line " + std::to_string(line_) + ":" + std::to_string(col_) +
                             ": " + msg),
          line(line_),
          col(col_) {}
};

}  // namespace dirdes::core

namespace dirdes::io {

// Design exchange format: a `design` header line with key=value attributes,
// optional `group:` / `class:` lines, then one block tuple per line.
std::string write_design(const core::LabeledDesign& d);
core::LabeledDesign read_design(const std::string& text);

}  // namespace dirdes::io
