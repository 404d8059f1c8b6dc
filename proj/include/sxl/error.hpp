#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sxl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lexical or grammatical error, with a byte offset into the input.
struct ParseError : Error {
  ParseError(std::string msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

struct FormulaError : Error {
  using Error::Error;
};

struct SignatureError : Error {
  using Error::Error;
};

struct SequentError : Error {
  using Error::Error;
};

struct EncodeError : Error {
  using Error::Error;
};

struct ResourceLimitError : Error {
  using Error::Error;
};

}  // namespace sxl
