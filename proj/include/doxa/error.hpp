#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace doxa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in formula text. `offset` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset,
             std::vector<std::string> expected = {})
      : Error(message + " at offset " + std::to_string(offset)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// A model-level precondition failed: unknown point, agent or atom, a
/// relation that is not an equivalence, an improper input, and so on.
/// `witness` names the offending ids when there are any.
class ModelError : public Error {
 public:
  explicit ModelError(const std::string& message,
                      std::vector<std::string> witness = {})
      : Error(message), witness_(std::move(witness)) {}

  const std::vector<std::string>& witness() const { return witness_; }

 private:
  std::vector<std::string> witness_;
};

/// Malformed model file: bad JSON, missing fields, dangling references.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace doxa
