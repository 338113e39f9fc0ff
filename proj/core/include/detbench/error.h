#ifndef DETBENCH_ERROR_H_
#define DETBENCH_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace detbench {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input that could not be parsed. `row` is the 1-based line or
// record number in the source, or 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t row)
      : Error(row == 0 ? message : message + " (row " + std::to_string(row) + ")"),
        row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

// A required field or column is missing, or a value is not a known enum.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Cross-record invariants are violated (dangling lineage ids, duplicates).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// A resource dictionary is missing or malformed.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A paraphrase provider failed (timeout, non-zero exit, segment mismatch).
class ProviderError : public Error {
 public:
  using Error::Error;
};

// A detector adapter could not supply scores.
class DetectorError : public Error {
 public:
  using Error::Error;
};

// Scores or thresholds required by an evaluation are missing.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Invalid run configuration or arguments.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace detbench

#endif  // DETBENCH_ERROR_H_
