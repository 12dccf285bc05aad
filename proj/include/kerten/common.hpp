#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kerten {

/// Raised when a linear-algebra routine fails to converge or a fit degenerates.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what, int mode = -1)
      : std::runtime_error(what), mode_(mode) {}
  /// Tensor mode involved in the failure, or -1 when not applicable.
  int mode() const noexcept { return mode_; }

 private:
  int mode_;
};

/// Raised on malformed input files; carries the offending line when known.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& file, long line, const std::string& what)
      : std::runtime_error(file + (line > 0 ? ":" + std::to_string(line) : "") + ": " + what),
        file_(file),
        line_(line) {}
  const std::string& file() const noexcept { return file_; }
  long line() const noexcept { return line_; }

 private:
  std::string file_;
  long line_;
};

/// Raised by limb normalization when a parent and child joint coincide.
class degenerate_segment_error : public std::runtime_error {
 public:
  degenerate_segment_error(int parent_id, int child_id)
      : std::runtime_error("degenerate segment between joints " + std::to_string(parent_id) +
                           " and " + std::to_string(child_id) + " (zero length)"),
        parent_(parent_id),
        child_(child_id) {}
  int parent_id() const noexcept { return parent_; }
  int child_id() const noexcept { return child_; }

 private:
  int parent_;
  int child_;
};

/// Raised on dataset/protocol violations (overlapping splits, label gaps, ...).
class data_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::uint64_t binom3(std::uint64_t n) { return n * (n - 1) * (n - 2) / 6; }
inline std::uint64_t binom2(std::uint64_t n) { return n * (n - 1) / 2; }

}  // namespace kerten
