#ifndef CSMINER_COMMON_HPP
#define CSMINER_COMMON_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csminer {

// Malformed input (bad FASTA/CT/Stockholm/TSV/parameter text). line is
// 1-based when known, 0 otherwise.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg, std::size_t line = 0)
      : std::runtime_error(line ? msg + " (line " + std::to_string(line) + ")"
                                : msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace csminer

#endif  // CSMINER_COMMON_HPP
