#ifndef QFANO_ERRORS_HPP
#define QFANO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qfano {

// Base class for all toolkit errors so callers can catch one type at the CLI
// boundary and map it to an exit code.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input (polynomial grammar, JSON files, CLI values).
class input_error : public error {
 public:
  explicit input_error(const std::string& what) : error(what) {}
};

// Syntax or binding failure while parsing a polynomial expression.
// `position` is a 0-based byte offset into the source string.
class parse_error : public input_error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : input_error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Operands belong to different rings or different fields.
class ring_mismatch : public error {
 public:
  explicit ring_mismatch(const std::string& what) : error(what) {}
};

// A documented precondition does not hold (division by zero, wrong degree,
// point not on the variety, characteristic too small, ...).
class precondition_error : public error {
 public:
  explicit precondition_error(const std::string& what) : error(what) {}
};

}  // namespace qfano

#endif
