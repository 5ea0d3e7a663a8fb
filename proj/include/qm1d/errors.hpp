#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qm1d {

enum class ErrorKind {
  configuration,    // degenerate domain, grid inside a wall, box too small
  parameter,        // out-of-range physical parameter
  degenerate_state, // zero-norm state
  shape,            // grid / size mismatch
  space_tag,        // position vs momentum representation mismatch
  unsupported,      // method or configuration not handled
  evanescent,       // no propagating asymptotic channel
  edge_escape,      // probability reached the grid edge
  operator_kind,    // non-Hermitian operator where Hermitian required
  solver            // numerical failure
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

}  // namespace qm1d
