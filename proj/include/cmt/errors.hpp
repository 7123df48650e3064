#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cmt {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A word is outside the domain of the notation it was offered to
/// (dom(alpha), dom(nu_N), dom(nu_Q), ...).
class word_domain_error : public error {
 public:
  using error::error;
};

/// Text input could not be parsed; `position` is a 0-based offset into
/// the offending input.
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : error(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

/// A documented precondition of an operation does not hold.
class precondition_error : public error {
 public:
  using error::error;
};

/// The requested result is not reachable within the given budget.
/// Callers may retry with a larger budget.
class budget_error : public error {
 public:
  budget_error(const std::string& what, std::size_t budget_used)
      : error(what + " (budget consumed: " + std::to_string(budget_used) + ")"),
        budget_used(budget_used) {}
  std::size_t budget_used;
};

/// Operation is not supported for the given space/representation
/// combination (e.g. a reverse partition translation without a
/// majorising witness).
class unsupported_error : public error {
 public:
  using error::error;
};

/// Two pieces of name data contradict each other, e.g. a listed lower
/// bound exceeding a listed upper bound for the same quantity.
class inconsistency_error : public error {
 public:
  using error::error;
};

/// Bad session or instance configuration.
class config_error : public error {
 public:
  using error::error;
};

}  // namespace cmt
