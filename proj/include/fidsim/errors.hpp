#ifndef FIDSIM_ERRORS_HPP
#define FIDSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fidsim {

// Bad user-supplied value. `field()` names the offending input.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Request exceeds a built-in resource guard (e.g. dense evolution size cap).
class ComputeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File or stream failure.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fidsim

#endif
