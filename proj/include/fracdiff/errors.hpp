#ifndef FRACDIFF_ERRORS_HPP
#define FRACDIFF_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fracdiff {

/// Base of every error raised by the library. `kind()` is a stable,
/// machine-parsable tag (the CLI prints it as "ERROR <kind>: ...").
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual std::string_view kind() const noexcept = 0;
};

#define FRACDIFF_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                              \
  public:                                                                  \
    using Error::Error;                                                    \
    std::string_view kind() const noexcept override { return #Name; }      \
  }

/// Argument outside a function's natural domain (ln of non-positive, x/0, ...).
FRACDIFF_DEFINE_ERROR(DomainError);
/// Symbolic differentiation hit a node with no derivative rule (abs).
FRACDIFF_DEFINE_ERROR(NotDifferentiable);
/// An extrapolated limit did not stabilise.
FRACDIFF_DEFINE_ERROR(NonConvergence);
/// Caller-supplied parameter out of range.
FRACDIFF_DEFINE_ERROR(InvalidArgument);
/// Truncation order k = 0 for the truncated-exponential family.
FRACDIFF_DEFINE_ERROR(InvalidK);
/// Improper integral at 0 with a non-integrable weight.
FRACDIFF_DEFINE_ERROR(SingularityError);
/// Adaptive quadrature ran out of subdivisions.
FRACDIFF_DEFINE_ERROR(BudgetExceeded);
/// Hypothesis of a theorem does not hold for the given input.
FRACDIFF_DEFINE_ERROR(PreconditionViolation);
/// Witness search found no sign change to bracket.
FRACDIFF_DEFINE_ERROR(NoSignChange);

#undef FRACDIFF_DEFINE_ERROR

class ParseError : public Error {
public:
  ParseError(std::size_t position, const std::string& message)
    : Error("at offset " + std::to_string(position) + ": " + message),
      position_(position), message_(message)
  {}

  std::string_view kind() const noexcept override { return "ParseError"; }
  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }

private:
  std::size_t position_;
  std::string message_;
};

} // namespace fracdiff

#endif // FRACDIFF_ERRORS_HPP
