#pragma once

#include <stdexcept>
#include <string>

namespace virlab {

/// Base of every engine error. `name()` is the short error name printed by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define VIRLAB_DEFINE_ERROR(Type)                                   \
  class Type : public Error {                                       \
   public:                                                          \
    explicit Type(const std::string& what) : Error(#Type, what) {}  \
  }

VIRLAB_DEFINE_ERROR(DomainError);
VIRLAB_DEFINE_ERROR(ExactnessError);
VIRLAB_DEFINE_ERROR(BaseMismatch);
VIRLAB_DEFINE_ERROR(InsufficientOrder);
VIRLAB_DEFINE_ERROR(NotInvertible);
VIRLAB_DEFINE_ERROR(TooShort);
VIRLAB_DEFINE_ERROR(QuadratureFailure);
VIRLAB_DEFINE_ERROR(DegenerateParams);
VIRLAB_DEFINE_ERROR(NoRoot);
VIRLAB_DEFINE_ERROR(ParseError);

#undef VIRLAB_DEFINE_ERROR

}  // namespace virlab
