#pragma once

#include <stdexcept>
#include <string>

namespace simtile {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can tell library diagnostics from programming errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SIMTILE_DEFINE_ERROR(Name)            \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  }

SIMTILE_DEFINE_ERROR(DimensionMismatch);
SIMTILE_DEFINE_ERROR(InvalidArgument);
SIMTILE_DEFINE_ERROR(PreconditionViolation);
SIMTILE_DEFINE_ERROR(NoUniqueFixedPoint);
SIMTILE_DEFINE_ERROR(NotFoundWithinBudget);
SIMTILE_DEFINE_ERROR(InvalidBody);
SIMTILE_DEFINE_ERROR(UntaggedTile);
SIMTILE_DEFINE_ERROR(UntaggedTiling);
SIMTILE_DEFINE_ERROR(EmptyIntersection);
SIMTILE_DEFINE_ERROR(EpsNotFound);
SIMTILE_DEFINE_ERROR(TargetOutsideHull);
SIMTILE_DEFINE_ERROR(StepBudgetExceeded);
SIMTILE_DEFINE_ERROR(EmptySlice);
SIMTILE_DEFINE_ERROR(DegenerateSlice);

#undef SIMTILE_DEFINE_ERROR

// Raised while reading interchange files; carries the offending location.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, const std::string& field, const std::string& what)
      : Error(path + ": field '" + field + "': " + what), path_(path), field_(field) {}

  const std::string& path() const { return path_; }
  const std::string& field() const { return field_; }

 private:
  std::string path_;
  std::string field_;
};

}  // namespace simtile
