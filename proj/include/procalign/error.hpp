#pragma once

#include <stdexcept>
#include <string>

namespace procalign {

/// Base class for every error raised by the library. `kind()` is a stable
/// machine-readable tag (e.g. "MalformedRecord") used by the CLI error line.
class Error : public std::runtime_error {
  public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind))
    {}

    const std::string& kind() const noexcept { return kind_; }

  private:
    std::string kind_;
};

class MalformedRecord : public Error {
  public:
    MalformedRecord(std::size_t line_no, const std::string& what)
        : Error("MalformedRecord", "line " + std::to_string(line_no) + ": " + what),
          line_no_(line_no)
    {}

    std::size_t line_no() const noexcept { return line_no_; }

  private:
    std::size_t line_no_;
};

#define PROCALIGN_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                                   \
      public:                                                                     \
        explicit Name(const std::string& message) : Error(#Name, message) {}      \
    };

PROCALIGN_DEFINE_ERROR(EmptyRecipe)
PROCALIGN_DEFINE_ERROR(IoError)
PROCALIGN_DEFINE_ERROR(EmptyModel)
PROCALIGN_DEFINE_ERROR(NoData)
PROCALIGN_DEFINE_ERROR(MixedDish)
PROCALIGN_DEFINE_ERROR(DegenerateInput)
PROCALIGN_DEFINE_ERROR(NoPairs)
PROCALIGN_DEFINE_ERROR(PathExplosion)
PROCALIGN_DEFINE_ERROR(UnfittedVectorizer)
PROCALIGN_DEFINE_ERROR(MissingSentenceKey)
PROCALIGN_DEFINE_ERROR(LengthMismatch)
PROCALIGN_DEFINE_ERROR(EmptyInput)
PROCALIGN_DEFINE_ERROR(InvalidConfig)
PROCALIGN_DEFINE_ERROR(InvalidArgument)

#undef PROCALIGN_DEFINE_ERROR

}  // namespace procalign
