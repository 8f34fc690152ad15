#pragma once

#include <stdexcept>
#include <string>

namespace conecalc {

  // Violations of a documented precondition or malformed input.  The CLI maps
  // every subclass to exit status 2.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class EmptyWord : public Error {
   public:
    EmptyWord() : Error("the identity has no primitive root") {}
  };

  class UnknownGenerator : public Error {
   public:
    using Error::Error;
  };

  class TooLong : public Error {
   public:
    using Error::Error;
  };

  class InvalidCertificate : public Error {
   public:
    using Error::Error;
  };

  class SkeletonMismatch : public Error {
   public:
    using Error::Error;
  };

  class InvalidWitness : public Error {
   public:
    using Error::Error;
  };

  class BudgetExceeded : public Error {
   public:
    using Error::Error;
  };

  class PreconditionViolated : public Error {
   public:
    using Error::Error;
  };

  class InvalidBracket : public Error {
   public:
    using Error::Error;
  };

  class UnsupportedBase : public Error {
   public:
    using Error::Error;
  };

  class ParseError : public Error {
   public:
    ParseError(std::string const& msg, std::size_t line, std::size_t column)
        : Error(msg + " at line " + std::to_string(line) + ", column "
                + std::to_string(column)),
          message_(msg),
          line_(line),
          column_(column) {}

    // The message without the location suffix.
    std::string const& message() const noexcept {
      return message_;
    }
    std::size_t line() const noexcept {
      return line_;
    }
    std::size_t column() const noexcept {
      return column_;
    }

   private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
  };

}  // namespace conecalc
