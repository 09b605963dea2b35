#ifndef BS_ERROR_HPP_
#define BS_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bs {

  // Base class for every error raised by the library. The CLI maps these to
  // exit code 1.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Input text does not match the word grammar.
  class ParseError : public Error {
   public:
    ParseError(std::string const& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), _pos(pos) {}

    [[nodiscard]] std::size_t position() const noexcept {
      return _pos;
    }

   private:
    std::size_t _pos;
  };

  // An intermediate exponent (or word length) grew past the configured cap.
  class LimitExceeded : public Error {
   public:
    using Error::Error;
  };

  // A documented precondition of an operation does not hold.
  class DomainError : public Error {
   public:
    using Error::Error;
  };

  // Resource caps shared by every normalization routine.
  struct Limits {
    // Maximum bit length of any exponent produced while normalizing.
    std::size_t max_bits = 1'000'000;
    // Maximum number of letters a word may expand to (powers of long words,
    // t-syllables with huge exponents).
    std::size_t max_letters = 10'000'000;
  };

}  // namespace bs

#endif  // BS_ERROR_HPP_
