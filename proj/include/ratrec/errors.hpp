#ifndef RATREC_ERRORS_HPP
#define RATREC_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ratrec {

// Division by a zero residue. Carries the dividend so callers can report
// which evaluation went bad; the interpolation driver treats this as "bad
// evaluation point, resample".
struct ZeroDivisorError : std::runtime_error {
  explicit ZeroDivisorError(std::uint64_t dividend_)
      : std::runtime_error("division by zero residue"), dividend(dividend_) {}
  std::uint64_t dividend;
};

struct FieldMismatchError : std::invalid_argument {
  FieldMismatchError()
      : std::invalid_argument("arithmetic between elements of different prime fields") {}
};

// A system of equations became singular or inconsistent; signals an unlucky
// anchor/shift choice. The driver resamples and retries.
struct UnluckyEvaluationError : std::runtime_error {
  explicit UnluckyEvaluationError(const std::string& what_)
      : std::runtime_error(what_) {}
};

// Per-prime results disagree on the monomial skeleton; the prime is dropped.
struct UnluckyPrimeError : std::runtime_error {
  explicit UnluckyPrimeError(const std::string& what_)
      : std::runtime_error(what_) {}
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t line_, std::size_t column_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                           std::to_string(column_) + ")"),
        line(line_), column(column_) {}
  std::size_t line;
  std::size_t column;
};

// The coefficient denominator vanishes modulo the current prime; the driver
// advances to the next prime.
struct BadPrimeError : std::runtime_error {
  explicit BadPrimeError(const std::string& what_) : std::runtime_error(what_) {}
};

struct ReconstructionError : std::runtime_error {
  explicit ReconstructionError(const std::string& what_) : std::runtime_error(what_) {}
};

struct ProtocolError : std::runtime_error {
  explicit ProtocolError(const std::string& what_) : std::runtime_error(what_) {}
};

} // namespace ratrec

#endif
