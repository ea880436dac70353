#pragma once

#include <stdexcept>
#include <string>

namespace kirchhoff {

// Failure categories. The CLI maps these to exit codes; everything else
// surfaces them as exceptions.
enum class Errc {
  EmptyTerm,
  BadExponent,
  NegativeArgument,
  BadDimension,
  MissingEigenvalue,
  RatioNotMonotone,
  BracketNotFound,
  BadParameters,
  GridTooCoarse,
  GridMismatch,
  SingularSystem,
  IterationDiverged,
  GeometryViolated,
  NoDivergenceDetected,
  UnsupportedCase,
  SecondSolutionNotFound,
  ConfigError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace kirchhoff
