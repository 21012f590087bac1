#pragma once

#include <stdexcept>
#include <string>

namespace forge {

// Base type for every error the engine raises deliberately.
// Each subclass carries a stable `code()` string that the CLI and the JSON
// layer surface verbatim, so tests can match on it without parsing prose.
class ForgeError : public std::runtime_error {
public:
  ForgeError(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

#define FORGE_DEFINE_ERROR(NAME)                                   \
  class NAME : public ForgeError {                                 \
  public:                                                          \
    explicit NAME(const std::string& what) : ForgeError(#NAME, what) {} \
  }

// Structural / input errors.
FORGE_DEFINE_ERROR(MalformedInput);
FORGE_DEFINE_ERROR(PeriodicityViolation);
FORGE_DEFINE_ERROR(ZeroProduct);

// Normalization errors.
FORGE_DEFINE_ERROR(OverflowInFold);
FORGE_DEFINE_ERROR(NotSingleExponential);

// Constructor-side degeneracies.
FORGE_DEFINE_ERROR(DegenerateRoots);
FORGE_DEFINE_ERROR(DegenerateOmega);
FORGE_DEFINE_ERROR(BranchDegenerate);
FORGE_DEFINE_ERROR(ConstraintViolated);
FORGE_DEFINE_ERROR(ZeroXi);
FORGE_DEFINE_ERROR(ZeroTarget);
FORGE_DEFINE_ERROR(DenominatorZero);
FORGE_DEFINE_ERROR(NoSolution);

// Sampling errors.
FORGE_DEFINE_ERROR(DegenerateGrid);

#undef FORGE_DEFINE_ERROR

}  // namespace forge
