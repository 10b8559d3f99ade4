#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plap {

enum class ErrorCode {
  InvalidExponent,
  RangeError,
  InvalidArgument,
  IntegrationFailure,
  NoEigenvalue,
  BracketFailure,
  InvalidCertificate,
  EpsTooLarge,
  TauTooLarge,
  GlueFailure,
  NoSupersolution,
  SolverFailure,
  NoCertificate,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace plap
