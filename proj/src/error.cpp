#include "plap/error.hpp"

namespace plap {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidExponent: return "invalid-exponent";
    case ErrorCode::RangeError: return "range-error";
    case ErrorCode::InvalidArgument: return "invalid";
    case ErrorCode::IntegrationFailure: return "integration-failure";
    case ErrorCode::NoEigenvalue: return "no-eigenvalue";
    case ErrorCode::BracketFailure: return "bracket-failure";
    case ErrorCode::InvalidCertificate: return "invalid-certificate";
    case ErrorCode::EpsTooLarge: return "eps-too-large";
    case ErrorCode::TauTooLarge: return "tau-too-large";
    case ErrorCode::GlueFailure: return "glue-failure";
    case ErrorCode::NoSupersolution: return "no-supersolution";
    case ErrorCode::SolverFailure: return "solver-failure";
    case ErrorCode::NoCertificate: return "no-certificate";
    case ErrorCode::ConfigError: return "config-error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace plap
