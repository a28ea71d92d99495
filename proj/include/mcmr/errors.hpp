#pragma once

#include <stdexcept>
#include <string>

namespace mcmr {

enum class ErrorCode {
  schema,
  duplicate_channel_interface,
  too_many_interfaces,
  unknown_channel,
  unknown_node,
  duplicate_node,
  duplicate_channel,
  non_contiguous_channels,
  non_positive_rate,
  invalid_region,
  missing_location,
  invalid_interference,
  invalid_flow,
  invalid_log,
  tick_misalignment,
  incomplete_log,
  unsupported,
  unknown_scenario,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::schema: return "schemaViolation";
    case ErrorCode::duplicate_channel_interface: return "duplicateChannelInterface";
    case ErrorCode::too_many_interfaces: return "tooManyInterfaces";
    case ErrorCode::unknown_channel: return "unknownChannel";
    case ErrorCode::unknown_node: return "unknownNode";
    case ErrorCode::duplicate_node: return "duplicateNode";
    case ErrorCode::duplicate_channel: return "duplicateChannel";
    case ErrorCode::non_contiguous_channels: return "nonContiguousChannelIds";
    case ErrorCode::non_positive_rate: return "nonPositiveRate";
    case ErrorCode::invalid_region: return "invalidRegion";
    case ErrorCode::missing_location: return "missingLocation";
    case ErrorCode::invalid_interference: return "invalidInterference";
    case ErrorCode::invalid_flow: return "invalidFlow";
    case ErrorCode::invalid_log: return "invalidLog";
    case ErrorCode::tick_misalignment: return "tickMisalignment";
    case ErrorCode::incomplete_log: return "incompleteLog";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::unknown_scenario: return "unknownScenario";
  }
  return "unknown";
}

/// Invalid input. `path` names the offending field, e.g. "nodes[2].channels".
class InputError : public std::runtime_error {
 public:
  InputError(ErrorCode code, std::string path, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + (path.empty() ? "" : " at " + path) + ": " + what),
        code_(code),
        path_(std::move(path)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  ErrorCode code_;
  std::string path_;
};

/// An instance exceeds an enumeration cap or evaluation budget.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal computation failure (e.g. an audit that should never fail).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mcmr
