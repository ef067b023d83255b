#pragma once

#include <stdexcept>
#include <string>

namespace gkblow {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotAntisymmetric : Error { using Error::Error; };
struct SingularForm : Error { using Error::Error; };
struct BraneViolated : Error { using Error::Error; };
struct MorphismViolated : Error { using Error::Error; };

struct OutOfDomain : Error { using Error::Error; };
struct SingularLocus : Error { using Error::Error; };
struct OnExcludedLocus : Error { using Error::Error; };
struct SingularPotential : Error { using Error::Error; };
struct DomainMismatch : Error { using Error::Error; };

struct LeftDomain : Error {
  int step_index;
  explicit LeftDomain(int step, const std::string& what = "trajectory left the guard domain")
      : Error(what + " at step " + std::to_string(step)), step_index(step) {}
};
struct MaxSteps : Error { using Error::Error; };
struct NotPositive : Error { using Error::Error; };

struct ConfigInvalid : Error {
  std::string field;
  ConfigInvalid(std::string field_path, const std::string& why)
      : Error("invalid config at '" + field_path + "': " + why), field(std::move(field_path)) {}
};
struct UnknownStage : Error { using Error::Error; };

}  // namespace gkblow
