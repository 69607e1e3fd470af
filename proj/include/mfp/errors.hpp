#pragma once

#include <stdexcept>
#include <string>

namespace mfp {

/// Base class for all typed pipeline errors. `category()` is the stable
/// machine-readable tag reported by the CLI on exit code 1.
class Error : public std::runtime_error {
public:
  Error(std::string category, const std::string& what)
      : std::runtime_error(what), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

private:
  std::string category_;
};

struct InvalidDeformation : Error {
  explicit InvalidDeformation(const std::string& what)
      : Error("InvalidDeformation", what) {}
};

struct GentDomainError : Error {
  explicit GentDomainError(const std::string& what)
      : Error("GentDomainError", what) {}
};

struct ExpOverflowError : Error {
  explicit ExpOverflowError(const std::string& what)
      : Error("OverflowError", what) {}
};

struct NonPositiveStretch : Error {
  explicit NonPositiveStretch(const std::string& what)
      : Error("NonPositiveStretch", what) {}
};

struct ZeroFingerprint : Error {
  explicit ZeroFingerprint(const std::string& what)
      : Error("ZeroFingerprint", what) {}
};

struct ProtocolMismatch : Error {
  explicit ProtocolMismatch(const std::string& what)
      : Error("ProtocolMismatch", what) {}
};

struct MeshDegenerate : Error {
  explicit MeshDegenerate(const std::string& what)
      : Error("MeshDegenerate", what) {}
};

struct NewtonDivergence : Error {
  explicit NewtonDivergence(const std::string& what)
      : Error("NewtonDivergence", what) {}
};

struct DivisionByZero : Error {
  explicit DivisionByZero(const std::string& what)
      : Error("DivisionByZero", what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error("IoError", what) {}
};

struct UsageError : Error {
  explicit UsageError(const std::string& what) : Error("UsageError", what) {}
};

}  // namespace mfp
