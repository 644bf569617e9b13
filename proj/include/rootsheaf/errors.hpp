#pragma once

#include <stdexcept>
#include <string>

namespace rootsheaf {

/// Malformed input: wrong arities, unknown names, syntax errors.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A checked property does not hold (relation violated, axiom fails).
/// `locus` is a short machine-readable tag naming where it failed.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string locus, const std::string& what)
      : std::runtime_error(what), locus_(std::move(locus)) {}
  const std::string& locus() const noexcept { return locus_; }

 private:
  std::string locus_;
};

/// A bounded search or completion ran out of budget before deciding.
/// This is never a "no": callers must report it as unknown.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation not available for this coefficient tier (e.g. Hom over k[s]).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rootsheaf
