#pragma once

#include <stdexcept>
#include <string>

namespace monodep {

// Base of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad invocation: malformed inputs, out-of-range parameters, config limits.
// The CLI maps this family to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Structural problems in the data itself (constant columns, missing classes,
// vanishing variances). The CLI maps this family to exit code 3.
class DegenerateData : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegenerateOutcome : public DegenerateData {
 public:
  using DegenerateData::DegenerateData;
};

class DegenerateInput : public DegenerateData {
 public:
  using DegenerateData::DegenerateData;
};

class DegenerateMarginal : public DegenerateData {
 public:
  using DegenerateData::DegenerateData;
};

class DegenerateClass : public DegenerateData {
 public:
  using DegenerateData::DegenerateData;
};

class NotBinary : public DegenerateData {
 public:
  using DegenerateData::DegenerateData;
};

class TiedOutcomes : public DegenerateData {
 public:
  using DegenerateData::DegenerateData;
};

class ZeroVariance : public DegenerateData {
 public:
  using DegenerateData::DegenerateData;
};

class ContrastDegenerate : public DegenerateData {
 public:
  using DegenerateData::DegenerateData;
};

class AllContrastsDegenerate : public DegenerateData {
 public:
  using DegenerateData::DegenerateData;
};

class TooFewObservations : public DegenerateData {
 public:
  using DegenerateData::DegenerateData;
};

class BootstrapDegenerate : public DegenerateData {
 public:
  using DegenerateData::DegenerateData;
};

}  // namespace monodep
