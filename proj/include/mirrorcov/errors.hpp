#pragma once

#include <stdexcept>
#include <string>

namespace mirrorcov {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or out-of-range input values.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Optical anti-spring pushed the squared mode frequency to zero or below.
class NonPositiveFrequency : public Error {
 public:
  using Error::Error;
};

// Requested filter quantities for a channel with zero measurement rate.
class ZeroMeasurementRate : public Error {
 public:
  using Error::Error;
};

// Conditional dynamics has no stabilizing solution.
class ConditionalInstability : public Error {
 public:
  using Error::Error;
};

// Drift matrix is not Hurwitz where a decaying solution was required.
class NotHurwitz : public Error {
 public:
  using Error::Error;
};

// Fixed-step integration left the physical cone; the step was too coarse.
class StepSizeTooLarge : public Error {
 public:
  using Error::Error;
};

// A covariance matrix failed positivity or the uncertainty bound.
class NonPhysicalState : public Error {
 public:
  using Error::Error;
};

// Noise cross-correlation leaves no positive conditional innovation.
class IllConditionedNoise : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mirrorcov
