#pragma once

#include <stdexcept>
#include <string>

namespace canvar {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct PointOutsideDomain : Error {
  using Error::Error;
};
struct DegenerateMetric : Error {
  using Error::Error;
};
struct NullSeedField : Error {
  using Error::Error;
};
struct DegeneratePlane : Error {
  using Error::Error;
};
struct NotLightlike : Error {
  using Error::Error;
};
struct DegenerateSpan : Error {
  using Error::Error;
};
struct NullField : Error {
  using Error::Error;
};
struct NonUnitField : Error {
  using Error::Error;
};
struct ForbiddenParameter : Error {
  using Error::Error;
};
struct UnknownIdentity : Error {
  using Error::Error;
};
struct UnknownManifold : Error {
  using Error::Error;
};
struct DegenerateHypersurface : Error {
  using Error::Error;
};
struct WrongRank : Error {
  using Error::Error;
};
struct NegativeSpeedSquared : Error {
  using Error::Error;
};
struct SinkUnwritable : Error {
  using Error::Error;
};

}  // namespace canvar
