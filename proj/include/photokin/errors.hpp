#pragma once

#include <stdexcept>
#include <string>

namespace photokin {

// Base class for all domain errors thrown by the library. Parse errors in the
// scenario front end are reported as value lists instead, see scenario.hpp.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define PHOTOKIN_ERROR(Name)                                        \
  class Name : public Error {                                       \
  public:                                                           \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

PHOTOKIN_ERROR(NonUnitVector);
PHOTOKIN_ERROR(DeltaEvaluatedPointwise);
PHOTOKIN_ERROR(ChannelCountMismatch);

PHOTOKIN_ERROR(ConvergenceFailure);
PHOTOKIN_ERROR(GridTooCoarse);
PHOTOKIN_ERROR(IncompatibleStates);
PHOTOKIN_ERROR(DegenerateTransition);

PHOTOKIN_ERROR(RootBracketingFailure);
PHOTOKIN_ERROR(OutOfZone);
PHOTOKIN_ERROR(EnergyOutsideBand);
PHOTOKIN_ERROR(EdgeSingular);
PHOTOKIN_ERROR(DegenerateBandsAtK);
PHOTOKIN_ERROR(StateSpansMultipleCells);

PHOTOKIN_ERROR(NonDecayingPair);
PHOTOKIN_ERROR(ZeroCurrent);

PHOTOKIN_ERROR(EmptyIntermediateSet);
PHOTOKIN_ERROR(OffShellKinematics);

PHOTOKIN_ERROR(DegenerateKinematics);
PHOTOKIN_ERROR(GridMismatch);

PHOTOKIN_ERROR(IoError);

#undef PHOTOKIN_ERROR

} // namespace photokin
