#pragma once

#include <stdexcept>
#include <string>

namespace carrier {

/// Base of every error raised by the library. `kind()` is the stable name
/// used in JSON reports and CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define CARRIER_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(#Name, what) {}      \
  }

CARRIER_DEFINE_ERROR(DimensionMismatch);
CARRIER_DEFINE_ERROR(NotAPoset);
CARRIER_DEFINE_ERROR(NotQuasiLattice);
CARRIER_DEFINE_ERROR(JNotMeetClosed);
CARRIER_DEFINE_ERROR(NotComparable);
CARRIER_DEFINE_ERROR(NotNested);
CARRIER_DEFINE_ERROR(NotMonotone);
CARRIER_DEFINE_ERROR(InvalidSystem);
CARRIER_DEFINE_ERROR(NotIntersectionClosed);
CARRIER_DEFINE_ERROR(NotUnionClosed);
CARRIER_DEFINE_ERROR(PreconditionFailed);
CARRIER_DEFINE_ERROR(NotInLHS);
CARRIER_DEFINE_ERROR(RelationNotSatisfied);
CARRIER_DEFINE_ERROR(EmptyCone);
CARRIER_DEFINE_ERROR(ConesIntersect);
CARRIER_DEFINE_ERROR(GridTooCoarse);
CARRIER_DEFINE_ERROR(NotProper);
CARRIER_DEFINE_ERROR(NotANeighborhood);
CARRIER_DEFINE_ERROR(MaximizationFailed);
CARRIER_DEFINE_ERROR(BoundaryNotNegligible);
CARRIER_DEFINE_ERROR(QuadratureBudgetExceeded);
CARRIER_DEFINE_ERROR(ResidualTooLarge);
CARRIER_DEFINE_ERROR(SchemaError);

#undef CARRIER_DEFINE_ERROR

}  // namespace carrier
