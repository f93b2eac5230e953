#pragma once

#include <stdexcept>

namespace bntest {

/** Base class for every error thrown by this library. */
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define BNTEST_DEFINE_ERROR(NAME) \
  struct NAME : Error {           \
    using Error::Error;           \
  };

BNTEST_DEFINE_ERROR(CycleDetected)
BNTEST_DEFINE_ERROR(DomainTooLarge)
BNTEST_DEFINE_ERROR(UnknownVariable)
BNTEST_DEFINE_ERROR(ScopeMismatch)
BNTEST_DEFINE_ERROR(DomainMismatch)
BNTEST_DEFINE_ERROR(ShapeMismatch)
BNTEST_DEFINE_ERROR(OutOfDomain)
BNTEST_DEFINE_ERROR(DegenerateQ)
BNTEST_DEFINE_ERROR(ZeroQ)
BNTEST_DEFINE_ERROR(InvalidFactorization)
BNTEST_DEFINE_ERROR(NodeInPrefix)
BNTEST_DEFINE_ERROR(NodeSetMismatch)
BNTEST_DEFINE_ERROR(InvalidConfig)
BNTEST_DEFINE_ERROR(InvalidModel)
BNTEST_DEFINE_ERROR(InsufficientSamples)
BNTEST_DEFINE_ERROR(BudgetExceeded)
BNTEST_DEFINE_ERROR(IoError)

#undef BNTEST_DEFINE_ERROR

}  // namespace bntest
