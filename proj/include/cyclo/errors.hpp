#pragma once

#include <stdexcept>
#include <string>

namespace cyclo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// numtheory
struct NotInvertible : Error { using Error::Error; };
struct SearchOverflow : Error { using Error::Error; };

// binary_cyclotomic
struct InvalidPrimes : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };

// kaplan_engine
struct ScanTooLarge : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };

// dense_oracle
struct TooLarge : Error { using Error::Error; };

// rosu_construction
struct HypothesisViolated : Error { using Error::Error; };
struct IntervalMiss : Error { using Error::Error; };
struct InexactDivision : Error { using Error::Error; };
struct RangeViolation : Error { using Error::Error; };

// beiter_landscape
struct PropositionMismatch : Error { using Error::Error; };

}  // namespace cyclo
