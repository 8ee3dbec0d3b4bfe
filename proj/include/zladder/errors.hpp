#pragma once

#include <stdexcept>
#include <string>

namespace zladder {

// Base for all numeric failures so callers can catch one family.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Root bracketing found a sign pattern inconsistent with monotonicity.
struct bracket_error : numeric_error {
    using numeric_error::numeric_error;
};

// Iteration cap reached before the residual tolerance.
struct convergence_error : numeric_error {
    using numeric_error::numeric_error;
};

// A quadrature or grid request exceeded the covered range.
struct range_error_ : numeric_error {
    using numeric_error::numeric_error;
};

// Node-count or sieve caps.
struct resource_error : numeric_error {
    using numeric_error::numeric_error;
};

// A built structure failed one of its declared invariants.
struct invariant_error : numeric_error {
    using numeric_error::numeric_error;
};

}  // namespace zladder
