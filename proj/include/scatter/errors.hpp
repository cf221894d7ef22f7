#pragma once

#include <stdexcept>
#include <string>

namespace scat {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mismatched vector lengths in a dual pairing or matrix product.
struct dimension_error : error {
    using error::error;
};

// Input outside the operation's domain (zero vector, non-unit constant term, ...).
struct domain_error : error {
    using error::error;
};

// Truncation orders of two series disagree.
struct order_error : error {
    using error::error;
};

// A wall triple violates its invariants (function exponent not orthogonal to the normal, ...).
struct wall_error : error {
    using error::error;
};

// A path or broken line hit a joint, ran tangent to a wall, or a symbolic
// perturbation degenerated.  The message names the offending point.
struct genericity_error : error {
    using error::error;
};

// A condition the theory guarantees failed at runtime; always a bug.
struct internal_error : error {
    using error::error;
};

} // namespace scat
