#ifndef BW_CORE_HPP
#define BW_CORE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bw {

// Error taxonomy shared by all modules.  The CLI maps these onto exit
// codes, so every throwing path in the library uses one of them.

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition.
struct invalid_parameter : error {
    using error::error;
};

// A decomposition object is structurally broken (bad degrees, non-bijective
// leaf map, unknown node ids, ...).
struct invalid_decomposition : invalid_parameter {
    using invalid_parameter::invalid_parameter;
};

// The input is legal but exceeds a configured search budget.  Budgeted
// routines refuse rather than return a possibly wrong answer.
struct resource_limit : error {
    using error::error;
};

// The input is outside the class an algorithm can handle (e.g. the
// decomposer fails on a graph with no admissible small cut).
struct unsupported_input : error {
    using error::error;
};

// An invariant the library itself guarantees was violated.  Reaching this
// is a bug, not a user error.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace bw

#endif
