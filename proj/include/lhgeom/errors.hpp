#pragma once

#include <stdexcept>
#include <string>

namespace lhgeom {

// Runtime numerical failure: degenerate population, non-finite values,
// eigenvalue non-convergence, step underflow. The CLI maps these to exit 3.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace lhgeom
