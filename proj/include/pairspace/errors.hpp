#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pairspace {

// Two bodies closer than the collision tolerance (or exactly coincident).
class CollisionError : public std::runtime_error {
  public:
    explicit CollisionError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative solver ran out of iterations. Carries the last iterate so callers
// can inspect how far it got.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, std::vector<double> last, double residual)
        : std::runtime_error(what), last_iterate(std::move(last)), residual_norm(residual) {}

    std::vector<double> last_iterate;
    double residual_norm = 0.0;
};

} // namespace pairspace
