#pragma once

#include <stdexcept>
#include <string>

namespace critx {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative method (Lanczos, quadrature, nonlinear fit) did not reach its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double best_residual)
        : Error(what), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

}  // namespace critx
