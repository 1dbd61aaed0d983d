#pragma once

#include <stdexcept>
#include <string>

namespace lukyanov {

enum class ErrorKind { domain, convergence, quadrature, io, argument };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Parameters outside the regime the asymptotics are stated for.
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorKind::domain, w) {}
};

struct ConvergenceError : Error {
    ConvergenceError(const std::string& w, int iterations, double residual)
        : Error(ErrorKind::convergence, w + " (iterations=" + std::to_string(iterations) +
                                            ", residual=" + std::to_string(residual) + ")"),
          iterations(iterations), residual(residual) {}
    int iterations;
    double residual;
};

struct QuadratureError : Error {
    explicit QuadratureError(const std::string& w) : Error(ErrorKind::quadrature, w) {}
};

struct IoError : Error {
    explicit IoError(const std::string& w) : Error(ErrorKind::io, w) {}
};

}  // namespace lukyanov
