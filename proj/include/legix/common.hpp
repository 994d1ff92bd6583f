#ifndef LEGIX_COMMON_HPP
#define LEGIX_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace legix {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrtPi = 1.77245385090551602730;
inline constexpr double kLn2 = 0.69314718055994530942;

// Base class for all numerical failures raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

// Evaluation at (or too close to) a pole of a gamma factor.
class PoleError : public Error {
  public:
    using Error::Error;
};

// A series or quadrature failed to reach its tolerance.
class ConvergenceError : public Error {
  public:
    using Error::Error;
};

// Request outside the supported parameter range of the implementation.
class CapabilityError : public Error {
  public:
    using Error::Error;
};

// Truncation control shared by all series evaluations.
struct SeriesControl {
    int max_terms = 5000;
    double rel_tol = 1e-13;
    double abs_floor = 1e-300;

    void validate() const {
        if (max_terms < 10) throw DomainError("SeriesControl: max_terms must be >= 10");
        if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("SeriesControl: rel_tol must be in (0,1)");
        if (!(abs_floor > 0.0)) throw DomainError("SeriesControl: abs_floor must be positive");
    }
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// True when x sits within tol of an integer <= limit.
inline bool near_integer(double x, double limit = 1e300, double tol = 1e-12) {
    const double r = std::round(x);
    return std::abs(x - r) <= tol && r <= limit;
}

}  // namespace legix

#endif
