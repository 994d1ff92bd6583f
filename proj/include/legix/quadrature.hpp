#ifndef LEGIX_QUADRATURE_HPP
#define LEGIX_QUADRATURE_HPP

#include <functional>

#include "legix/common.hpp"

namespace legix::quadrature {

// Vertical-line segment for Mellin-Barnes quadrature: Re s = abscissa,
// Im s in [-half_height, half_height].
struct ContourSpec {
    double abscissa = 0.25;
    double half_height = 14.0;
    int nodes = 2048;

    void validate() const {
        if (!(half_height > 0.0)) throw DomainError("ContourSpec: half_height must be positive");
        if (nodes < 64) throw DomainError("ContourSpec: nodes must be >= 64");
    }
};

struct QuadResult {
    Complex value{0.0, 0.0};
    double err_estimate = 0.0;  // upper-bound estimate, not a guarantee
    long evaluations = 0;
};

enum class Endpoint { none, algebraic, logarithmic };

struct HalflineOptions {
    double rel_tol = 1e-12;
    double abs_floor = 1e-300;
    Endpoint singularity = Endpoint::none;
    double singular_exponent = 0.0;  // integrand ~ x^e near 0 (e > -1)
    double decay_hint = 1.0;         // e-folding rate of the tail
    int max_panels = 600;
};

QuadResult integrate_halfline(const std::function<Complex(double)>& f,
                              const HalflineOptions& opt = {});

// Convenience overload for real integrands.
QuadResult integrate_halfline_real(const std::function<double(double)>& f,
                                   const HalflineOptions& opt = {});

struct CosineOptions {
    double rel_tol = 1e-12;
    double abs_floor = 1e-300;
    double decay_hint = 1.0;   // exponential decay rate of f
    double support_hint = 0.0; // 0 => probe for the effective support
};

// Int_0^inf cos(tau*u) f(u) du for exponentially decaying f, tau <= 20.
QuadResult integrate_cosine(const std::function<double(double)>& f, double tau,
                            const CosineOptions& opt = {});

// Declared decay envelope |f(gamma+it)| <= amplitude * e^{-pi|t|} |t|^power.
// amplitude == 0 means calibrate from endpoint samples.
struct ContourEnvelope {
    double amplitude = 0.0;
    double power = -0.5;
};

// (1/2*pi*i) Int f(s) ds along the truncated vertical segment, with the
// analytic tail bound folded into err_estimate.
QuadResult integrate_contour(const std::function<Complex(Complex)>& f,
                             const ContourSpec& spec,
                             const ContourEnvelope& env = {},
                             double rel_tol = 1e-12);

// Same segment, but integrates |f| (used for absolute-value line integrals).
QuadResult integrate_contour_abs(const std::function<Complex(Complex)>& f,
                                 const ContourSpec& spec,
                                 double rel_tol = 1e-10);

}  // namespace legix::quadrature

#endif
