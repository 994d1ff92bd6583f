#ifndef LEGIX_SPECFUN_HPP
#define LEGIX_SPECFUN_HPP

#include <span>
#include <vector>

#include "legix/common.hpp"

namespace legix::specfun {

// Principal-branch log Gamma(z). Throws PoleError at non-positive integers.
Complex log_gamma(Complex z);

Complex gamma(Complex z);

// 1/Gamma(z), entire: returns exactly 0 at non-positive integers.
Complex rgamma(Complex z);

// Gamma(a + i tau) Gamma(a - i tau) for real a, tau: real (positive for a > 0).
double gamma_pair(double a, double tau);

// Modified Bessel function K_{i tau}(y) of imaginary order, real for real inputs.
double bessel_k_imag(double tau, double y);

// Modified Bessel function I_nu(y) of complex order, ascending series.
Complex bessel_i_complex(Complex nu, double y, const SeriesControl& ctl = {});

enum class LegendrePath { direct_series, transformed_series };

// Associated Legendre function of the first kind P^mu_nu(z) on the z > 1 branch
// (real prefactor ((z+1)/(z-1))^{mu/2} convention). The direct Gauss series in
// (1-z)/2 is used while it converges; otherwise the series is mapped to the
// argument (z-1)/(z+1) in (0,1) by a linear transformation.
Complex legendre_p(double mu, Complex nu_deg, double z, const SeriesControl& ctl = {},
                   LegendrePath* path_out = nullptr);

// Same function parametrized by z-1 > 0, for callers that can form z-1 without
// cancellation (the kernel's cosine representation needs z - 1 ~ x^2 e^{-2u}).
Complex legendre_p_shifted(double mu, Complex nu_deg, double z_minus_1,
                           const SeriesControl& ctl = {}, LegendrePath* path_out = nullptr);

struct PfqResult {
    Complex value{0.0, 0.0};
    double err_estimate = 0.0;
    int terms = 0;
    enum class Route { series, contour } route = Route::series;
};

// Generalized hypergeometric pFq(a; b; x) for real x. Ascending series inside
// its comfort zone; negative x beyond it is continued through the equivalent
// Mellin-Barnes integral (requires Re a_i > 0).
PfqResult hyp_pfq(std::span<const Complex> a, std::span<const Complex> b, double x,
                  const SeriesControl& ctl = {});

PfqResult hyp_pfq(std::initializer_list<Complex> a, std::initializer_list<Complex> b, double x,
                  const SeriesControl& ctl = {});

}  // namespace legix::specfun

#endif
