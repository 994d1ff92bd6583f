#ifndef LEGIX_KERNEL_HPP
#define LEGIX_KERNEL_HPP

#include "legix/common.hpp"
#include "legix/quadrature.hpp"

namespace legix::kernel {

// Order parameter mu with the validity windows of the inversion theory.
struct TransformParameters {
    double mu = -0.5;

    explicit TransformParameters(double mu_) : mu(mu_) {
        if (!std::isfinite(mu)) throw DomainError("TransformParameters: mu must be finite");
        if (!(mu < 0.5)) throw DomainError("TransformParameters: mu must be < 1/2");
    }

    bool integer_mu() const { return near_integer(mu); }

    struct Validity {
        bool theorem1;  // forward boundedness: mu < 1/2
        bool theorem2;  // inversion of F: mu < 0, non-integer
        bool theorem4;  // inversion of G: mu < 1/2, non-integer
    };
    Validity validity() const {
        return Validity{mu < 0.5, mu < 0.0 && !integer_mu(), mu < 0.5 && !integer_mu()};
    }

    void require_noninteger(const char* who) const {
        if (integer_mu()) throw PoleError(std::string(who) + ": integer mu is outside the inversion theory");
    }
};

struct KernelEvaluation {
    double x = 0.0;
    double tau = 0.0;
    double value = 0.0;
    enum class Method { direct, mellin_barnes, fourier_cosine } method = Method::direct;
    double err_estimate = 0.0;
};

// Phi(x,tau) = sqrt(pi/(1+x)) Gamma(1+i tau-mu) Gamma(1-i tau-mu)
//              P^mu_{i tau}(sqrt(1+x)) P^mu_{-i tau}(sqrt(1+x))
KernelEvaluation phi_direct(double x, double tau, const TransformParameters& p,
                            const SeriesControl& ctl = {});

// Default abscissa for the kernel's Mellin-Barnes line, inside (mu, 1/2).
double default_kernel_abscissa(double mu);

// Contour spec sized for the kernel integrand at a given tau.
quadrature::ContourSpec default_kernel_contour(double mu, double tau);

// Vertical-line Mellin-Barnes representation of Phi.
KernelEvaluation phi_mellin_barnes(double x, double tau, const TransformParameters& p,
                                   const quadrature::ContourSpec* spec = nullptr);

// Fourier-cosine representation of Phi. `resolved` is the form consistent with
// the Mellin-Barnes route (real integrand, Legendre argument
// (x+2cosh^2(u/2))/(2cosh(u/2)sqrt(x+cosh^2(u/2)))). The two printed variants
// are kept for the record; they do not reproduce Phi.
enum class CosineReading { resolved, lemma_display, proof_display };
KernelEvaluation phi_fourier_cosine(double x, double tau, const TransformParameters& p,
                                    CosineReading reading = CosineReading::resolved);

// Route selection: direct while the Legendre series argument stays safe,
// Mellin-Barnes otherwise.
KernelEvaluation phi_auto(double x, double tau, const TransformParameters& p);

// d^k Phi / dx^k (k = 1..3) by differentiating under the contour integral.
double phi_derivative(double x, double tau, const TransformParameters& p, int order,
                      const quadrature::ContourSpec* spec = nullptr);

// Residual of the third-order ODE satisfied by Phi; scale_out receives the
// largest term magnitude for relative comparisons.
double ode_residual(double x, double tau, const TransformParameters& p,
                    double* scale_out = nullptr);

// Both sides of the gamma/cosine reciprocity
// Gamma(1-s+i tau) Gamma(1-s-i tau) = 2^{2s-1} Gamma(2(1-s)) Int_0^inf cos(tau y) cosh^{2s-2}(y/2) dy.
std::pair<double, double> gamma_cosine_pair_check(double s_real, double tau);

}  // namespace legix::kernel

#endif
