#ifndef LEGIX_TRANSFORMS_HPP
#define LEGIX_TRANSFORMS_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "legix/kernel.hpp"
#include "legix/quadrature.hpp"

namespace legix::transforms {

using kernel::TransformParameters;

// A named analytic test function or a tabulated grid with an interpolation rule.
class SampledFunction {
  public:
    enum class Interp { linear, cubic };

    // Catalog: exp_decay(a), power_exp(a,b), gauss_even_tau(a), gauss(a).
    static SampledFunction builtin(const std::string& name,
                                   const std::map<std::string, double>& params = {});
    // Parse "name(a=1,b=2)" or "name(1,2)".
    static SampledFunction parse(const std::string& spec);
    static SampledFunction tabulated(std::vector<double> xs, std::vector<double> ys,
                                     Interp interp = Interp::cubic);

    double operator()(double x) const;
    const std::string& name() const { return name_; }
    bool is_tabulated() const { return tabulated_; }
    bool has_mellin_image() const { return static_cast<bool>(image_); }
    // Analytic Mellin image f*(s); throws CapabilityError when absent or when
    // Re s leaves the declared strip.
    Complex mellin_image(Complex s) const;
    std::pair<double, double> mellin_strip() const { return strip_; }
    double decay_rate() const { return decay_rate_; }
    double grid_max() const;
    bool zero_at_origin() const;

  private:
    SampledFunction() = default;
    std::string name_;
    std::function<double(double)> eval_;
    std::function<Complex(Complex)> image_;
    std::pair<double, double> strip_{0.0, 0.0};
    double decay_rate_ = 1.0;
    bool tabulated_ = false;
    std::vector<double> xs_, ys_;
};

struct TransformResult {
    std::vector<double> abscissas;
    std::vector<double> values;
    std::vector<double> per_point_err;
    TransformParameters params;
    enum class Route { direct_quadrature, contour, closed_form, mellin_barnes } route =
        Route::direct_quadrature;
    std::vector<std::string> warnings;

    explicit TransformResult(const TransformParameters& p) : params(p) {}
};

enum class EvalRoute { contour, closed_form };

// f*(s) = Int_0^inf f(x) x^{s-1} dx; analytic image when available (used_image
// reports which path ran), quadrature otherwise.
Complex mellin_transform(const SampledFunction& f, Complex s, bool* used_image = nullptr);

// (1/2 pi i) Int image(s) x^{-s} ds along the truncated line; the imaginary
// residue of the contour value lands in imag_residue.
double mellin_inverse(const std::function<Complex(Complex)>& image,
                      const quadrature::ContourSpec& spec, double x,
                      double* imag_residue = nullptr);

// F(tau) = Int_0^inf Phi(x,tau) f(x) dx
TransformResult forward_F(const SampledFunction& f, const TransformParameters& p,
                          const std::vector<double>& taus);

// Same transform through the Mellin-Parseval line integral with f*(1-s).
TransformResult forward_F_contour(const SampledFunction& f, const TransformParameters& p,
                                  const std::vector<double>& taus,
                                  const quadrature::ContourSpec* spec = nullptr);

// |Gamma(3/2-s) Gamma(1/2-s) Gamma(s-mu) / Gamma(1-s-mu)| line integral on Re s = nu.
double norm_line_integral(const TransformParameters& p, double nu);

// Norm constant C_{mu,nu} of the forward bounds.
double norm_constant(const TransformParameters& p, double nu);

// Auxiliary function phi(x): the Lebedev-side image of f under the kernel factorization.
double phi_aux(const SampledFunction& f, const TransformParameters& p,
               const quadrature::ContourSpec* spec, double x);

// h(x): gamma-quotient line integral vs its 2F2 closed form.
double h_function(double x, const TransformParameters& p, EvalRoute route);

// Inversion kernel S(x,tau): line integral vs its 3F2 closed form.
double inversion_kernel_S(double x, double tau, const TransformParameters& p, EvalRoute route);

// Int_{1/x}^inf S(y,tau) dy/y: 4F3/3F2 closed form, or quadrature of S with an
// analytic algebraic tail.
double integrated_S(double x, double tau, const TransformParameters& p,
                    EvalRoute route = EvalRoute::closed_form);

// Per-tau kernel of the reconstruction f(x) = Int K(x,tau) F(tau) dtau.
double inv_f_kernel(double x, double tau, const TransformParameters& p,
                    EvalRoute route = EvalRoute::closed_form);

// Reconstruct f from sampled F (cubic-spline integration over the sample grid).
TransformResult invert_F(const TransformResult& F_samples, const TransformParameters& p,
                         const std::vector<double>& xs);

// G(x) = Int_0^inf Phi(x,tau) g(tau) dtau; optional forward-bound margin
// inf_x [C_{mu,nu} ||g||_1 - x^nu G(x)] over the requested grid.
TransformResult forward_G(const SampledFunction& g, const TransformParameters& p,
                          const std::vector<double>& xs, double nu = 0.25,
                          double* bound_margin = nullptr);

// U_mu(y): gamma-quotient line integral vs its 2F2 closed form.
double u_mu(double y, const TransformParameters& p, EvalRoute route);

// Numerically computed Mellin image of Gg on Re w in (1/2, 1-max(mu,0)): grid
// quadrature of the sampled transform plus the analytic continuation of its
// fitted C' x^{-1/2} + c2 x^{-3/2} tail.
class ForwardGImage {
  public:
    ForwardGImage(const SampledFunction& g, const TransformParameters& p, double x_lo = 1e-3,
                  double x_hi = 4e3, int per_decade = 24);
    Complex operator()(Complex w) const;
    double tail_coefficient() const { return Cp_; }

  private:
    struct Node { double x, w, gval; };
    std::vector<Node> nodes_;
    double x_hi_, Cp_, c2_;
};

// Both sides of the Mellin-image/Bessel-resolvent identity: the contour
// integral with (Gg)*(1-s) against sqrt(pi) e^{y/2} Int K_{i tau}(y/2)
// g(tau)/cosh(pi tau) dtau, over the requested y grid.
std::pair<TransformResult, TransformResult> check_identity_3_3(
    const SampledFunction& g, const TransformParameters& p,
    const quadrature::ContourSpec* spec, const std::vector<double>& ys);

enum class InvertGMode { limit_form, epsilon };

// Residue-corrected Mellin-Barnes bracket of the G-inversion: the function
// integrated against G(u) du to reconstruct g. Uniform in eps >= 0.
double inv_g_bracket(double u, double tau_rec, double eps, const TransformParameters& p);

// Reconstruct g from sampled G. limit_form is the eps -> 0 reduction; epsilon
// mode evaluates at fixed eps in (0,1) for convergence studies.
TransformResult invert_G(const TransformResult& G_samples, const TransformParameters& p,
                         const std::vector<double>& taus, InvertGMode mode = InvertGMode::limit_form,
                         double epsilon = 0.0);

}  // namespace legix::transforms

#endif
