#include "legix/specfun.hpp"

#include <algorithm>
#include <cmath>

#include "legix/quadrature.hpp"

namespace legix::specfun {

namespace {

// Lanczos approximation, g = 7, 9 terms.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,   676.5203681218851,    -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,  12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};

bool gamma_pole(Complex z) {
    return std::abs(z.imag()) < 1e-13 && z.real() < 0.5 && near_integer(z.real(), 0.0, 1e-13);
}

// log(sin(pi z)) for Im z >= 0, stable against overflow.
Complex log_sin_pi(Complex z) {
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}); |e^{2 i pi z}| = e^{-2 pi Im z} <= 1.
    const Complex i{0.0, 1.0};
    const Complex w = std::exp(2.0 * kPi * i * z);
    return -i * kPi * z + std::log(1.0 - w) + std::log(0.5 * i);
}

Complex log_gamma_core(Complex z) {
    // caller guarantees Im z >= 0 and no pole
    if (z.real() < 0.5) {
        return std::log(kPi) - log_sin_pi(z) - log_gamma_core(1.0 - z);
    }
    const Complex zm = z - 1.0;
    Complex acc{kLanczos[0], 0.0};
    for (int k = 1; k < 9; ++k) acc += kLanczos[k] / (zm + static_cast<double>(k));
    const Complex t = zm + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (zm + 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

Complex log_gamma(Complex z) {
    if (!is_finite(z)) throw DomainError("log_gamma: non-finite argument");
    if (gamma_pole(z)) throw PoleError("log_gamma: pole at non-positive integer");
    if (z.imag() < 0.0) return std::conj(log_gamma_core(std::conj(z)));
    return log_gamma_core(z);
}

Complex gamma(Complex z) {
    const Complex lg = log_gamma(z);
    if (lg.real() > 709.0) throw ConvergenceError("gamma: overflow");
    const Complex g = std::exp(lg);
    if (!is_finite(g)) throw ConvergenceError("gamma: non-finite result");
    return g;
}

Complex rgamma(Complex z) {
    if (gamma_pole(z)) return Complex{0.0, 0.0};
    if (z.imag() < 0.0) return std::conj(rgamma(std::conj(z)));
    if (z.real() < 0.5) {
        // 1/Gamma(z) = sin(pi z)/pi * Gamma(1-z)
        return std::exp(log_sin_pi(z) + log_gamma(1.0 - z) - std::log(Complex{kPi, 0.0}));
    }
    return std::exp(-log_gamma(z));
}

double gamma_pair(double a, double tau) {
    if (tau == 0.0 && a < 0.5 && near_integer(a, 0.0))
        throw PoleError("gamma_pair: pole at non-positive integer");
    // Gamma(a+i tau) Gamma(a-i tau) = |Gamma(a+i tau)|^2 for real a.
    return std::exp(2.0 * log_gamma(Complex{a, tau}).real());
}

double bessel_k_imag(double tau, double y) {
    if (!(y > 0.0)) throw DomainError("bessel_k_imag: argument must be positive");
    tau = std::abs(tau);
    // K_{i tau}(y) = Int_0^inf e^{-y cosh t} cos(tau t) dt
    const double tmax = (y >= 720.0) ? 1.0 : std::acosh(std::max(720.0 / y, 1.5));
    quadrature::CosineOptions opt;
    opt.support_hint = tmax + 1.0;
    opt.rel_tol = 1e-13;
    auto f = [y](double t) { return std::exp(-y * std::cosh(t)); };
    return quadrature::integrate_cosine(f, tau, opt).value.real();
}

Complex bessel_i_complex(Complex nu, double y, const SeriesControl& ctl) {
    ctl.validate();
    if (!(y > 0.0)) throw DomainError("bessel_i_complex: argument must be positive");
    const double ly = std::log(0.5 * y);
    Complex sum{0.0, 0.0};
    double prev = 1e308;
    int quiet = 0;
    for (int k = 0; k < ctl.max_terms; ++k) {
        const Complex order = nu + static_cast<double>(k + 1);
        const Complex term = std::exp((nu + 2.0 * k) * ly - log_gamma(Complex(k + 1.0, 0.0))) * rgamma(order);
        sum += term;
        const double mag = std::abs(term);
        // Terms grow until k ~ y/2; require the peak to be well past.
        if (k > 0.5 * y + 2 && mag < prev) {
            if (mag <= std::max(ctl.abs_floor, ctl.rel_tol * std::abs(sum))) {
                if (++quiet >= 2) return sum;
            } else {
                quiet = 0;
            }
        }
        prev = mag;
    }
    throw ConvergenceError("bessel_i_complex: series did not converge within max_terms");
}

namespace {

// Plain ascending pFq series; no routing, no validation.
PfqResult pfq_series(std::span<const Complex> a, std::span<const Complex> b, double x,
                     const SeriesControl& ctl, int terminate_at = -1) {
    Complex term{1.0, 0.0};
    Complex sum{1.0, 0.0};
    double peak = 1.0;
    int quiet = 0;
    PfqResult res;
    res.route = PfqResult::Route::series;
    const int nmax = (terminate_at >= 0) ? terminate_at : ctl.max_terms;
    for (int k = 0; k < nmax; ++k) {
        Complex ratio{1.0, 0.0};
        for (const Complex& ai : a) ratio *= ai + static_cast<double>(k);
        for (const Complex& bi : b) ratio /= bi + static_cast<double>(k);
        term *= ratio * x / (k + 1.0);
        sum += term;
        peak = std::max(peak, std::abs(sum));
        res.terms = k + 2;
        if (terminate_at < 0) {
            const double mag = std::abs(term);
            if (mag <= std::max(ctl.abs_floor, ctl.rel_tol * std::abs(sum)) && k >= 3) {
                if (++quiet >= 2) {
                    // Geometric tail bound from the last observed ratio.
                    double r = std::abs(ratio * x / (k + 1.0));
                    r = std::min(r, 0.9);
                    res.err_estimate = mag * r / (1.0 - r) + 2e-16 * peak;
                    res.value = sum;
                    return res;
                }
            } else {
                quiet = 0;
            }
        }
    }
    if (terminate_at >= 0) {
        res.value = sum;
        res.err_estimate = 2e-16 * peak;
        return res;
    }
    throw ConvergenceError("hyp_pfq: series did not converge within max_terms");
}

PfqResult pfq_contour(std::span<const Complex> a, std::span<const Complex> b, double x,
                      const SeriesControl& ctl) {
    // pFq(a; b; x) = [prod Gamma(b)/prod Gamma(a)] * (1/2 pi i) Int Gamma(s)
    //   prod Gamma(a_i - s) / prod Gamma(b_j - s) (-x)^{-s} ds, 0 < Re s < min Re a.
    double min_re_a = 1e308, max_im = 0.0;
    for (const Complex& ai : a) {
        min_re_a = std::min(min_re_a, ai.real());
        max_im = std::max(max_im, std::abs(ai.imag()));
    }
    if (!(x < 0.0)) throw CapabilityError("hyp_pfq: contour continuation requires negative argument");
    if (!(min_re_a > 0.02))
        throw CapabilityError("hyp_pfq: contour continuation requires parameters with positive real part");

    const double mx = -x;
    const double lmx = std::log(mx);
    std::vector<Complex> av(a.begin(), a.end()), bv(b.begin(), b.end());
    auto integrand = [av, bv, lmx](Complex s) {
        Complex lg = log_gamma(s) - s * lmx;
        for (const Complex& ai : av) lg += log_gamma(ai - s);
        for (const Complex& bi : bv) lg -= log_gamma(bi - s);
        return std::exp(lg);
    };

    quadrature::ContourSpec spec;
    spec.abscissa = 0.5 * std::min(min_re_a, 1.0);
    spec.half_height = 16.0 + 1.2 * max_im;
    spec.nodes = std::max(2048, static_cast<int>(96 * spec.half_height));
    const quadrature::QuadResult q = quadrature::integrate_contour(integrand, spec, {}, ctl.rel_tol);

    Complex lpref{0.0, 0.0};
    for (const Complex& bi : bv) lpref += log_gamma(bi);
    for (const Complex& ai : av) lpref -= log_gamma(ai);
    const Complex pref = std::exp(lpref);

    PfqResult res;
    res.value = pref * q.value;
    res.err_estimate = std::abs(pref) * q.err_estimate;
    res.terms = static_cast<int>(q.evaluations);
    res.route = PfqResult::Route::contour;
    return res;
}

}  // namespace

PfqResult hyp_pfq(std::span<const Complex> a, std::span<const Complex> b, double x,
                  const SeriesControl& ctl) {
    ctl.validate();
    const size_t p = a.size(), q = b.size();
    if (p > q + 1) throw CapabilityError("hyp_pfq: p > q+1 is not supported");

    // Terminating series (some a_i a non-positive integer) are exact for any x.
    int nterm = -1;
    for (const Complex& ai : a) {
        if (std::abs(ai.imag()) < 1e-13 && ai.real() < 0.5 && near_integer(ai.real(), 0.0, 1e-13)) {
            const int n = static_cast<int>(-std::llround(ai.real()));
            nterm = (nterm < 0) ? n : std::min(nterm, n);
        }
    }
    for (const Complex& bi : b) {
        if (std::abs(bi.imag()) < 1e-13 && bi.real() < 0.5 && near_integer(bi.real(), 0.0, 1e-13)) {
            const int m = static_cast<int>(-std::llround(bi.real()));
            if (nterm < 0 || nterm > m)
                throw PoleError("hyp_pfq: lower parameter is a non-positive integer");
        }
    }
    if (nterm >= 0) return pfq_series(a, b, x, ctl, nterm);  // polynomial of degree nterm

    if (x == 0.0) return PfqResult{Complex{1.0, 0.0}, 0.0, 1, PfqResult::Route::series};

    const bool series_ok = (p <= q && std::abs(x) <= 40.0) || (p == q + 1 && std::abs(x) < 0.9);
    if (series_ok) return pfq_series(a, b, x, ctl);
    return pfq_contour(a, b, x, ctl);
}

PfqResult hyp_pfq(std::initializer_list<Complex> a, std::initializer_list<Complex> b, double x,
                  const SeriesControl& ctl) {
    return hyp_pfq(std::span<const Complex>(a.begin(), a.size()),
                   std::span<const Complex>(b.begin(), b.size()), x, ctl);
}

Complex legendre_p_shifted(double mu, Complex nu_deg, double zm1, const SeriesControl& ctl,
                           LegendrePath* path_out) {
    ctl.validate();
    if (!(zm1 > 0.0)) throw DomainError("legendre_p: argument must be > 1");
    if (near_integer(1.0 - mu, 0.0)) throw PoleError("legendre_p: 1-mu at a non-positive integer");

    const Complex c{1.0 - mu, 0.0};
    const Complex prefactor = std::pow((zm1 + 2.0) / zm1, 0.5 * mu) * rgamma(c);

    if (zm1 < 1.8) {
        if (path_out) *path_out = LegendrePath::direct_series;
        const Complex av[] = {-nu_deg, nu_deg + 1.0};
        const Complex bv[] = {c};
        return prefactor * pfq_series(av, bv, -0.5 * zm1, ctl).value;
    }
    // Linear transformation to w = (z-1)/(z+1) in (0,1):
    // 2F1(-nu, nu+1; c; (1-z)/2) = ((1+z)/2)^nu 2F1(-nu, c-nu-1; c; w)
    if (path_out) *path_out = LegendrePath::transformed_series;
    const double w = zm1 / (zm1 + 2.0);
    const Complex av[] = {-nu_deg, c - nu_deg - 1.0};
    const Complex bv[] = {c};
    const Complex body = pfq_series(av, bv, w, ctl).value;
    return prefactor * std::exp(nu_deg * std::log(0.5 * zm1 + 1.0)) * body;
}

Complex legendre_p(double mu, Complex nu_deg, double z, const SeriesControl& ctl,
                   LegendrePath* path_out) {
    if (!(z > 1.0)) throw DomainError("legendre_p: argument must be > 1");
    return legendre_p_shifted(mu, nu_deg, z - 1.0, ctl, path_out);
}

}  // namespace legix::specfun
