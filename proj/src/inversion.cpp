#include <algorithm>
#include <cmath>

#include "legix/specfun.hpp"
#include "legix/transforms.hpp"

namespace legix::transforms {

using specfun::gamma_pair;
using specfun::hyp_pfq;
using specfun::log_gamma;
using specfun::rgamma;

namespace {

Complex C(double re) { return Complex{re, 0.0}; }

double gamma_real(double x) { return std::exp(log_gamma(C(x))).real(); }

// Integral of the natural cubic spline through (x_i, y_i).
double spline_integral(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    if (n < 4) throw DomainError("spline_integral: at least 4 points required");
    std::vector<double> m(n, 0.0), u(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
        const double sig = (x[i] - x[i - 1]) / (x[i + 1] - x[i - 1]);
        const double p = sig * m[i - 1] + 2.0;
        m[i] = (sig - 1.0) / p;
        u[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]) - (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
        u[i] = (6.0 * u[i] / (x[i + 1] - x[i - 1]) - sig * u[i - 1]) / p;
    }
    for (size_t k = n - 1; k-- > 0;) m[k] = m[k] * m[k + 1] + u[k];
    double acc = 0.0;
    for (size_t i = 0; i + 1 < n; ++i) {
        const double h = x[i + 1] - x[i];
        acc += 0.5 * h * (y[i] + y[i + 1]) - h * h * h / 24.0 * (m[i] + m[i + 1]);
    }
    return acc;
}

double tau_over_sinh(double tau) {
    if (std::abs(tau) < 1e-8) return 1.0 / kPi;
    return tau / std::sinh(kPi * tau);
}

}  // namespace

double inv_f_kernel(double x, double tau, const TransformParameters& p, EvalRoute route) {
    if (!(x > 0.0)) throw DomainError("inv_f_kernel: x must be positive");
    if (!(p.mu < 0.0)) throw DomainError("inv_f_kernel: requires mu < 0");
    p.require_noninteger("inv_f_kernel");
    const double mu = p.mu;
    tau = std::abs(tau);
    if (tau == 0.0) return 0.0;  // the tau factor kills the integrand

    if (route == EvalRoute::contour) {
        // K = -(1/pi^2) tau sinh(2 pi tau) Int_{1/x}^inf S(y,tau) dy/y with the
        // y-integral done under the line integral: x^{s}/s replaces y^{-s}.
        quadrature::ContourSpec cs;
        cs.abscissa = 0.5 * std::min(-mu, 1.0);
        cs.half_height = 16.0 + 1.1 * tau;
        cs.nodes = std::max(2048, static_cast<int>(96.0 * cs.half_height));
        const Complex it{0.0, tau};
        const auto q = quadrature::integrate_contour(
            [mu, x, it](Complex s) {
                return std::exp(log_gamma(s + it) + log_gamma(s - it) + log_gamma(1.0 - s) +
                                log_gamma(-s - mu) - log_gamma(s + 1.0 - mu) -
                                log_gamma(-0.5 - s) + s * std::log(x)) /
                       s;
            },
            cs);
        return -1.0 / (kPi * kPi) * tau * std::sinh(2.0 * kPi * tau) * q.value.real();
    }

    const Complex it{0.0, tau};
    double t1 = 0.0;
    const double rg = rgamma(C(mu - 0.5)).real();
    if (rg != 0.0) {
        t1 = std::pow(4.0, mu) * std::pow(x, -mu) * gamma_real(mu) * gamma_pair(-mu, tau) *
             std::sinh(2.0 * kPi * tau) / gamma_real(1.0 - mu) * rg / gamma_real(0.5 - mu) *
             hyp_pfq({-mu - it, -mu + it, C(1.5 - mu)}, {C(1.0 - mu), C(1.0 - 2.0 * mu)}, -x)
                 .value.real();
    }
    const double t2 = 1.5 * x * tau * std::cosh(kPi * tau) * gamma_real(-1.0 - mu) /
                      gamma_real(2.0 - mu) *
                      hyp_pfq({1.0 + it, 1.0 - it, C(2.5), C(1.0)},
                              {C(2.0 + mu), C(2.0 - mu), C(2.0)}, -x)
                          .value.real();
    return tau / (kPi * kSqrtPi) * (t1 - t2);
}

TransformResult invert_F(const TransformResult& F_samples, const TransformParameters& p,
                         const std::vector<double>& xs) {
    if (!p.validity().theorem2)
        throw DomainError("invert_F: requires mu < 0 and non-integer");
    TransformResult res(p);
    res.route = TransformResult::Route::closed_form;
    if (p.mu > -0.25)
        res.warnings.push_back("mu in (-1/4, 0) is outside the verified inversion window");
    const auto& taus = F_samples.abscissas;
    if (taus.size() < 8) throw DomainError("invert_F: needs at least 8 tau samples");

    for (double x : xs) {
        std::vector<double> integrand(taus.size());
        for (size_t i = 0; i < taus.size(); ++i)
            integrand[i] = inv_f_kernel(x, taus[i], p) * F_samples.values[i];
        const double val = spline_integral(taus, integrand);
        res.abscissas.push_back(x);
        res.values.push_back(val);
        // tail-ratio monitor: the hypothesis needs the weighted integrand to be
        // negligible at the truncation point
        const double tail = std::abs(integrand.back()) * (taus.back() - taus.front()) * 0.1;
        res.per_point_err.push_back(tail);
        if (tail > 1e-10 * std::max(std::abs(val), 1e-300)) {
            res.warnings.push_back(
                "tau-grid truncation tail is not negligible (integrability hypothesis at risk)");
        }
    }
    return res;
}

double inv_g_bracket(double u, double tau_rec, double eps, const TransformParameters& p) {
    if (!(u > 0.0)) throw DomainError("inv_g_bracket: u must be positive");
    if (!(tau_rec > 0.0)) throw DomainError("inv_g_bracket: tau must be positive");
    if (!(eps >= 0.0 && eps < 0.3)) throw DomainError("inv_g_bracket: eps must lie in [0, 0.3)");
    p.require_noninteger("inv_g_bracket");
    const double mu = p.mu;
    const Complex iT{0.0, tau_rec};

    // line right of the eps +- i tau poles; the crossed pair returns as residues
    quadrature::ContourSpec cs;
    cs.abscissa = std::clamp(0.35, std::max(mu, eps) + 0.05, 0.45);
    cs.half_height = 16.0 + 1.2 * tau_rec;
    cs.nodes = std::max(2048, static_cast<int>(96.0 * cs.half_height));
    const auto q = quadrature::integrate_contour(
        [mu, u, eps, iT](Complex s) {
            return std::exp(log_gamma(s) + log_gamma(s - mu) + log_gamma(0.5 - s) +
                            log_gamma(eps - s + iT) + log_gamma(eps - s - iT) -
                            log_gamma(s - 0.5) - log_gamma(1.0 - s - mu) -
                            log_gamma(eps - s + 0.5) - s * std::log(u));
        },
        cs);

    const Complex sp = eps + iT;
    const Complex rho = std::exp(log_gamma(sp) + log_gamma(sp - mu) + log_gamma(0.5 - sp) +
                                 log_gamma(-2.0 * iT) - log_gamma(sp - 0.5) -
                                 log_gamma(1.0 - sp - mu) - log_gamma(0.5 - iT));
    const double residues =
        2.0 * (rho * std::exp(-(eps + iT) * std::log(u))).real();
    return kSqrtPi * (q.value.real() + residues);
}

TransformResult invert_G(const TransformResult& G_samples, const TransformParameters& p,
                         const std::vector<double>& taus, InvertGMode mode, double epsilon) {
    if (!p.validity().theorem4)
        throw DomainError("invert_G: requires non-integer mu < 1/2");
    const double eps = (mode == InvertGMode::limit_form) ? 0.0 : epsilon;
    if (mode == InvertGMode::epsilon && !(epsilon > 0.0 && epsilon < 0.3))
        throw DomainError("invert_G: epsilon mode needs epsilon in (0, 0.3)");

    TransformResult res(p);
    res.route = TransformResult::Route::mellin_barnes;
    const auto& us = G_samples.abscissas;
    const auto& Gs = G_samples.values;
    if (us.size() < 8) throw DomainError("invert_G: needs at least 8 samples of G");

    double gmax = 0.0;
    for (double v : Gs) gmax = std::max(gmax, std::abs(v));
    if (gmax == 0.0) {
        for (double t : taus) {
            res.abscissas.push_back(t);
            res.values.push_back(0.0);
            res.per_point_err.push_back(0.0);
        }
        return res;
    }

    // tail fit G(u) ~ C' u^{-1/2} + c2 u^{-3/2} over the last decade
    const double U = us.back();
    double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
    int fit_points = 0;
    for (size_t i = 0; i < us.size(); ++i) {
        if (us[i] < U / 10.0) continue;
        const double f1 = std::pow(us[i], -0.5), f2 = std::pow(us[i], -1.5);
        s11 += f1 * f1;
        s12 += f1 * f2;
        s22 += f2 * f2;
        b1 += f1 * Gs[i];
        b2 += f2 * Gs[i];
        ++fit_points;
    }
    if (fit_points < 4) {
        res.warnings.push_back("G grid too short for a tail fit; truncation untreated");
    }
    const double det = s11 * s22 - s12 * s12;
    const double Cp = (fit_points >= 4 && det != 0.0) ? (b1 * s22 - b2 * s12) / det : 0.0;
    const double c2f = (fit_points >= 4 && det != 0.0) ? (s11 * b2 - s12 * b1) / det : 0.0;

    for (double t : taus) {
        if (!(t > 0.0)) {
            res.abscissas.push_back(t);
            res.values.push_back(0.0);
            res.per_point_err.push_back(0.0);
            continue;
        }
        if (t < 0.2)
            res.warnings.push_back("reconstruction below tau = 0.2 is ill-conditioned");
        std::vector<double> integrand(us.size());
        for (size_t i = 0; i < us.size(); ++i)
            integrand[i] = inv_g_bracket(us[i], t, eps, p) * Gs[i];
        double val = spline_integral(us, integrand);

        // analytic continuation of the residue terms against the fitted tail
        const double mu = p.mu;
        const Complex iT{0.0, t};
        const Complex sp = eps + iT;
        const Complex rho = std::exp(log_gamma(sp) + log_gamma(sp - mu) + log_gamma(0.5 - sp) +
                                     log_gamma(-2.0 * iT) - log_gamma(sp - 0.5) -
                                     log_gamma(1.0 - sp - mu) - log_gamma(0.5 - iT));
        const Complex e1 = std::exp((0.5 - eps - iT) * std::log(U)) / (eps + iT - 0.5);
        const Complex e2 = std::exp((-0.5 - eps - iT) * std::log(U)) / (eps + iT + 0.5);
        const double tail = 2.0 * kSqrtPi * (rho * (Cp * e1 + c2f * e2)).real();
        val += tail;

        // small-u extension below the grid: G ~ G(u0) (u/u0)^q
        double ext_err = 0.0;
        if (us.front() > 0.0 && Gs.size() >= 2 && std::abs(Gs[0]) > 0.0 && std::abs(Gs[1]) > 0.0 &&
            us.front() > 1e-12) {
            double qexp = std::log(std::abs(Gs[1] / Gs[0])) / std::log(us[1] / us[0]);
            qexp = std::clamp(qexp, -0.49, 6.0);
            const double ext =
                inv_g_bracket(us.front(), t, eps, p) * Gs[0] * us.front() / (qexp + 1.0);
            val += ext;
            ext_err = 0.5 * std::abs(ext);
        }

        const double pref = t * std::sinh(2.0 * kPi * t) / (kPi * kPi);
        res.abscissas.push_back(t);
        res.values.push_back(pref * val);
        // leading neglected tail order: u^{-3/2 - eps} oscillation against C' u^{-1/2}
        const double resid_tail = 2.0 * kSqrtPi * std::abs(rho) * std::abs(Cp) *
                                  std::pow(U, -1.0 - eps) * U / (1.0 + eps);
        res.per_point_err.push_back(pref * (ext_err + 0.05 * std::abs(resid_tail)));
    }
    return res;
}

}  // namespace legix::transforms
