#include "legix/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace legix::quadrature {

namespace {

struct GaussRule {
    std::vector<double> x;  // nodes on (-1, 1)
    std::vector<double> w;
};

// Gauss-Legendre nodes/weights by Newton iteration on P_n.
GaussRule make_gauss(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p0 / pp;
            if (std::abs(z - z1) < 1e-16) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.w[n - 1 - i] = r.w[i];
    }
    return r;
}

const GaussRule& gauss16() {
    static const GaussRule r = make_gauss(16);
    return r;
}
const GaussRule& gauss32() {
    static const GaussRule r = make_gauss(32);
    return r;
}

template <typename F>
Complex panel_gauss(const F& f, double a, double b, const GaussRule& g, long& evals) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Complex acc{0.0, 0.0};
    for (size_t i = 0; i < g.x.size(); ++i) {
        const Complex v = f(c + h * g.x[i]);
        if (!is_finite(v)) throw ConvergenceError("quadrature: integrand returned a non-finite value");
        acc += g.w[i] * v;
        ++evals;
    }
    return h * acc;
}

// Adaptive bisection on one panel; returns refined value, accumulates error.
template <typename F>
Complex panel_adaptive(const F& f, double a, double b, double abs_tol, int depth,
                       long& evals, double& err) {
    const Complex coarse = panel_gauss(f, a, b, gauss16(), evals);
    const Complex fine = panel_gauss(f, a, b, gauss32(), evals);
    const double diff = std::abs(fine - coarse);
    if (diff <= abs_tol || depth >= 16) {
        err += diff;
        return fine;
    }
    const double mid = 0.5 * (a + b);
    return panel_adaptive(f, a, mid, 0.5 * abs_tol, depth + 1, evals, err) +
           panel_adaptive(f, mid, b, 0.5 * abs_tol, depth + 1, evals, err);
}

}  // namespace

QuadResult integrate_halfline(const std::function<Complex(double)>& f, const HalflineOptions& opt) {
    std::function<Complex(double)> g = f;
    if (opt.singularity == Endpoint::algebraic) {
        if (!(opt.singular_exponent > -1.0))
            throw DomainError("integrate_halfline: algebraic exponent must be > -1");
        const int m = std::clamp(static_cast<int>(std::ceil(2.0 / (1.0 + opt.singular_exponent))), 1, 8);
        if (m > 1) {
            g = [f, m](double u) {
                const double x = std::pow(u, m);
                if (x == 0.0) return Complex{0.0, 0.0};
                return f(x) * (m * std::pow(u, m - 1));
            };
        }
    }

    // Panel edges: geometric toward 0 (covers log endpoints), doubling toward infinity.
    std::vector<double> edges;
    const double lo_floor = (opt.singularity == Endpoint::none) ? 1e-6 : 1e-13;
    for (double e = lo_floor; e < 1.0; e *= 4.0) edges.push_back(e);
    edges.push_back(1.0);

    // Rough first pass to fix the error scale.
    long evals = 0;
    Complex rough{0.0, 0.0};
    {
        double a = 0.0;
        for (double b : edges) {
            rough += panel_gauss(g, a, b, gauss16(), evals);
            a = b;
        }
        double b = 2.0;
        for (int k = 0; k < 60; ++k) {
            const Complex piece = panel_gauss(g, a, b, gauss16(), evals);
            rough += piece;
            if (std::abs(piece) < std::max(opt.abs_floor, 1e-3 * opt.rel_tol * std::abs(rough))) break;
            a = b;
            b *= 2.0;
        }
    }
    const double scale = std::max(std::abs(rough), opt.abs_floor);

    QuadResult res;
    res.evaluations = evals;
    double err = 0.0;
    Complex total{0.0, 0.0};
    const double panel_tol = opt.rel_tol * scale / 8.0;

    double a = 0.0;
    int panels = 0;
    for (double b : edges) {
        total += panel_adaptive(g, a, b, panel_tol, 0, res.evaluations, err);
        a = b;
        ++panels;
    }
    double b = 2.0;
    int quiet = 0;
    for (; panels < opt.max_panels; ++panels) {
        const Complex piece = panel_adaptive(g, a, b, panel_tol, 0, res.evaluations, err);
        total += piece;
        if (std::abs(piece) < std::max(opt.abs_floor, 0.25 * opt.rel_tol * std::abs(total))) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
        }
        a = b;
        b *= 2.0;
        if (a > 1e12) throw ConvergenceError("integrate_halfline: tail did not converge (divergent integral?)");
    }
    if (panels >= opt.max_panels)
        throw ConvergenceError("integrate_halfline: panel budget exhausted before tail convergence");

    res.value = total;
    res.err_estimate = err + opt.abs_floor;
    return res;
}

QuadResult integrate_halfline_real(const std::function<double(double)>& f, const HalflineOptions& opt) {
    return integrate_halfline([&f](double x) { return Complex{f(x), 0.0}; }, opt);
}

QuadResult integrate_cosine(const std::function<double(double)>& f, double tau, const CosineOptions& opt) {
    tau = std::abs(tau);
    if (tau > 20.0)
        throw CapabilityError("integrate_cosine: tau > 20 is outside the supported double-precision range");

    // Effective support: either declared or probed from the decay of |f|.
    double umax = opt.support_hint;
    if (umax <= 0.0) {
        double peak = std::abs(f(0.0)) + std::abs(f(0.5)) + std::abs(f(1.0));
        peak = std::max(peak, 1e-30);
        umax = 1.0;
        while (umax < 400.0 && std::abs(f(umax)) > 1e-18 * peak) umax *= 1.5;
    }
    umax = std::min(umax, 400.0);

    auto integrand = [&](double u) { return Complex{std::cos(tau * u) * f(u), 0.0}; };

    long evals = 0;
    double err = 0.0;
    QuadResult res;

    if (tau * umax < 20.0) {
        // Few oscillations: plain adaptive panels.
        Complex rough{0.0, 0.0};
        double a = 0.0;
        const double h0 = std::min(1.0, umax);
        for (double b = h0; a < umax; b = std::min(b + h0, umax)) {
            rough += panel_gauss(integrand, a, b, gauss16(), evals);
            a = b;
            if (b >= umax) break;
        }
        const double tol = opt.rel_tol * std::max(std::abs(rough), opt.abs_floor) / 4.0;
        a = 0.0;
        Complex total{0.0, 0.0};
        for (double b = h0; a < umax; b = std::min(b + h0, umax)) {
            total += panel_adaptive(integrand, a, b, tol, 0, evals, err);
            a = b;
            if (b >= umax) break;
        }
        res.value = total;
    } else {
        // Half-period partition: terms alternate, so accelerate the partial sums.
        const double h = kPi / tau;
        std::vector<Complex> terms;
        double a = 0.0;
        // Align the first panel to the first zero of cos(tau*u).
        double b = 0.5 * h;
        double amax = 0.0;
        while (a < umax + h) {
            const Complex t = panel_adaptive(integrand, a, std::min(b, umax + h), 1e-16, 0, evals, err);
            terms.push_back(t);
            amax = std::max(amax, std::abs(t));
            if (std::abs(t) < std::max(opt.abs_floor, 1e-16 * amax) && terms.size() > 8) break;
            a = b;
            b += h;
        }
        // Aitken delta^2 on the tail of the alternating series.
        std::vector<Complex> partial(terms.size());
        Complex s{0.0, 0.0};
        for (size_t i = 0; i < terms.size(); ++i) {
            s += terms[i];
            partial[i] = s;
        }
        Complex best = partial.back();
        if (partial.size() >= 3) {
            const size_t n = partial.size();
            const Complex d1 = partial[n - 1] - partial[n - 2];
            const Complex d2 = partial[n - 1] - 2.0 * partial[n - 2] + partial[n - 3];
            if (std::abs(d2) > 0.0) {
                const Complex acc = partial[n - 1] - d1 * d1 / d2;
                if (std::abs(acc - partial[n - 1]) < std::abs(d1)) best = acc;
            }
            err += std::abs(best - partial[n - 1]) + std::abs(d1) * 0.5;
        }
        res.value = best;
    }

    res.evaluations = evals;
    res.err_estimate = err + opt.abs_floor;
    return res;
}

namespace {

QuadResult contour_core(const std::function<Complex(double)>& line, const ContourSpec& spec,
                        double rel_tol) {
    const double T = spec.half_height;
    int npanels = std::max(spec.nodes / 16, 8);
    long evals = 0;

    auto sweep = [&](int np) {
        Complex acc{0.0, 0.0};
        const double h = 2.0 * T / np;
        for (int i = 0; i < np; ++i) {
            acc += panel_gauss(line, -T + i * h, -T + (i + 1) * h, gauss16(), evals);
        }
        return acc;
    };

    Complex coarse = sweep(npanels);
    Complex fine = sweep(npanels * 2);
    double diff = std::abs(fine - coarse);
    int doublings = 1;
    while (diff > rel_tol * std::max(std::abs(fine), 1e-300) && doublings < 5) {
        npanels *= 2;
        coarse = fine;
        fine = sweep(npanels * 2);
        diff = std::abs(fine - coarse);
        ++doublings;
    }

    QuadResult r;
    r.value = fine / (2.0 * kPi);
    r.err_estimate = diff / (2.0 * kPi);
    r.evaluations = evals;
    return r;
}

}  // namespace

QuadResult integrate_contour(const std::function<Complex(Complex)>& f, const ContourSpec& spec,
                             const ContourEnvelope& env, double rel_tol) {
    spec.validate();
    const double g = spec.abscissa;
    double T = spec.half_height;
    auto line = [&](double t) { return f(Complex{g, t}); };

    QuadResult r = contour_core(line, spec, rel_tol);

    // Envelope check against the declared Stirling-type bound A e^{-pi|t|} |t|^p.
    if (env.amplitude > 0.0) {
        for (double frac : {0.7, 0.85, 1.0}) {
            const double t = frac * T;
            const double m = std::max(std::abs(f(Complex{g, t})), std::abs(f(Complex{g, -t})));
            r.evaluations += 2;
            if (m > 5.0 * env.amplitude * std::exp(-kPi * t) * std::pow(t, env.power))
                throw Error("integrate_contour: sampled integrand exceeds the declared tail envelope");
        }
    }

    // Tail handling: measure the actual endpoint decay rate and extend the
    // segment until the estimated tail is negligible against the value.
    auto tail_estimate = [&](double Tcur) {
        const double m1 = std::max(std::abs(f(Complex{g, 0.8 * Tcur})), std::abs(f(Complex{g, -0.8 * Tcur})));
        const double m2 = std::max(std::abs(f(Complex{g, Tcur})), std::abs(f(Complex{g, -Tcur})));
        r.evaluations += 4;
        double rate = kPi;
        if (m1 > 0.0 && m2 > 0.0 && m2 < m1) rate = std::log(m1 / m2) / (0.2 * Tcur);
        rate = std::clamp(rate, 0.05, 2.0 * kPi);
        return 2.0 * m2 / rate / (2.0 * kPi);  // both half-lines, 1/(2 pi) prefactor
    };

    double tail = tail_estimate(T);
    const double cap = std::max(20.0 * T, 200.0);
    while (tail > 0.25 * rel_tol * std::max(std::abs(r.value), 1e-300) && T < cap) {
        const double Text = std::min(1.5 * T, cap);
        // integrate the extension strips [T, Text] and [-Text, -T]
        const int np = std::max(8, static_cast<int>((Text - T) * 4));
        double err = 0.0;
        Complex add{0.0, 0.0};
        const double h = (Text - T) / np;
        for (int i = 0; i < np; ++i) {
            add += panel_adaptive(line, T + i * h, T + (i + 1) * h, 1e-18, 0, r.evaluations, err);
            add += panel_adaptive(line, -T - (i + 1) * h, -T - i * h, 1e-18, 0, r.evaluations, err);
        }
        r.value += add / (2.0 * kPi);
        r.err_estimate += err / (2.0 * kPi);
        T = Text;
        tail = tail_estimate(T);
    }
    r.err_estimate += tail;
    return r;
}

QuadResult integrate_contour_abs(const std::function<Complex(Complex)>& f, const ContourSpec& spec,
                                 double rel_tol) {
    spec.validate();
    const double g = spec.abscissa;
    auto line = [&](double t) { return Complex{std::abs(f(Complex{g, t})), 0.0}; };
    QuadResult r = contour_core(line, spec, rel_tol);
    // contour_core divides by 2*pi; here the convention is a plain |ds| integral.
    r.value *= 2.0 * kPi;
    r.err_estimate *= 2.0 * kPi;
    const double t = spec.half_height;
    const double endval = std::abs(f(Complex{g, t})) + std::abs(f(Complex{g, -t}));
    r.err_estimate += endval / kPi;  // e^{-pi t} envelope integrated past the cut
    return r;
}

}  // namespace legix::quadrature
