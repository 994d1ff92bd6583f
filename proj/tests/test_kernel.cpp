#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "legix/kernel.hpp"
#include "legix/specfun.hpp"

using namespace legix;
using namespace legix::kernel;

static double relerr(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

TEST_CASE("phi: tau=0 degenerates to the squared Legendre form") {
    const TransformParameters p{-0.7};
    for (double x : {0.4, 2.0}) {
        const double z = std::sqrt(1.0 + x);
        const Complex P0 = specfun::legendre_p(p.mu, Complex{0, 0}, z);
        const double g = std::exp(specfun::log_gamma(Complex{1.0 - p.mu, 0.0}).real());
        const double closed = std::sqrt(kPi / (1.0 + x)) * g * g * P0.real() * P0.real();
        CHECK(relerr(phi_direct(x, 0.0, p).value, closed) < 1e-12);
    }
}

TEST_CASE("phi: evenness in tau") {
    const TransformParameters p{0.2};
    const double a = phi_direct(1.3, 1.7, p).value;
    const double b = phi_direct(1.3, -1.7, p).value;
    CHECK(a == b);  // conjugate factors swap exactly
    const double am = phi_mellin_barnes(1.3, 1.7, p).value;
    const double bm = phi_mellin_barnes(1.3, -1.7, p).value;
    CHECK(relerr(am, bm) < 1e-10);
}

TEST_CASE("phi: direct vs Mellin-Barnes at spot points") {
    for (double mu : {-1.5, -0.5, 0.2}) {
        const TransformParameters p{mu};
        for (double x : {0.25, 1.0, 4.0}) {
            for (double tau : {0.5, 2.0}) {
                const auto d = phi_direct(x, tau, p);
                const auto m = phi_mellin_barnes(x, tau, p);
                CHECK(relerr(d.value, m.value) < 1e-8);
            }
        }
    }
}

TEST_CASE("phi: Fourier-cosine resolved reading matches, printed readings do not") {
    const TransformParameters p{-0.3};
    const double x = 1.0, tau = 1.0;
    const double ref = phi_mellin_barnes(x, tau, p).value;
    CHECK(relerr(phi_fourier_cosine(x, tau, p).value, ref) < 1e-7);
    CHECK(relerr(phi_fourier_cosine(x, tau, p, CosineReading::lemma_display).value, ref) > 1e-2);
    CHECK(relerr(phi_fourier_cosine(x, tau, p, CosineReading::proof_display).value, ref) > 1e-2);
}

TEST_CASE("phi: Fourier-cosine agreement at the stated points") {
    {
        const TransformParameters p{-0.5};
        CHECK(relerr(phi_fourier_cosine(1.0, 1.0, p).value, phi_direct(1.0, 1.0, p).value) < 1e-6);
    }
    {
        const TransformParameters p{0.2};
        CHECK(relerr(phi_fourier_cosine(0.5, 2.0, p).value, phi_direct(0.5, 2.0, p).value) < 1e-6);
        // tau = 0 case against the direct closed form
        CHECK(relerr(phi_fourier_cosine(0.5, 0.0, p).value, phi_direct(0.5, 0.0, p).value) < 1e-6);
    }
}

TEST_CASE("phi: MB contour-shift independence") {
    const TransformParameters p{-0.3};
    quadrature::ContourSpec a = default_kernel_contour(p.mu, 0.5);
    quadrature::ContourSpec b = a;
    a.abscissa = 0.1;
    b.abscissa = 0.3;
    const double va = phi_mellin_barnes(2.0, 0.5, p, &a).value;
    const double vb = phi_mellin_barnes(2.0, 0.5, p, &b).value;
    CHECK(relerr(va, vb) < 1e-8);
}

TEST_CASE("phi: abscissa validation") {
    const TransformParameters p{-0.3};
    quadrature::ContourSpec bad = default_kernel_contour(p.mu, 1.0);
    bad.abscissa = 0.7;
    CHECK_THROWS_AS(phi_mellin_barnes(1.0, 1.0, p, &bad), DomainError);
    CHECK_THROWS_AS(phi_direct(-1.0, 1.0, p), DomainError);
}

TEST_CASE("phi: large-x decay bound x^gamma Phi stays bounded") {
    const TransformParameters p{-0.5};
    const double gamma_exp = 0.25;
    double prev = 1e300;
    for (double x : {10.0, 100.0, 1000.0}) {
        const double v = std::abs(phi_mellin_barnes(x, 1.0, p).value) * std::pow(x, gamma_exp);
        CHECK(v < prev * 1.01);
        prev = v;
    }
}

TEST_CASE("phi_auto: route selection") {
    const TransformParameters p{-0.5};
    CHECK(phi_auto(1.0, 1.0, p).method == KernelEvaluation::Method::direct);
    CHECK(phi_auto(50.0, 1.0, p).method == KernelEvaluation::Method::mellin_barnes);
    // the two routes agree near the switch point
    CHECK(relerr(phi_auto(6.8, 1.0, p).value, phi_auto(6.9, 1.0, p).value) < 0.05);
}

TEST_CASE("phi_derivative: orders 1..3 against finite differences of the direct route") {
    const TransformParameters p{-0.5};
    const double x = 1.0, tau = 1.0;
    auto f = [&](double xx) { return phi_direct(xx, tau, p).value; };
    const double h = 1e-4;
    const double fd1 = (f(x + h) - f(x - h)) / (2 * h);
    const double fd2 = (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
    const double fd3 = (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
    CHECK(relerr(phi_derivative(x, tau, p, 1), fd1) < 1e-5);
    CHECK(relerr(phi_derivative(x, tau, p, 2), fd2) < 1e-4);
    CHECK(relerr(phi_derivative(x, tau, p, 3), fd3) < 1e-3);
    CHECK_THROWS_AS(phi_derivative(x, tau, p, 4), DomainError);
}

TEST_CASE("ode_residual: vanishes relative to the term scale") {
    struct Case { double x, tau, mu; };
    for (const Case& c : {Case{1.0, 1.0, -0.5}, Case{0.5, 2.0, 0.2}, Case{4.0, 0.5, -1.5}}) {
        const TransformParameters p{c.mu};
        double scale = 0.0;
        const double r = ode_residual(c.x, c.tau, p, &scale);
        CHECK(std::abs(r) < 1e-6 * scale);
    }
}

TEST_CASE("gamma_cosine_pair_check") {
    {
        const auto [lhs, rhs] = gamma_cosine_pair_check(0.0, 0.0);
        CHECK(relerr(lhs, 1.0) < 1e-12);
        CHECK(relerr(rhs, 1.0) < 1e-10);
    }
    {
        const auto [lhs, rhs] = gamma_cosine_pair_check(0.3, 1.0);
        CHECK(relerr(lhs, rhs) < 1e-9);
    }
    {
        const auto [lhs, rhs] = gamma_cosine_pair_check(-0.5, 2.0);
        CHECK(relerr(lhs, rhs) < 1e-9);
    }
    CHECK_THROWS_AS(gamma_cosine_pair_check(1.2, 1.0), DomainError);
}

TEST_CASE("TransformParameters: windows") {
    CHECK_THROWS_AS(TransformParameters{0.6}, DomainError);
    const TransformParameters ok{-0.5};
    CHECK(ok.validity().theorem1);
    CHECK(ok.validity().theorem2);
    CHECK(ok.validity().theorem4);
    const TransformParameters pos{0.25};
    CHECK(pos.validity().theorem1);
    CHECK(!pos.validity().theorem2);
    const TransformParameters integer_mu{-1.0};
    CHECK(!integer_mu.validity().theorem2);
    CHECK_THROWS_AS(integer_mu.require_noninteger("test"), PoleError);
}
