#include <algorithm>
#include <cmath>
#include <sstream>

#include "legix/specfun.hpp"
#include "legix/transforms.hpp"

namespace legix::transforms {

namespace {

double param(const std::map<std::string, double>& params, const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

// Natural cubic spline second derivatives.
std::vector<double> spline_m(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    std::vector<double> m(n, 0.0), u(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
        const double sig = (x[i] - x[i - 1]) / (x[i + 1] - x[i - 1]);
        const double p = sig * m[i - 1] + 2.0;
        m[i] = (sig - 1.0) / p;
        u[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]) - (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
        u[i] = (6.0 * u[i] / (x[i + 1] - x[i - 1]) - sig * u[i - 1]) / p;
    }
    for (size_t k = n - 1; k-- > 0;) m[k] = m[k] * m[k + 1] + u[k];
    return m;
}

}  // namespace

SampledFunction SampledFunction::builtin(const std::string& name,
                                         const std::map<std::string, double>& params) {
    SampledFunction f;
    f.name_ = name;
    const double scale = param(params, "scale", 1.0);
    if (name == "exp_decay") {
        const double a = param(params, "a", 1.0);
        if (!(a > 0.0)) throw DomainError("exp_decay: a must be positive");
        f.eval_ = [a](double x) { return std::exp(-a * x); };
        f.image_ = [a](Complex s) { return std::exp(specfun::log_gamma(s) - s * std::log(a)); };
        f.strip_ = {0.0, 1e308};
        f.decay_rate_ = a;
    } else if (name == "power_exp") {
        const double a = param(params, "a", 1.0);
        const double b = param(params, "b", 1.0);
        if (!(a > 0.0) || !(b > -1.0)) throw DomainError("power_exp: requires a > 0, b > -1");
        f.eval_ = [a, b](double x) { return x <= 0.0 ? 0.0 : std::pow(x, b) * std::exp(-a * x); };
        f.image_ = [a, b](Complex s) {
            return std::exp(specfun::log_gamma(s + b) - (s + b) * std::log(a));
        };
        f.strip_ = {-b, 1e308};
        f.decay_rate_ = a;
    } else if (name == "gauss_even_tau") {
        const double a = param(params, "a", 1.0);
        if (!(a > 0.0)) throw DomainError("gauss_even_tau: a must be positive");
        f.eval_ = [a](double t) { return t * t * std::exp(-a * t * t); };
        f.image_ = [a](Complex s) {
            return 0.5 * std::exp(specfun::log_gamma(0.5 * (s + 2.0)) - 0.5 * (s + 2.0) * std::log(a));
        };
        f.strip_ = {-2.0, 1e308};
        f.decay_rate_ = a;  // Gaussian: effectively faster than any exponential
    } else if (name == "gauss") {
        const double a = param(params, "a", 1.0);
        if (!(a > 0.0)) throw DomainError("gauss: a must be positive");
        f.eval_ = [a](double t) { return std::exp(-a * t * t); };
        f.image_ = [a](Complex s) {
            return 0.5 * std::exp(specfun::log_gamma(0.5 * s) - 0.5 * s * std::log(a));
        };
        f.strip_ = {0.0, 1e308};
        f.decay_rate_ = a;
    } else {
        throw DomainError("unknown builtin function: " + name);
    }
    if (scale != 1.0) {
        auto base_eval = f.eval_;
        f.eval_ = [base_eval, scale](double x) { return scale * base_eval(x); };
        if (f.image_) {
            auto base_image = f.image_;
            f.image_ = [base_image, scale](Complex s) { return scale * base_image(s); };
        }
    }
    return f;
}

SampledFunction SampledFunction::parse(const std::string& spec) {
    const auto open = spec.find('(');
    if (open == std::string::npos) return builtin(spec, {});
    if (spec.back() != ')') throw DomainError("malformed function spec: " + spec);
    const std::string name = spec.substr(0, open);
    const std::string args = spec.substr(open + 1, spec.size() - open - 2);
    std::map<std::string, double> params;
    // positional order per builtin
    const std::vector<std::string> order = {"a", "b"};
    std::stringstream ss(args);
    std::string tok;
    size_t pos = 0;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const auto eq = tok.find('=');
        try {
            if (eq == std::string::npos) {
                if (pos >= order.size()) throw DomainError("too many positional parameters");
                params[order[pos++]] = std::stod(tok);
            } else {
                std::string key = tok.substr(0, eq);
                key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
                params[key] = std::stod(tok.substr(eq + 1));
            }
        } catch (const std::invalid_argument&) {
            throw DomainError("malformed parameter in function spec: " + tok);
        }
    }
    return builtin(name, params);
}

SampledFunction SampledFunction::tabulated(std::vector<double> xs, std::vector<double> ys,
                                           Interp interp) {
    if (xs.size() != ys.size()) throw DomainError("tabulated: length mismatch");
    if (xs.size() < 4) throw DomainError("tabulated: at least 4 points required");
    for (size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw DomainError("tabulated: grid must be strictly ascending");
    SampledFunction f;
    f.name_ = "tabulated";
    f.tabulated_ = true;
    f.xs_ = std::move(xs);
    f.ys_ = std::move(ys);
    // decay estimate from the last two points (zero extrapolation otherwise)
    const size_t n = f.xs_.size();
    const double y1 = std::abs(f.ys_[n - 2]), y2 = std::abs(f.ys_[n - 1]);
    f.decay_rate_ = (y1 > 0 && y2 > 0 && y2 < y1)
                        ? std::log(y1 / y2) / (f.xs_[n - 1] - f.xs_[n - 2])
                        : 1.0;
    if (interp == Interp::linear) {
        auto xs2 = f.xs_;
        auto ys2 = f.ys_;
        f.eval_ = [xs2, ys2](double x) {
            if (x < xs2.front() || x > xs2.back()) return 0.0;  // zero extrapolation
            const auto it = std::upper_bound(xs2.begin(), xs2.end(), x);
            const size_t i = std::min(static_cast<size_t>(it - xs2.begin()), xs2.size() - 1);
            const double t = (x - xs2[i - 1]) / (xs2[i] - xs2[i - 1]);
            return ys2[i - 1] * (1.0 - t) + ys2[i] * t;
        };
    } else {
        auto xs2 = f.xs_;
        auto ys2 = f.ys_;
        auto m = spline_m(xs2, ys2);
        f.eval_ = [xs2, ys2, m](double x) {
            if (x < xs2.front() || x > xs2.back()) return 0.0;
            auto it = std::upper_bound(xs2.begin(), xs2.end(), x);
            size_t i = std::min(static_cast<size_t>(it - xs2.begin()), xs2.size() - 1);
            if (i == 0) i = 1;
            const double h = xs2[i] - xs2[i - 1];
            const double A = (xs2[i] - x) / h, B = 1.0 - A;
            return A * ys2[i - 1] + B * ys2[i] +
                   ((A * A * A - A) * m[i - 1] + (B * B * B - B) * m[i]) * h * h / 6.0;
        };
    }
    return f;
}

double SampledFunction::operator()(double x) const { return eval_(x); }

Complex SampledFunction::mellin_image(Complex s) const {
    if (!image_) throw CapabilityError("SampledFunction: no analytic Mellin image available");
    if (!(s.real() > strip_.first && s.real() < strip_.second))
        throw DomainError("SampledFunction: Mellin image evaluated outside its strip");
    return image_(s);
}

double SampledFunction::grid_max() const {
    if (!tabulated_) return 1e308;
    return xs_.back();
}

bool SampledFunction::zero_at_origin() const {
    const double v0 = eval_(0.0);
    const double v1 = eval_(1e-6);
    return std::abs(v0) < 1e-14 && std::abs(v1) < 1e-10;
}

}  // namespace legix::transforms
