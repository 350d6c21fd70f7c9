#include "deformed/calculus.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace deformed {

void QuadratureSpec::validate() const {
    if (base_nodes < 2) throw PreconditionError("quadrature needs at least 2 base nodes");
    if (!(abs_tol > 0.0)) throw PreconditionError("quadrature tolerance must be positive");
    if (max_refinements < 1) throw PreconditionError("quadrature needs max_refinements >= 1");
}

double central_difference(const std::function<double(double)>& f, double u) {
    const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::abs(u));
    return (f(u + h) - f(u - h)) / (2.0 * h);
}

namespace {

void require_nonzero_x(double x) {
    if (x == 0.0) {
        throw DomainError("difference quotient is undefined at x = 0; use the series path");
    }
}

}  // namespace

double jackson_derivative(const SampledFunction& f, double x, double q) {
    require_nonzero_x(x);
    if (q == 1.0) throw PreconditionError("Jackson derivative requires q != 1");
    return (f.eval(x) - f.eval(q * x)) / ((1.0 - q) * x);
}

double symmetric_derivative(const SampledFunction& f, double x, double q) {
    require_nonzero_x(x);
    if (q == 0.0 || q == 1.0 || q == -1.0) {
        throw PreconditionError("symmetric derivative requires q not in {0, 1, -1}");
    }
    return (f.eval(x / q) - f.eval(q * x)) / ((1.0 / q - q) * x);
}

double pq_derivative(const SampledFunction& f, double x, double p, double q) {
    require_nonzero_x(x);
    if (p == q) throw PreconditionError("(p,q)-derivative requires p != q");
    return (f.eval(p * x) - f.eval(q * x)) / ((p - q) * x);
}

GaussLegendreRule gauss_legendre(int n) {
    if (n < 1) throw PreconditionError("Gauss-Legendre rule needs n >= 1");
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double step = p0 / dp;
            z -= step;
            if (std::abs(step) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

namespace {

// Geometric grading ratio towards t = 0.
constexpr double kGrading = 0.25;

// Level r uses 4(r+1) geometric panels, each split into r+1 equal pieces.
template <class Integrand>
double graded_estimate(const Integrand& g, const GaussLegendreRule& rule, int level) {
    const int depth = 4 * (level + 1);
    const int split = level + 1;
    std::vector<double> breaks;
    breaks.reserve(depth + 2);
    breaks.push_back(0.0);
    for (int k = depth; k >= 1; --k) breaks.push_back(std::pow(kGrading, k));
    breaks.push_back(1.0);

    double total = 0.0;
    for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
        const double width = (breaks[b + 1] - breaks[b]) / split;
        for (int s = 0; s < split; ++s) {
            const double lo = breaks[b] + s * width;
            const double mid = lo + 0.5 * width;
            double panel = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                panel += rule.weights[i] * g(mid + 0.5 * width * rule.nodes[i]);
            }
            total += 0.5 * width * panel;
        }
    }
    return total;
}

}  // namespace

QuadratureResult tsallis_derivative_quadrature(const SampledFunction& f, double x, double q,
                                               const QuadratureSpec& quad) {
    quad.validate();
    if (!(q >= 1.0 && q <= 2.0)) {
        throw UnsupportedError("quadrature Tsallis derivative supports q in [1, 2]; use the "
                               "series path for q < 1");
    }
    QuadratureResult result;
    result.reduced_accuracy = !f.has_derivative();
    auto derivative = [&f](double u) {
        return f.has_derivative() ? f.deriv(u) : central_difference(f.eval, u);
    };
    if (q == 1.0) {
        result.value = derivative(x);
        return result;
    }

    const double tol = result.reduced_accuracy ? std::max(quad.abs_tol, kFiniteDifferenceTolerance)
                                               : quad.abs_tol;
    const GaussLegendreRule rule = gauss_legendre(quad.base_nodes);
    auto integrand = [&](double t) { return derivative(std::pow(t, q - 1.0) * x); };

    double previous = graded_estimate(integrand, rule, 0);
    for (int level = 1; level <= quad.max_refinements; ++level) {
        const double current = graded_estimate(integrand, rule, level);
        const double change = std::abs(current - previous);
        if (change < tol * std::max(1.0, std::abs(current))) {
            result.value = current;
            result.refinements = level;
            result.last_change = change;
            return result;
        }
        previous = current;
        if (level == quad.max_refinements) {
            throw AccuracyError("Tsallis derivative quadrature did not converge after " +
                                    std::to_string(level) + " refinements",
                                previous, current);
        }
    }
    throw AccuracyError("Tsallis derivative quadrature did not converge", previous, previous);
}

}  // namespace deformed
