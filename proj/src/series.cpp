#include "deformed/series.hpp"

#include <cmath>
#include <string>

#include "deformed/detail/wide_sum.hpp"

namespace deformed {

using detail::wide;

double tsallis_exp_closed(double q, double x) {
    if (q == 1.0) return std::exp(x);
    const double shift = (1.0 - q) * x;
    const double base = 1.0 + shift;
    if (base < 0.0) return 0.0;
    if (base == 0.0) return q < 1.0 ? 0.0 : kInfinity;
    return std::exp(std::log1p(shift) / (1.0 - q));
}

double tsallis_log(double q, double x) {
    if (!(x > 0.0)) throw DomainError("q-logarithm requires x > 0");
    if (q == 1.0) return std::log(x);
    return std::expm1((1.0 - q) * std::log(x)) / (1.0 - q);
}

namespace {

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

double scheme_radius(const DeformationScheme& scheme) {
    return scheme.is_builtin() ? radius_of_convergence(scheme) : kInfinity;
}

}  // namespace

template <class Scalar>
SeriesResult<Scalar> phi_exp_series(const DeformationScheme& scheme, const Scalar& x,
                                    const EvalPolicy& policy) {
    const double radius = scheme_radius(scheme);
    const double abs_x = std::abs(x);
    if (abs_x != 0.0 && !(abs_x < radius)) {
        throw DivergenceError("phi-exponential diverges: |x| = " + std::to_string(abs_x) +
                                  " is outside the disk of radius " + std::to_string(radius),
                              radius);
    }
    const double limit_ratio = std::isfinite(radius) ? 1.0 / radius : 0.0;

    if (scheme.is<Tsallis>()) {
        const wide qm1 = wide(scheme.as<Tsallis>().q) - wide(1);
        auto ratio = [qm1](std::int64_t n) {
            return (wide(1) + qm1 * wide(n - 1)) / wide(n);
        };
        return detail::sum_ratio_series(x, ratio, limit_ratio, policy, radius);
    }
    if (scheme.is<Boson>()) {
        auto ratio = [](std::int64_t n) { return wide(1) / wide(n); };
        return detail::sum_ratio_series(x, ratio, limit_ratio, policy, radius);
    }
    if (scheme.is<Mu>()) {
        const wide mu = scheme.as<Mu>().mu;
        auto ratio = [mu](std::int64_t n) { return (wide(1) + mu * wide(n)) / wide(n); };
        return detail::sum_ratio_series(x, ratio, limit_ratio, policy, radius);
    }
    auto ratio = [&scheme](std::int64_t n) {
        const double f = phi(scheme, static_cast<long>(n));
        if (f == 0.0) {
            throw DomainError("phi-exponential undefined: phi(" + std::to_string(n) + ") = 0");
        }
        return wide(1) / wide(f);
    };
    return detail::sum_ratio_series(x, ratio, limit_ratio, policy, radius);
}

template SeriesResult<double> phi_exp_series(const DeformationScheme&, const double&,
                                             const EvalPolicy&);
template SeriesResult<std::complex<double>> phi_exp_series(const DeformationScheme&,
                                                           const std::complex<double>&,
                                                           const EvalPolicy&);

RealSeries phi_exp_coefficients(const DeformationScheme& scheme, Eigen::Index order) {
    RealSeries out = RealSeries::zero(order);
    out.coeffs()[0] = 1.0;
    if (scheme.is<Tsallis>()) {
        const double q = scheme.as<Tsallis>().q;
        for (Eigen::Index n = 1; n <= order; ++n) {
            out.coeffs()[n] =
                out.coeffs()[n - 1] * (1.0 + (q - 1.0) * static_cast<double>(n - 1)) /
                static_cast<double>(n);
        }
        return out;
    }
    for (Eigen::Index n = 1; n <= order; ++n) {
        const double f = phi(scheme, static_cast<long>(n));
        if (f == 0.0) {
            throw DomainError("phi-exponential undefined: phi(" + std::to_string(n) + ") = 0");
        }
        out.coeffs()[n] = out.coeffs()[n - 1] / f;
    }
    return out;
}

double borges_Q(double q, long n) {
    if (n < 0) throw PreconditionError("borges_Q requires n >= 0");
    double acc = 1.0;
    for (long j = 1; j <= n; ++j) acc *= 1.0 + (q - 1.0) * static_cast<double>(j);
    return acc;
}

double pochhammer(double tau, long n) {
    if (n < 0) throw PreconditionError("pochhammer requires n >= 0");
    double acc = 1.0;
    for (long j = 0; j < n; ++j) acc *= tau + static_cast<double>(j);
    return acc;
}

PochhammerIdentityReport verify_pochhammer_identity(double tau, long n_max) {
    if (n_max < 2) throw PreconditionError("verify_pochhammer_identity requires n_max >= 2");
    PochhammerIdentityReport report;
    report.tau = tau;
    for (long n = 2; n <= n_max; ++n) {
        double partial = 0.0;  // sum_{j<n} (tau)_j / j!
        double term = 1.0;
        for (long j = 0; j < n; ++j) {
            partial += term;
            term *= (tau + static_cast<double>(j)) / static_cast<double>(j + 1);
        }
        double factorial = 1.0;  // (n-1)!
        for (long j = 2; j < n; ++j) factorial *= static_cast<double>(j);

        const double lhs = pochhammer(tau, n);
        const double rhs = factorial * tau * partial;
        const double scale = std::abs(lhs) > 0.0 ? std::abs(lhs) : 1.0;
        const double r = std::abs(lhs - rhs) / scale;
        report.residuals.push_back(r);
        report.max_rel_residual = std::max(report.max_rel_residual, r);
    }
    return report;
}

SeriesResult<double> hyp1F0(double a, double z, const EvalPolicy& policy) {
    const bool terminates = is_nonpositive_integer(a);
    if (!terminates && !(std::abs(z) < 1.0)) {
        throw DivergenceError("1F0 series diverges for |z| >= 1", 1.0);
    }
    const wide wa = a;
    auto ratio = [wa](std::int64_t n) { return (wa + wide(n - 1)) / wide(n); };
    return detail::sum_ratio_series(z, ratio, terminates ? 0.0 : 1.0, policy, 1.0);
}

SeriesResult<double> hyp2F1(double a, double b, double c, double z, const EvalPolicy& policy) {
    if (is_nonpositive_integer(c)) {
        throw PreconditionError("2F1 requires c not to be a nonpositive integer");
    }
    const bool terminates = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    if (!terminates && !(std::abs(z) < 1.0)) {
        throw DivergenceError("2F1 series diverges for |z| >= 1", 1.0);
    }
    const wide wa = a, wb = b, wc = c;
    auto ratio = [=](std::int64_t n) {
        const wide k = wide(n - 1);
        return (wa + k) * (wb + k) / ((wc + k) * wide(n));
    };
    return detail::sum_ratio_series(z, ratio, terminates ? 0.0 : 1.0, policy, 1.0);
}

QGaussian q_gaussian_approx(double q, double beta, double x) {
    const double s = q - 1.0;
    const double bx2 = beta * x * x;
    const double exponent = -bx2 + 0.5 * s * bx2 * bx2 - (s * s / 3.0) * bx2 * bx2 * bx2;
    return {std::exp(exponent), tsallis_exp_closed(q, -bx2)};
}

}  // namespace deformed
