#pragma once

#include <algorithm>
#include <complex>
#include <functional>
#include <type_traits>
#include <vector>

#include "deformed/power_series.hpp"
#include "deformed/scheme.hpp"

namespace deformed {

struct QuadratureSpec {
    int base_nodes = 32;
    /// Stop once successive refinements differ by less than
    /// abs_tol * max(1, |estimate|).
    double abs_tol = 1e-10;
    int max_refinements = 12;

    void validate() const;
};

/// Black-box real function with an optional exact derivative.
struct SampledFunction {
    std::function<double(double)> eval;
    std::function<double(double)> deriv;

    bool has_derivative() const noexcept { return static_cast<bool>(deriv); }
};

/// Tolerance the quadrature falls back to when F' comes from finite differences.
inline constexpr double kFiniteDifferenceTolerance = 1e-6;

/// Central difference with h = eps^(1/3) * max(1, |u|).
double central_difference(const std::function<double(double)>& f, double u);

// Difference-quotient derivatives. All require x != 0.

/// (f(x) - f(qx)) / ((1-q)x), q != 1.
double jackson_derivative(const SampledFunction& f, double x, double q);

/// (f(x/q) - f(qx)) / ((1/q - q)x), q not in {0, 1, -1}.
double symmetric_derivative(const SampledFunction& f, double x, double q);

/// (f(px) - f(qx)) / ((p-q)x), p != q.
double pq_derivative(const SampledFunction& f, double x, double p, double q);

struct GaussLegendreRule {
    std::vector<double> nodes;    ///< on [-1, 1], ascending
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
GaussLegendreRule gauss_legendre(int n);

struct QuadratureResult {
    double value = 0.0;
    int refinements = 0;
    double last_change = 0.0;
    /// Set when F' was replaced by central differences.
    bool reduced_accuracy = false;
};

/// Tsallis deformed derivative int_0^1 dt t^(1-q) d/dx F(t^(q-1) x), evaluated as
/// int_0^1 F'(t^(q-1) x) dt on panels graded geometrically towards t = 0,
/// where t^(q-1) is not smooth. Supports q in [1, 2]; q = 1 returns F'(x).
/// Throws AccuracyError if refinement does not settle.
QuadratureResult tsallis_derivative_quadrature(const SampledFunction& f, double x, double q,
                                               const QuadratureSpec& quad = {});

namespace detail {
template <class Scalar>
Scalar conj_if_complex(const Scalar& v) {
    if constexpr (std::is_same_v<Scalar, std::complex<double>>) {
        return std::conj(v);
    } else {
        return v;
    }
}
}  // namespace detail

/// x^n -> phi(n) x^(n-1) applied coefficient-wise.
template <class Scalar>
PowerSeries<Scalar> derivative_on_series(const PowerSeries<Scalar>& s, const DeformationScheme& scheme) {
    if (s.order() == 0) return PowerSeries<Scalar>::zero(0);
    PowerSeries<Scalar> out = PowerSeries<Scalar>::zero(s.order() - 1);
    for (Eigen::Index n = 1; n <= s.order(); ++n) {
        // Zero coefficients are skipped so that poles of phi past a
        // terminating series are never evaluated.
        if (s[n] == Scalar(0)) continue;
        out.coeffs()[n - 1] = Scalar(phi(scheme, static_cast<long>(n))) * s[n];
    }
    return out;
}

/// x^n -> [n]_(q-1) x^(n-1).
template <class Scalar>
PowerSeries<Scalar> tsallis_derivative_series(const PowerSeries<Scalar>& s, double q) {
    return derivative_on_series(s, DeformationScheme::tsallis(q));
}

/// x^n -> x^(n+1) / [n+1]_(q-1); inverse of tsallis_derivative_series up to
/// the constant term.
template <class Scalar>
PowerSeries<Scalar> tsallis_integral_series(const PowerSeries<Scalar>& s, double q) {
    const DeformationScheme scheme = DeformationScheme::tsallis(q);
    PowerSeries<Scalar> out = PowerSeries<Scalar>::zero(s.order() + 1);
    for (Eigen::Index n = 0; n <= s.order(); ++n) {
        out.coeffs()[n + 1] = s[n] / Scalar(phi(scheme, static_cast<long>(n + 1)));
    }
    return out;
}

/// <f|g>_phi = [f*(D_phi) g](0) = sum_n conj(f_n) g_n phi(n)!.
template <class Scalar>
Scalar bargmann_inner_product(const PowerSeries<Scalar>& f, const PowerSeries<Scalar>& g,
                              const DeformationScheme& scheme) {
    const Eigen::Index order = std::min(f.order(), g.order());
    Scalar acc(0);
    double factorial = 1.0;
    for (Eigen::Index n = 0; n <= order; ++n) {
        if (n > 0) factorial *= phi(scheme, static_cast<long>(n));
        acc += detail::conj_if_complex(f[n]) * g[n] * Scalar(factorial);
    }
    return acc;
}

}  // namespace deformed
