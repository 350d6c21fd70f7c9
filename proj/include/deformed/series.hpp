#pragma once

#include <complex>
#include <vector>

#include "deformed/power_series.hpp"
#include "deformed/scheme.hpp"
#include "deformed/series_policy.hpp"

namespace deformed {

// Tsallis q-exponential and q-logarithm in closed form (real arguments).

/// e_q(x) = (1 + (1-q)x)^(1/(1-q)) where the base is nonnegative, 0 otherwise;
/// exp(x) at q = 1.
double tsallis_exp_closed(double q, double x);

/// ln_q(x) = (x^(1-q) - 1) / (1 - q); ln(x) at q = 1. Requires x > 0.
double tsallis_log(double q, double x);

/// Partial sums of the phi-exponential sum_n x^n / phi(n)!.
///
/// Throws DivergenceError when |x| is not strictly inside the radius of
/// convergence, or when max_terms is exhausted. Accumulation runs in quad
/// precision, so alternating sums such as e_q(x) for large negative x keep
/// their relative accuracy.
template <class Scalar>
SeriesResult<Scalar> phi_exp_series(const DeformationScheme& scheme, const Scalar& x,
                                    const EvalPolicy& policy = {});

extern template SeriesResult<double> phi_exp_series(const DeformationScheme&, const double&,
                                                    const EvalPolicy&);
extern template SeriesResult<std::complex<double>> phi_exp_series(const DeformationScheme&,
                                                                  const std::complex<double>&,
                                                                  const EvalPolicy&);

/// Taylor coefficients 1/phi(n)! of the phi-exponential through `order`.
/// For Tsallis schemes the Borges recurrence c_n = c_{n-1}(1+(q-1)(n-1))/n
/// is used, which stays defined past the q < 1 pole of phi.
RealSeries phi_exp_coefficients(const DeformationScheme& scheme, Eigen::Index order);

/// Q_0 = 1, Q_n = q(2q-1)(3q-2)...(nq-(n-1)).
double borges_Q(double q, long n);

/// Coefficients of exp(a(x)) for a series with a_0 = 0, through `order`:
/// c_0 = 1, c_n = a_n + (1/n) sum_{j=1}^{n-1} j c_{n-j} a_j.
template <class Scalar>
PowerSeries<Scalar> exp_series_compose(const PowerSeries<Scalar>& a, Eigen::Index order) {
    if (a[0] != Scalar(0)) {
        throw PreconditionError("exp_series_compose requires a zero constant term");
    }
    PowerSeries<Scalar> c = PowerSeries<Scalar>::zero(order);
    c.coeffs()[0] = Scalar(1);
    for (Eigen::Index n = 1; n <= order; ++n) {
        Scalar acc(0);
        for (Eigen::Index j = 1; j < n; ++j) acc += Scalar(double(j)) * c[n - j] * a[j];
        c.coeffs()[n] = a[n] + acc / Scalar(double(n));
    }
    return c;
}

/// Rising factorial (tau)_n = tau (tau+1) ... (tau+n-1), (tau)_0 = 1.
double pochhammer(double tau, long n);

struct PochhammerIdentityReport {
    double tau = 0.0;
    /// residuals[i] is the relative residual at n = i + 2.
    std::vector<double> residuals;
    double max_rel_residual = 0.0;
};

/// Checks (tau)_n = (n-1)! tau sum_{j=0}^{n-1} (tau)_j / j! for 2 <= n <= n_max.
PochhammerIdentityReport verify_pochhammer_identity(double tau, long n_max);

/// 1F0(a;-;z) = sum (a)_n z^n / n!. Requires |z| < 1 unless a is a
/// nonpositive integer (terminating series).
SeriesResult<double> hyp1F0(double a, double z, const EvalPolicy& policy = {});

/// Gauss 2F1(a,b;c;z) by its defining series, |z| < 1 (or terminating).
SeriesResult<double> hyp2F1(double a, double b, double c, double z, const EvalPolicy& policy = {});

struct QGaussian {
    double approx;
    double exact;
};

/// Three-term exponential approximation of e_q(-beta x^2) next to the exact value.
QGaussian q_gaussian_approx(double q, double beta, double x);

}  // namespace deformed
