#pragma once

// Series summation with quad-precision (binary128) accumulation. Coefficient
// ratios and powers are carried in 113-bit precision so alternating series
// with large intermediate terms keep full double accuracy in the result.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <type_traits>

#include "deformed/series_policy.hpp"

namespace deformed::detail {

using wide = __float128;

struct WideComplex {
    wide re = 0;
    wide im = 0;

    friend WideComplex operator*(const WideComplex& a, const WideComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend WideComplex operator*(wide k, const WideComplex& a) { return {k * a.re, k * a.im}; }
    WideComplex& operator+=(const WideComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    double magnitude() const {
        return std::hypot(static_cast<double>(re), static_cast<double>(im));
    }
};

inline WideComplex widen(double x) { return {wide(x), wide(0)}; }
inline WideComplex widen(const std::complex<double>& x) { return {wide(x.real()), wide(x.imag())}; }

template <class Scalar>
Scalar narrow(const WideComplex& z) {
    if constexpr (std::is_same_v<Scalar, double>) {
        return static_cast<double>(z.re);
    } else {
        return Scalar(static_cast<double>(z.re), static_cast<double>(z.im));
    }
}

/// Sums sum_n c_n x^n with c_0 = 1 and c_n = c_{n-1} * ratio(n).
///
/// `limit_ratio` is lim |ratio(n)| (0 for entire series); together with the
/// next ratio it bounds the geometric tail used for the stopping test.
/// A zero coefficient terminates the series.
template <class Scalar, class RatioFn>
SeriesResult<Scalar> sum_ratio_series(const Scalar& x, RatioFn&& ratio, double limit_ratio,
                                      const EvalPolicy& policy, double radius) {
    policy.validate();
    const WideComplex wx = widen(x);
    const double abs_x = std::abs(x);

    WideComplex sum{1, 0};
    WideComplex power{1, 0};
    wide coeff = 1;
    double abs_sum = 1.0;

    SeriesDiagnostics diag;
    diag.terms_used = 1;
    diag.last_term_magnitude = 1.0;
    if (abs_x == 0.0) {
        diag.converged = true;
        return {narrow<Scalar>(sum), diag};
    }

    wide next = ratio(1);
    for (std::int64_t n = 1; n < policy.max_terms; ++n) {
        coeff *= next;
        power = power * wx;
        const WideComplex term = coeff * power;
        sum += term;
        const double tmag = term.magnitude();
        abs_sum += tmag;
        diag.terms_used = n + 1;
        diag.last_term_magnitude = tmag;

        if (coeff == 0) {
            diag.converged = true;
            break;
        }
        next = ratio(n + 1);
        const double rho =
            std::max(std::abs(static_cast<double>(next)), limit_ratio) * abs_x;
        const double smag = sum.magnitude();
        if (rho < 1.0 && tmag * rho / (1.0 - rho) <= policy.rel_tol * smag) {
            diag.converged = true;
            break;
        }
    }
    const double smag = sum.magnitude();
    diag.cancellation = smag > 0.0 ? abs_sum / smag : kInfinity;
    if (!diag.converged) {
        throw DivergenceError("series did not converge within " +
                                  std::to_string(policy.max_terms) +
                                  " terms (radius of convergence " + std::to_string(radius) + ")",
                              radius);
    }
    return {narrow<Scalar>(sum), diag};
}

}  // namespace deformed::detail
