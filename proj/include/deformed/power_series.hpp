#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <complex>
#include <initializer_list>

#include "deformed/errors.hpp"

namespace deformed {

/// Truncated formal power series sum_{n=0..order} c_n x^n.
template <class Scalar>
class PowerSeries {
public:
    using Coefficients = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    PowerSeries() : coeffs_(Coefficients::Zero(1)) {}
    explicit PowerSeries(Coefficients coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.size() == 0) throw PreconditionError("a power series needs at least one coefficient");
    }
    PowerSeries(std::initializer_list<Scalar> coeffs) : coeffs_(static_cast<Eigen::Index>(coeffs.size())) {
        if (coeffs.size() == 0) throw PreconditionError("a power series needs at least one coefficient");
        std::copy(coeffs.begin(), coeffs.end(), coeffs_.data());
    }

    static PowerSeries zero(Eigen::Index order) { return PowerSeries(Coefficients::Zero(order + 1)); }
    static PowerSeries monomial(Eigen::Index n, Scalar c = Scalar(1)) {
        PowerSeries s = zero(n);
        s.coeffs_[n] = c;
        return s;
    }

    Eigen::Index order() const noexcept { return coeffs_.size() - 1; }
    const Coefficients& coeffs() const noexcept { return coeffs_; }
    Coefficients& coeffs() noexcept { return coeffs_; }

    /// Coefficient of x^n; zero past the stored order.
    Scalar operator[](Eigen::Index n) const { return n <= order() ? coeffs_[n] : Scalar(0); }

    /// Horner evaluation.
    template <class X>
    auto operator()(const X& x) const {
        using R = decltype(Scalar{} * X{});
        R acc(0);
        for (Eigen::Index n = order(); n >= 0; --n) acc = acc * x + coeffs_[n];
        return acc;
    }

    /// Copy truncated or zero-padded to the given order.
    PowerSeries resized(Eigen::Index new_order) const {
        PowerSeries out = zero(new_order);
        const Eigen::Index m = std::min(order(), new_order) + 1;
        out.coeffs_.head(m) = coeffs_.head(m);
        return out;
    }

private:
    Coefficients coeffs_;
};

template <class Scalar>
PowerSeries<Scalar> operator+(const PowerSeries<Scalar>& a, const PowerSeries<Scalar>& b) {
    const Eigen::Index order = std::max(a.order(), b.order());
    PowerSeries<Scalar> out = a.resized(order);
    out.coeffs().head(b.order() + 1) += b.coeffs();
    return out;
}

template <class Scalar>
PowerSeries<Scalar> operator*(Scalar k, const PowerSeries<Scalar>& a) {
    return PowerSeries<Scalar>(typename PowerSeries<Scalar>::Coefficients(k * a.coeffs()));
}

/// Cauchy product truncated to `order`.
template <class Scalar>
PowerSeries<Scalar> cauchy_product(const PowerSeries<Scalar>& a, const PowerSeries<Scalar>& b,
                                   Eigen::Index order) {
    PowerSeries<Scalar> out = PowerSeries<Scalar>::zero(order);
    for (Eigen::Index n = 0; n <= order; ++n) {
        Scalar acc(0);
        for (Eigen::Index j = 0; j <= n; ++j) acc += a[j] * b[n - j];
        out.coeffs()[n] = acc;
    }
    return out;
}

using RealSeries = PowerSeries<double>;
using ComplexSeries = PowerSeries<std::complex<double>>;

}  // namespace deformed
