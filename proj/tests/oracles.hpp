#pragma once

// Reference evaluations used by the tests. They share no code with the
// library: long double arithmetic, direct sums and products, no recurrences
// from src/.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using real = long double;

inline real tsallis_number(real q, long n) {
    if (n == 0) return 0;
    return real(n) / (1 + (q - 1) * real(n - 1));
}

// Geometric sums instead of closed quotients.
inline real q_number(real q, long n) {
    real s = 0, p = 1;
    for (long j = 0; j < n; ++j, p *= q) s += p;
    return s;
}

inline real symmetric_number(real q, long n) {
    real s = 0;
    for (long j = 0; j < n; ++j) s += std::pow(q, real(n - 1 - 2 * j));
    return s;
}

inline real pq_number(real p, real q, long n) {
    real s = 0;
    for (long j = 0; j < n; ++j) s += std::pow(p, real(n - 1 - j)) * std::pow(q, real(j));
    return s;
}

inline real mu_number(real mu, long n) { return real(n) / (1 + mu * real(n)); }

template <class Phi>
real factorial(Phi phi, long n) {
    real f = 1;
    for (long j = 1; j <= n; ++j) f *= phi(j);
    return f;
}

inline real tsallis_exp(real q, real x) {
    if (q == 1) return std::exp(x);
    const real base = 1 + (1 - q) * x;
    if (base <= 0) return 0;
    return std::pow(base, 1 / (1 - q));
}

inline real tsallis_log(real q, real x) {
    if (q == 1) return std::log(x);
    return (std::pow(x, 1 - q) - 1) / (1 - q);
}

// sum x^n / prod_{j<=n} phi(j) with terms built one factor at a time.
template <class Phi>
real phi_exp(Phi phi, real x, long terms) {
    real s = 0, t = 1;
    for (long n = 0; n < terms; ++n) {
        if (n > 0) t *= x / phi(n);
        s += t;
    }
    return s;
}

inline real rising(real tau, long n) {
    real r = 1;
    for (long j = 0; j < n; ++j) r *= tau + real(j);
    return r;
}

inline real hyp2F1(real a, real b, real c, real z, long terms) {
    real s = 0;
    for (long n = 0; n < terms; ++n) {
        real fact = 1;
        for (long j = 1; j <= n; ++j) fact *= real(j);
        s += rising(a, n) * rising(b, n) / rising(c, n) * std::pow(z, real(n)) / fact;
    }
    return s;
}

// Two-point finite difference at high precision, for cross-checks only.
template <class F>
real derivative(F f, real x) {
    const real h = 1e-6L * std::max<real>(1, std::abs(x));
    return (f(x + h) - f(x - h)) / (2 * h);
}

inline double rel(double value, double reference) {
    const double d = std::abs(value - reference);
    return reference == 0.0 ? d : d / std::abs(reference);
}

}  // namespace oracle

namespace gen {

// Shared seed so that failures reproduce.
inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(20240917);
    return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline std::complex<double> disk(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    return std::polar(r, uniform(-3.14159, 3.14159));
}

inline std::vector<double> vector(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
}

}  // namespace gen
