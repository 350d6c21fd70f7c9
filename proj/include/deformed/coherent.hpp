#pragma once

#include <Eigen/Core>

#include <complex>

#include "deformed/scheme.hpp"
#include "deformed/series_policy.hpp"

namespace deformed {

/// Truncated coherent state |alpha> = N sum_n alpha^n / sqrt(phi(n)!) |n>,
/// N = 1 / sqrt(e_phi(|alpha|^2)).
struct CoherentState {
    std::complex<double> alpha;
    DeformationScheme scheme;
    Eigen::Index dim;
    /// Unnormalized entries alpha^n / sqrt(phi(n)!), n < dim.
    Eigen::VectorXcd coefficients;
    double norm_const;

    Eigen::VectorXcd vector() const { return norm_const * coefficients; }
};

/// max(64, ceil(40 / (1 - |alpha|^2 / radius))).
Eigen::Index default_coherent_dimension(const DeformationScheme& scheme, std::complex<double> alpha);

/// Throws DivergenceError (a DomainError) unless |alpha|^2 lies strictly inside
/// the scheme's radius of convergence. The normalization series is summed to
/// full double precision by default.
CoherentState coherent_state(const DeformationScheme& scheme, std::complex<double> alpha,
                             Eigen::Index dim, const EvalPolicy& policy = EvalPolicy{1e-16});

/// max |(a v - alpha v)[n]| over n <= dim/2 for the normalized truncated state.
double eigen_residual(const CoherentState& state);

/// max |(a v - alpha v)[n]| over all n, including the truncation corner where
/// the missing |dim> component shows up as |alpha v[dim-1]|.
double truncation_residual(const CoherentState& state);

/// Boson-basis coefficients sqrt(Q_{n-1}) alpha^n / sqrt(n!) of the Tsallis
/// f-coherent state (n = 0 entry is 1), computed in the log domain from the
/// Borges product.
Eigen::VectorXcd f_coherent_coefficients(double q, std::complex<double> alpha, Eigen::Index dim);

struct NumberMoment {
    double mean;       ///< sum n |v_n|^2
    double tail_mass;  ///< 1 - sum |v_n|^2, probability lost to truncation
};

NumberMoment expected_n(const CoherentState& state);

}  // namespace deformed
