#include "deformed/fock.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace deformed {

FockTriple::FockTriple(DeformationScheme scheme, Eigen::MatrixXd a, Eigen::VectorXd phi_values)
    : scheme_(std::move(scheme)),
      a_(std::move(a)),
      a_dagger_(a_.transpose()),
      n_op_(Eigen::VectorXd::LinSpaced(a_.rows(), 0.0, double(a_.rows() - 1)).asDiagonal()),
      phi_(std::move(phi_values)) {}

FockTriple build_fock(const DeformationScheme& scheme, Eigen::Index dim) {
    if (dim < 2 || dim > kMaxFockDim) {
        throw PreconditionError("Fock dimension must lie in [2, " + std::to_string(kMaxFockDim) +
                                "], got " + std::to_string(dim));
    }
    Eigen::VectorXd phis(dim);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        phis[n] = phi(scheme, static_cast<long>(n));
        if (phis[n] < 0.0) {
            throw DomainError("phi(" + std::to_string(n) +
                              ") is negative; no Fock representation exists");
        }
        if (n >= 1) a(n - 1, n) = std::sqrt(phis[n]);
    }
    return FockTriple(scheme, std::move(a), std::move(phis));
}

double commutator_residual(const FockTriple& t) {
    const Eigen::Index m = t.dim() - 1;
    const Eigen::MatrixXd comm = t.a() * t.a_dagger() - t.a_dagger() * t.a();
    const Eigen::VectorXd& phis = t.phi_values();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const double scale = std::max({1.0, std::abs(phis[i]), std::abs(phis[i + 1])});
        for (Eigen::Index j = 0; j < m; ++j) {
            const double expected = i == j ? phis[i + 1] - phis[i] : 0.0;
            worst = std::max(worst, std::abs(comm(i, j) - expected) / scale);
        }
    }
    return worst;
}

double energy_level(const DeformationScheme& scheme, long n) {
    if (n < 0) throw PreconditionError("energy level index must be nonnegative");
    return 0.5 * (phi(scheme, n + 1) + phi(scheme, n));
}

SpectrumReport spectrum_report(const DeformationScheme& scheme, long n_max) {
    if (n_max < 1) throw PreconditionError("spectrum_report requires n_max >= 1");
    SpectrumReport r;
    r.levels.reserve(static_cast<std::size_t>(n_max) + 1);
    for (long n = 0; n <= n_max; ++n) r.levels.push_back(energy_level(scheme, n));
    r.gaps.reserve(static_cast<std::size_t>(n_max));
    for (long n = 0; n < n_max; ++n) r.gaps.push_back(r.levels[n + 1] - r.levels[n]);
    r.band_top = scheme.is_builtin() ? radius_of_convergence(scheme)
                                     : std::numeric_limits<double>::quiet_NaN();
    r.band_width = r.band_top - r.levels[1];
    return r;
}

TruncatedHamiltonian hamiltonian(const FockTriple& t) {
    Eigen::MatrixXd h = 0.5 * (t.a() * t.a_dagger() + t.a_dagger() * t.a());
    return {std::move(h), t.dim() - 1};
}

Eigen::VectorXd state_from_vacuum(const FockTriple& t, Eigen::Index n) {
    if (n < 0 || n >= t.dim()) {
        throw RangeError("state index " + std::to_string(n) + " outside Fock dimension " +
                             std::to_string(t.dim()),
                         static_cast<long>(n));
    }
    Eigen::VectorXd v = Eigen::VectorXd::Unit(t.dim(), 0);
    for (Eigen::Index k = 0; k < n; ++k) v = t.a_dagger() * v;
    if (n == 0) return v;
    const double log_norm = phi_factorial(t.scheme(), static_cast<long>(n), true);
    return v * std::exp(-0.5 * log_norm);
}

}  // namespace deformed
