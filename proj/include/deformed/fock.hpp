#pragma once

#include <Eigen/Core>

#include <vector>

#include "deformed/scheme.hpp"

namespace deformed {

/// Largest Fock dimension accepted by build_fock; matrices are stored dense.
inline constexpr Eigen::Index kMaxFockDim = 4096;

/// Truncated matrix representation of (a, a^dagger, N) on span{|0>, ..., |D-1>}.
///
/// a^dagger |n> = sqrt(phi(n+1)) |n+1>, a |n> = sqrt(phi(n)) |n-1>. The last
/// basis direction is a truncation artifact: a a^dagger is wrong there.
class FockTriple {
public:
    const DeformationScheme& scheme() const noexcept { return scheme_; }
    Eigen::Index dim() const noexcept { return a_.rows(); }
    const Eigen::MatrixXd& a() const noexcept { return a_; }
    const Eigen::MatrixXd& a_dagger() const noexcept { return a_dagger_; }
    const Eigen::MatrixXd& n_op() const noexcept { return n_op_; }
    /// phi(0), ..., phi(D-1) as used to fill the ladder.
    const Eigen::VectorXd& phi_values() const noexcept { return phi_; }

private:
    friend FockTriple build_fock(const DeformationScheme& scheme, Eigen::Index dim);
    FockTriple(DeformationScheme scheme, Eigen::MatrixXd a, Eigen::VectorXd phi_values);

    DeformationScheme scheme_;
    Eigen::MatrixXd a_;
    Eigen::MatrixXd a_dagger_;
    Eigen::MatrixXd n_op_;
    Eigen::VectorXd phi_;
};

/// Requires 2 <= dim <= kMaxFockDim and phi(n) >= 0 for n < dim.
FockTriple build_fock(const DeformationScheme& scheme, Eigen::Index dim);

/// Largest deviation of [a, a^dagger] from diag(phi(n+1) - phi(n)) on the
/// leading (D-1)x(D-1) block. Each row is scaled by max(1, |phi(i)|, |phi(i+1)|),
/// so the value is an absolute deviation whenever phi stays O(1) and a
/// relative one for rapidly growing families, where sqrt(phi)^2 cannot
/// reproduce phi to better than an ulp of phi.
double commutator_residual(const FockTriple& t);

/// E_n = (phi(n+1) + phi(n)) / 2.
double energy_level(const DeformationScheme& scheme, long n);

struct SpectrumReport {
    std::vector<double> levels;  ///< E_0 .. E_{n_max}
    std::vector<double> gaps;    ///< gaps[n] = levels[n+1] - levels[n]
    double band_top = 0.0;       ///< lim E_n; infinite for unbounded spectra, NaN if unknown
    double band_width = 0.0;     ///< band_top - E_1
};

SpectrumReport spectrum_report(const DeformationScheme& scheme, long n_max);

struct TruncatedHamiltonian {
    Eigen::MatrixXd matrix;
    /// Diagonal entry polluted by the truncation corner (always D-1).
    Eigen::Index polluted_index;
};

/// H = (a a^dagger + a^dagger a) / 2 assembled from the truncated ladder.
TruncatedHamiltonian hamiltonian(const FockTriple& t);

/// (a^dagger)^n |0> / sqrt(phi(n)!); equals the n-th basis vector.
Eigen::VectorXd state_from_vacuum(const FockTriple& t, Eigen::Index n);

}  // namespace deformed
