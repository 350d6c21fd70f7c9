#include "deformed/coherent.hpp"

#include <cmath>
#include <string>

#include "deformed/fock.hpp"
#include "deformed/series.hpp"

namespace deformed {

namespace {

double checked_radius(const DeformationScheme& scheme, std::complex<double> alpha) {
    const double radius = scheme.is_builtin() ? radius_of_convergence(scheme) : kInfinity;
    const double mod2 = std::norm(alpha);
    if (mod2 != 0.0 && !(mod2 < radius)) {
        throw DivergenceError("coherent state needs e_phi(|alpha|^2) < infinity: |alpha|^2 = " +
                                  std::to_string(mod2) + " is outside radius " +
                                  std::to_string(radius),
                              radius);
    }
    return radius;
}

}  // namespace

Eigen::Index default_coherent_dimension(const DeformationScheme& scheme, std::complex<double> alpha) {
    const double radius = checked_radius(scheme, alpha);
    const double fill = std::isfinite(radius) ? std::norm(alpha) / radius : 0.0;
    const double heuristic = std::ceil(40.0 / (1.0 - fill));
    return std::max<Eigen::Index>(64, static_cast<Eigen::Index>(heuristic));
}

CoherentState coherent_state(const DeformationScheme& scheme, std::complex<double> alpha,
                             Eigen::Index dim, const EvalPolicy& policy) {
    if (dim < 1) throw PreconditionError("coherent state dimension must be positive");
    checked_radius(scheme, alpha);

    Eigen::VectorXcd c(dim);
    c[0] = 1.0;
    for (Eigen::Index n = 1; n < dim; ++n) {
        const double f = phi(scheme, static_cast<long>(n));
        if (!(f > 0.0)) {
            throw DomainError("coherent coefficients need phi(n) > 0; phi(" + std::to_string(n) +
                              ") = " + std::to_string(f));
        }
        c[n] = c[n - 1] * alpha / std::sqrt(f);
    }
    const double e = phi_exp_series(scheme, std::norm(alpha), policy).value;
    return CoherentState{alpha, scheme, dim, std::move(c), 1.0 / std::sqrt(e)};
}

namespace {

Eigen::VectorXcd eigen_defect(const CoherentState& state) {
    const FockTriple t = build_fock(state.scheme, state.dim);
    const Eigen::VectorXcd v = state.vector();
    return t.a().cast<std::complex<double>>() * v - state.alpha * v;
}

}  // namespace

double eigen_residual(const CoherentState& state) {
    if (state.dim < 4) throw PreconditionError("eigen_residual requires dim >= 4");
    return eigen_defect(state).head(state.dim / 2 + 1).cwiseAbs().maxCoeff();
}

double truncation_residual(const CoherentState& state) {
    if (state.dim < 2) throw PreconditionError("truncation_residual requires dim >= 2");
    return eigen_defect(state).cwiseAbs().maxCoeff();
}

Eigen::VectorXcd f_coherent_coefficients(double q, std::complex<double> alpha, Eigen::Index dim) {
    const DeformationScheme scheme = DeformationScheme::tsallis(q);
    if (dim < 1) throw PreconditionError("coherent state dimension must be positive");
    checked_radius(scheme, alpha);

    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    out[0] = 1.0;
    if (alpha == 0.0) return out;

    const double log_abs_alpha = std::log(std::abs(alpha));
    const double phase = std::arg(alpha);
    double log_q = 0.0;  // log Q_{n-1}
    for (Eigen::Index n = 1; n < dim; ++n) {
        if (n >= 2) {
            const double factor = 1.0 + (q - 1.0) * static_cast<double>(n - 1);
            if (factor == 0.0) break;  // Q vanishes from here on
            if (factor < 0.0) {
                throw DomainError("Borges product turns negative at n = " + std::to_string(n));
            }
            log_q += std::log(factor);
        }
        const double nd = static_cast<double>(n);
        const double log_mag = 0.5 * (log_q - std::lgamma(nd + 1.0)) + nd * log_abs_alpha;
        out[n] = std::polar(std::exp(log_mag), nd * phase);
    }
    return out;
}

NumberMoment expected_n(const CoherentState& state) {
    const Eigen::VectorXd prob = state.vector().cwiseAbs2();
    const Eigen::VectorXd n = Eigen::VectorXd::LinSpaced(state.dim, 0.0, double(state.dim - 1));
    return {n.dot(prob), 1.0 - prob.sum()};
}

}  // namespace deformed
