#include <doctest.h>

#include <cmath>
#include <limits>

#include "deformed/fock.hpp"
#include "oracles.hpp"

using namespace deformed;

namespace {

std::vector<DeformationScheme> builtins() {
    return {DeformationScheme::boson(),           DeformationScheme::q_oscillator(0.5),
            DeformationScheme::q_oscillator(1.5), DeformationScheme::symmetric_q(1.05),
            DeformationScheme::pq(0.5, 2.0),      DeformationScheme::tsallis(1.5),
            DeformationScheme::tsallis(2.0),      DeformationScheme::mu(0.3)};
}

}  // namespace

TEST_CASE("ladder entries") {
    const FockTriple b = build_fock(DeformationScheme::boson(), 4);
    CHECK(b.a()(0, 1) == 1.0);
    CHECK(b.a()(1, 2) == doctest::Approx(std::sqrt(2.0)));
    CHECK(b.a()(2, 3) == doctest::Approx(std::sqrt(3.0)));
    CHECK(b.a().sum() == doctest::Approx(1.0 + std::sqrt(2.0) + std::sqrt(3.0)));
    CHECK((b.a_dagger() - b.a().transpose()).norm() == 0.0);
    for (Eigen::Index n = 0; n < 4; ++n) CHECK(b.n_op()(n, n) == double(n));

    const FockTriple t2 = build_fock(DeformationScheme::tsallis(2.0), 5);
    for (Eigen::Index i = 0; i < 5; ++i)
        for (Eigen::Index j = 0; j < 5; ++j) CHECK(t2.a()(i, j) == (j == i + 1 ? 1.0 : 0.0));

    const FockTriple t15 = build_fock(DeformationScheme::tsallis(1.5), 3);
    CHECK(t15.a()(1, 2) == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("build_fock preconditions") {
    CHECK_THROWS_AS(build_fock(DeformationScheme::boson(), 1), PreconditionError);
    CHECK_THROWS_AS(build_fock(DeformationScheme::boson(), kMaxFockDim + 1), PreconditionError);
    // phi_T(n) < 0 past the pole for q = 0.6 (n > 3.5).
    CHECK_THROWS_AS(build_fock(DeformationScheme::tsallis(0.6), 8), DomainError);
    CHECK_NOTHROW(build_fock(DeformationScheme::tsallis(0.6), 4));
}

TEST_CASE("commutator residual examples") {
    CHECK(commutator_residual(build_fock(DeformationScheme::boson(), 8)) < 1e-14);
    CHECK(commutator_residual(build_fock(DeformationScheme::tsallis(1.5), 32)) < 1e-12);
    CHECK(commutator_residual(build_fock(DeformationScheme::pq(0.5, 2.0), 16)) < 1e-12);
}

TEST_CASE("energy levels") {
    for (long n = 0; n < 50; ++n) CHECK(energy_level(DeformationScheme::tsallis(1.0), n) == double(n) + 0.5);
    for (double q : {1.0, 1.2, 1.5, 1.99}) CHECK(energy_level(DeformationScheme::tsallis(q), 0) == 0.5);
    CHECK(energy_level(DeformationScheme::tsallis(1.5), 1) == doctest::Approx(7.0 / 6.0).epsilon(1e-15));
    CHECK(energy_level(DeformationScheme::mu(1.0), 0) == 0.25);
    CHECK_THROWS_AS(energy_level(DeformationScheme::boson(), -1), PreconditionError);
}

TEST_CASE("spectrum report") {
    const double q = 2.0 - 1e-9;
    const SpectrumReport near2 = spectrum_report(DeformationScheme::tsallis(q), 50);
    for (long n = 1; n <= 50; ++n) CHECK(std::abs(near2.levels[n] - 1.0) < 1e-6);

    const SpectrumReport r = spectrum_report(DeformationScheme::tsallis(1.5), 10);
    CHECK(r.band_top == 2.0);
    CHECK(r.gaps[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(r.band_width == doctest::Approx(2.0 - 7.0 / 6.0));
    CHECK(r.levels.size() == 11);
    CHECK(r.gaps.size() == 10);
    for (std::size_t n = 0; n < r.gaps.size(); ++n) CHECK(r.gaps[n] == r.levels[n + 1] - r.levels[n]);

    CHECK(spectrum_report(DeformationScheme::mu(0.5), 4).band_top == 2.0);
    CHECK(std::isinf(spectrum_report(DeformationScheme::boson(), 4).band_top));
    CHECK(std::isnan(spectrum_report(DeformationScheme::custom({0.0, 1.0, 1.5, 1.7}), 2).band_top));
    CHECK_THROWS_AS(spectrum_report(DeformationScheme::boson(), 0), PreconditionError);
}

TEST_CASE("hamiltonian") {
    const TruncatedHamiltonian h = hamiltonian(build_fock(DeformationScheme::boson(), 4));
    CHECK(h.polluted_index == 3);
    CHECK(h.matrix(0, 0) == 0.5);
    CHECK(h.matrix(1, 1) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(h.matrix(2, 2) == doctest::Approx(2.5));
    const FockTriple t = build_fock(DeformationScheme::tsallis(1.3), 12);
    const Eigen::MatrixXd hm = hamiltonian(t).matrix;
    CHECK((hm * t.n_op() - t.n_op() * hm).norm() < 1e-14);

    const TruncatedHamiltonian h2 = hamiltonian(build_fock(DeformationScheme::tsallis(2.0), 6));
    CHECK(h2.matrix(0, 0) == 0.5);
    for (Eigen::Index n = 1; n < 5; ++n) CHECK(h2.matrix(n, n) == 1.0);
}

TEST_CASE("states from the vacuum") {
    const FockTriple t = build_fock(DeformationScheme::tsallis(1.5), 8);
    CHECK(state_from_vacuum(t, 0) == Eigen::VectorXd::Unit(8, 0));
    CHECK((state_from_vacuum(t, 3) - Eigen::VectorXd::Unit(8, 3)).cwiseAbs().maxCoeff() < 1e-12);
    const FockTriple b = build_fock(DeformationScheme::boson(), 4);
    CHECK((state_from_vacuum(b, 2) - Eigen::VectorXd::Unit(4, 2)).cwiseAbs().maxCoeff() < 1e-12);
    try {
        state_from_vacuum(b, 4);
        FAIL("expected range error");
    } catch (const RangeError& e) {
        CHECK(e.index() == 4);
    }
}

// Properties

TEST_CASE("property: commutator on every built-in, D <= 64") {
    for (const auto& s : builtins()) {
        for (Eigen::Index d : {2, 5, 17, 33, 64}) CHECK(commutator_residual(build_fock(s, d)) < 1e-12);
    }
}

TEST_CASE("property: number-operator diagonals") {
    for (const auto& s : builtins()) {
        const Eigen::Index d = gen::integer(3, 40);
        const FockTriple t = build_fock(s, d);
        const Eigen::MatrixXd ada = t.a_dagger() * t.a();
        const Eigen::MatrixXd aad = t.a() * t.a_dagger();
        for (Eigen::Index n = 0; n < d; ++n) {
            const double tol = 1e-14 * std::max(1.0, phi(s, long(n) + 1));
            CHECK(std::abs(ada(n, n) - phi(s, long(n))) < tol);
            if (n < d - 1) CHECK(std::abs(aad(n, n) - phi(s, long(n) + 1)) < tol);
        }
    }
}

TEST_CASE("property: Tsallis gaps") {
    for (double q : {1.0, 1.1, 1.25, 1.5, 1.75, 1.9, 2.0}) {
        const SpectrumReport r = spectrum_report(DeformationScheme::tsallis(q), 10'000);
        const double d = q - 1.0;
        for (long n = 0; n < 10'000; ++n) {
            CHECK(r.gaps[n] >= 0.0);
            const double nd = double(n);
            const double closed = (2.0 - q) / (d * d * nd * nd + 2.0 * d * nd + q * (2.0 - q));
            // A difference of two O(1) levels carries an absolute error of a few ulps of E.
            const double tol = 1e-10 * std::abs(closed) + 8.0 * std::numeric_limits<double>::epsilon() * r.levels[n + 1];
            if (std::abs(r.gaps[n] - closed) > tol) {
                CHECK(std::abs(r.gaps[n] - closed) <= tol);
                break;
            }
        }
    }
}

TEST_CASE("property: Tsallis asymptote") {
    for (double q : {1.25, 1.5, 1.75}) {
        CHECK(std::abs(energy_level(DeformationScheme::tsallis(q), 1'000'000) - 1.0 / (q - 1.0)) < 1e-4);
    }
}

TEST_CASE("property: mu gaps") {
    for (double mu : {0.1, 0.3, 1.0, 2.5}) {
        const auto s = DeformationScheme::mu(mu);
        for (long n = 0; n < 200; ++n) {
            const double nd = double(n);
            const double closed = 1.0 / (mu * mu * nd * nd + 2.0 * mu * (mu + 1.0) * nd + 2.0 * mu + 1.0);
            CHECK(oracle::rel(energy_level(s, n + 1) - energy_level(s, n), closed) < 1e-10);
        }
    }
}

TEST_CASE("property: definitional and rational Tsallis levels agree") {
    for (double q : {1.1, 1.5, 1.9}) {
        const auto s = DeformationScheme::tsallis(q);
        const double d = q - 1.0;
        for (long n = 0; n <= 100; ++n) {
            const double nd = double(n);
            const double rational =
                0.5 * (2.0 * d * nd * nd + 2.0 * nd + 2.0 - q) / (d * d * nd * nd + (3.0 - q) * d * nd + 2.0 - q);
            CHECK(oracle::rel(energy_level(s, n), rational) < 1e-12);
        }
    }
}

TEST_CASE("combined mu ground-level formula disagrees with the definition") {
    for (double mu : {0.5, 1.0, 2.0}) {
        const double definitional = energy_level(DeformationScheme::mu(mu), 0);
        CHECK(definitional == doctest::Approx(1.0 / (2.0 * (1.0 + mu))));
        CHECK(std::abs(definitional - 1.0 / (2.0 * (mu * mu + mu + 1.0))) > 1e-3);
    }
}
