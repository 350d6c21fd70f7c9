#include <doctest.h>

#include <cmath>
#include <limits>

#include "deformed/scheme.hpp"
#include "oracles.hpp"

using namespace deformed;

namespace {

std::vector<DeformationScheme> builtins() {
    return {DeformationScheme::boson(),         DeformationScheme::q_oscillator(0.5),
            DeformationScheme::q_oscillator(1.7), DeformationScheme::symmetric_q(1.2),
            DeformationScheme::pq(0.5, 2.0),    DeformationScheme::pq(2.0, 1.0),
            DeformationScheme::tsallis(0.7),    DeformationScheme::tsallis(1.5),
            DeformationScheme::tsallis(2.0),    DeformationScheme::mu(0.3)};
}

}  // namespace

TEST_CASE("phi examples") {
    CHECK(phi(DeformationScheme::tsallis(2.0), 5) == 1.0);
    CHECK(phi(DeformationScheme::tsallis(1.5), 3) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(phi(DeformationScheme::pq(2.0, 1.0), 3) == doctest::Approx(7.0).epsilon(1e-15));
    for (const auto& s : builtins()) CHECK(phi(s, 0) == 0.0);
}

TEST_CASE("phi agrees with direct sums") {
    for (long n = 0; n <= 40; ++n) {
        CHECK(oracle::rel(phi(DeformationScheme::q_oscillator(0.5), n), double(oracle::q_number(0.5L, n))) < 1e-14);
        CHECK(oracle::rel(phi(DeformationScheme::q_oscillator(1.7), n), double(oracle::q_number(1.7L, n))) < 1e-13);
        CHECK(oracle::rel(phi(DeformationScheme::symmetric_q(1.2), n),
                          double(oracle::symmetric_number(1.2L, n))) < 1e-13);
        CHECK(oracle::rel(phi(DeformationScheme::pq(0.5, 2.0), n), double(oracle::pq_number(0.5L, 2.0L, n))) < 1e-13);
        CHECK(oracle::rel(phi(DeformationScheme::tsallis(1.5), n), double(oracle::tsallis_number(1.5L, n))) < 1e-15);
        CHECK(oracle::rel(phi(DeformationScheme::mu(0.3), n), double(oracle::mu_number(0.3L, n))) < 1e-15);
    }
}

TEST_CASE("phi(1) = 1 for built-ins other than mu") {
    for (const auto& s : builtins()) {
        if (s.is<Mu>()) {
            CHECK(phi(s, 1) == doctest::Approx(1.0 / 1.3));
        } else {
            CHECK(phi(s, 1) == 1.0);
        }
    }
}

TEST_CASE("phi_factorial examples and errors") {
    for (const auto& s : builtins()) CHECK(phi_factorial(s, 0) == 1.0);
    CHECK(phi_factorial(DeformationScheme::tsallis(2.0), 7) == 1.0);
    CHECK(phi_factorial(DeformationScheme::boson(), 5) == 120.0);
    CHECK(phi_factorial(DeformationScheme::boson(), 5, true) == doctest::Approx(std::log(120.0)));
    // phi_T vanishes nowhere for q = 0.5 before the pole at n = 3 ...
    CHECK_THROWS_AS(phi(DeformationScheme::tsallis(0.5), 3), DomainError);
    // ... and a zero factor has no logarithm.
    const auto zero_factor = DeformationScheme::custom({0.0, 1.0, 0.0, 2.0});
    CHECK(phi_factorial(zero_factor, 3) == 0.0);
    CHECK_THROWS_AS(phi_factorial(zero_factor, 3, true), DomainError);
    CHECK_THROWS_AS(phi_factorial(DeformationScheme::boson(), 400), RangeError);
    CHECK(phi_factorial(DeformationScheme::boson(), 400, true) == doctest::Approx(std::lgamma(401.0)));
}

TEST_CASE("overflow reports the index") {
    try {
        phi(DeformationScheme::pq(2.0, 3.0), 2000);
        FAIL("expected overflow");
    } catch (const RangeError& e) {
        CHECK(e.index() == 2000);
    }
}

TEST_CASE("nonlinearity f") {
    CHECK(nonlinearity_f(DeformationScheme::tsallis(2.0), 4) == doctest::Approx(0.5));
    CHECK(nonlinearity_f(DeformationScheme::tsallis(1.5), 3) == doctest::Approx(std::sqrt(0.5)));
    for (long n = 1; n < 20; ++n) CHECK(nonlinearity_f(DeformationScheme::boson(), n) == 1.0);
    CHECK_THROWS_AS(nonlinearity_f(DeformationScheme::boson(), 0), PreconditionError);
}

TEST_CASE("parameter domains") {
    CHECK_THROWS_AS(DeformationScheme::tsallis(3.0), PreconditionError);
    CHECK_THROWS_AS(DeformationScheme::tsallis(0.0), PreconditionError);
    CHECK_THROWS_AS(DeformationScheme::q_oscillator(1.0), PreconditionError);
    CHECK_THROWS_AS(DeformationScheme::q_oscillator(-0.5), PreconditionError);
    CHECK_THROWS_AS(DeformationScheme::symmetric_q(1.0), PreconditionError);
    CHECK_THROWS_AS(DeformationScheme::pq(2.0, 2.0), PreconditionError);
    CHECK_THROWS_AS(DeformationScheme::mu(-0.1), PreconditionError);
    CHECK_THROWS_AS(DeformationScheme::custom({1.0, 2.0}), PreconditionError);
    CHECK_THROWS_AS(DeformationScheme::custom({0.0, -1.0}), PreconditionError);
    try {
        DeformationScheme::tsallis(3.0);
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("q out of range (0,2]") != std::string::npos);
    }
}

TEST_CASE("descriptors round trip") {
    for (const auto& s : builtins()) CHECK(DeformationScheme::parse(s.descriptor()) == s);
    const auto custom = DeformationScheme::custom({0.0, 1.0, 0.1, 1e-300});
    CHECK(DeformationScheme::parse(custom.descriptor()) == custom);
    CHECK(DeformationScheme::parse("pq:p=2,q=0.5") == DeformationScheme::pq(2.0, 0.5));
    CHECK(DeformationScheme::parse("mu:mu=0.3").descriptor() == "mu:mu=0.3");
    CHECK(DeformationScheme::tsallis(1.5).descriptor() == "tsallis:q=1.5");
    for (const char* bad : {"", "tsallis", "tsallis:q=", "tsallis:q=abc", "tsallis:p=1", "tsallis:q=1,q=1",
                            "boson:q=1", "wave:q=1", "pq:p=2", "tsallis:q=1.5x"}) {
        CHECK_THROWS_AS(DeformationScheme::parse(bad), PreconditionError);
    }
}

TEST_CASE("radius of convergence") {
    CHECK(radius_of_convergence(DeformationScheme::tsallis(2.0)) == 1.0);
    CHECK(radius_of_convergence(DeformationScheme::tsallis(1.25)) == 4.0);
    CHECK(std::isinf(radius_of_convergence(DeformationScheme::boson())));
    CHECK(std::isinf(radius_of_convergence(DeformationScheme::tsallis(1.0))));
    CHECK(radius_of_convergence(DeformationScheme::q_oscillator(0.5)) == doctest::Approx(2.0));
    CHECK(std::isinf(radius_of_convergence(DeformationScheme::q_oscillator(2.0))));
    CHECK(radius_of_convergence(DeformationScheme::mu(0.25)) == 4.0);
    // e_q is a polynomial when 1/(1-q) is a positive integer.
    CHECK(std::isinf(radius_of_convergence(DeformationScheme::tsallis(0.5))));
    CHECK(radius_of_convergence(DeformationScheme::tsallis(0.6)) == doctest::Approx(2.5));
    CHECK_THROWS_AS(radius_of_convergence(DeformationScheme::custom({0.0, 1.0})), UnsupportedError);
}

TEST_CASE("custom table bounds") {
    const auto s = DeformationScheme::custom({0.0, 1.0, 3.0});
    CHECK(phi(s, 2) == 3.0);
    CHECK_THROWS_AS(phi(s, 3), DomainError);
}

// Properties

TEST_CASE("property: q -> 1 recovers the integers") {
    for (double q : {1.0 - 1e-8, 1.0 + 1e-8}) {
        for (const auto& s : {DeformationScheme::q_oscillator(q), DeformationScheme::symmetric_q(q),
                              DeformationScheme::tsallis(q)}) {
            for (long n = 0; n <= 100; ++n) CHECK(std::abs(phi(s, n) - double(n)) < 1e-6 * double(std::max(n, 1L)));
        }
    }
    for (long n = 0; n <= 100; ++n) CHECK(phi(DeformationScheme::tsallis(1.0), n) == double(n));
}

TEST_CASE("property: (p,q) symmetry and reductions") {
    for (int trial = 0; trial < 50; ++trial) {
        const double p = gen::uniform(0.2, 2.5);
        const double q = gen::uniform(0.2, 2.5);
        if (std::abs(p - q) < 1e-3 || std::abs(q - 1.0) < 1e-3 || std::abs(p - 1.0) < 1e-3) continue;
        for (long n = 0; n <= 50; ++n) {
            const double a = phi(DeformationScheme::pq(p, q), n);
            const double b = phi(DeformationScheme::pq(q, p), n);
            CHECK(oracle::rel(a, b) < 4 * std::numeric_limits<double>::epsilon());
            CHECK(oracle::rel(phi(DeformationScheme::pq(1.0, q), n), phi(DeformationScheme::q_oscillator(q), n)) < 1e-12);
            CHECK(oracle::rel(phi(DeformationScheme::pq(1.0 / q, q), n), phi(DeformationScheme::symmetric_q(q), n)) <
                  1e-12);
        }
    }
}

TEST_CASE("property: factorial recurrence") {
    for (const auto& s : builtins()) {
        for (long n = 1; n <= 30; ++n) {
            if (s.is<Tsallis>() && s.as<Tsallis>().q < 1.0 && n >= 4) break;
            CHECK(oracle::rel(phi_factorial(s, n), phi_factorial(s, n - 1) * phi(s, n)) < 1e-15);
        }
    }
}

TEST_CASE("property: random Tsallis q matches the oracle") {
    for (int trial = 0; trial < 200; ++trial) {
        const double q = gen::uniform(1.0, 2.0);
        const long n = gen::integer(0, 100000);
        CHECK(oracle::rel(phi(DeformationScheme::tsallis(q), n), double(oracle::tsallis_number(q, n))) < 1e-15);
        const DeformationScheme s = DeformationScheme::tsallis(q);
        CHECK(DeformationScheme::parse(s.descriptor()) == s);
    }
}
