#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "deformed/errors.hpp"

namespace deformed {

// Deformation families. Each one fixes the structure function phi(n) with
// a^dagger a = phi(N), a a^dagger = phi(N+1).

struct Boson {};

/// Heine q-number [n]_q = (1 - q^n) / (1 - q).
struct QOsc {
    double q;
};

/// Symmetric number [n] = (q^-n - q^n) / (q^-1 - q).
struct SymmetricQ {
    double q;
};

/// Twin-basic number [n]_(p,q) = (p^n - q^n) / (p - q).
struct PQ {
    double p;
    double q;
};

/// Tsallis number [n]_(q-1) = n / (1 + (q-1)(n-1)).
struct Tsallis {
    double q;
};

/// phi(n) = n / (1 + mu n).
struct Mu {
    double mu;
};

/// Tabulated phi; table[n] = phi(n), table[0] must be 0.
struct CustomPhi {
    std::vector<double> table;
};

class DeformationScheme {
public:
    using Variant = std::variant<Boson, QOsc, SymmetricQ, PQ, Tsallis, Mu, CustomPhi>;

    static DeformationScheme boson();
    static DeformationScheme q_oscillator(double q);
    static DeformationScheme symmetric_q(double q);
    static DeformationScheme pq(double p, double q);
    /// q in (0, 2]. q = 1 is the boson point.
    static DeformationScheme tsallis(double q);
    static DeformationScheme mu(double mu);
    static DeformationScheme custom(std::vector<double> table);

    /// Parses the canonical text form, e.g. `tsallis:q=1.5`, `pq:p=2,q=0.5`.
    static DeformationScheme parse(std::string_view descriptor);

    /// Canonical text form; parse(s.descriptor()) reproduces s exactly.
    std::string descriptor() const;

    const Variant& variant() const noexcept { return variant_; }

    template <class T>
    bool is() const noexcept {
        return std::holds_alternative<T>(variant_);
    }
    template <class T>
    const T& as() const {
        return std::get<T>(variant_);
    }

    bool is_builtin() const noexcept { return !is<CustomPhi>(); }

    friend bool operator==(const DeformationScheme& a, const DeformationScheme& b);

private:
    explicit DeformationScheme(Variant v) : variant_(std::move(v)) {}
    Variant variant_;
};

bool operator==(const Boson&, const Boson&);
bool operator==(const QOsc&, const QOsc&);
bool operator==(const SymmetricQ&, const SymmetricQ&);
bool operator==(const PQ&, const PQ&);
bool operator==(const Tsallis&, const Tsallis&);
bool operator==(const Mu&, const Mu&);
bool operator==(const CustomPhi&, const CustomPhi&);

/// Structure function phi(n). phi(0) = 0, and phi(1) = 1 exactly for every
/// built-in family except Mu, where phi(1) = 1/(1+mu). Throws RangeError on overflow, DomainError where the
/// family has a pole (Tsallis q < 1 past n = 1 + 1/(1-q)) or when n runs
/// past a CustomPhi table.
double phi(const DeformationScheme& scheme, long n);

/// phi(n)! = prod_{j=1..n} phi(j), phi(0)! = 1. With `log_domain` returns
/// the natural log of the product (requires every factor > 0).
double phi_factorial(const DeformationScheme& scheme, long n, bool log_domain = false);

/// Nonlinearity f(n) = sqrt(phi(n) / n) of the f-oscillator picture, n >= 1.
double nonlinearity_f(const DeformationScheme& scheme, long n);

/// Limit of phi(n) as n -> infinity, which is also the radius of convergence
/// of sum x^n / phi(n)!. Infinite when phi grows without bound.
/// Throws UnsupportedError for CustomPhi.
double radius_of_convergence(const DeformationScheme& scheme);

}  // namespace deformed
