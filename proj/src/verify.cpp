#include "deformed/verify.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <thread>

#include "deformed/calculus.hpp"
#include "deformed/coherent.hpp"
#include "deformed/fock.hpp"
#include "deformed/series.hpp"

namespace deformed {

namespace {

struct CaseSpec {
    std::string name;
    std::string anchor;
    std::string scheme;
    double tolerance;
    std::function<double()> residual;
};

using CaseList = std::vector<CaseSpec>;

double rel_err(double value, double reference) {
    const double diff = std::abs(value - reference);
    return reference == 0.0 ? diff : diff / std::abs(reference);
}

std::string label(double q) { return DeformationScheme::tsallis(q).descriptor(); }

std::vector<double> grid(double lo, double hi, int count) {
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
    return out;
}

std::string subscript(double q) {
    static constexpr const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, q);
    std::string out;
    for (const char* p = buf; p != res.ptr; ++p) {
        if (*p >= '0' && *p <= '9') {
            out += digits[*p - '0'];
        } else {
            out += *p;
        }
    }
    return out;
}

// Tsallis cases. Every case builds its scheme through the factory so that a
// perturbed table reaches each identity.

void series_cases(CaseList& out, const TsallisFactory& make, double q) {
    const std::string at = label(q);
    const double reach = q == 1.0 ? 10.0 : 1.0 / std::abs(q - 1.0);

    out.push_back({"e_q(x) series = closed form", "sum x^n / [n]! = (1 + (1-q)x)^(1/(1-q))", at, 1e-10,
                   [=] {
                       const DeformationScheme s = make(q);
                       double worst = 0.0;
                       for (double x : grid(-0.9 * reach, 0.9 * reach, 20)) {
                           const double closed = tsallis_exp_closed(q, x);
                           worst = std::max(worst, rel_err(phi_exp_series(s, x).value, closed));
                       }
                       return worst;
                   }});

    out.push_back({"exp-composition coefficients", "exp(sum (q-1)^(n-1) x^n / n) = e_q(x)", at, 1e-12,
                   [=] {
                       const DeformationScheme s = make(q);
                       RealSeries a = RealSeries::zero(20);
                       for (Eigen::Index n = 1; n <= 20; ++n) {
                           a.coeffs()[n] = std::pow(q - 1.0, double(n - 1)) / double(n);
                       }
                       const RealSeries c = exp_series_compose(a, 20);
                       const RealSeries ref = phi_exp_coefficients(s, 20);
                       double worst = 0.0;
                       for (Eigen::Index n = 0; n <= 20; ++n) worst = std::max(worst, rel_err(c[n], ref[n]));
                       return worst;
                   }});

    out.push_back({"x 2F1(q,1;2;-x) = ln_q(1+x)", "ln_q(1+x) = x 2F1(q, 1; 2; -x)", at, 1e-10, [=] {
                       double worst = 0.0;
                       for (double x : grid(-0.85, 0.85, 20)) {
                           const double rep = x * hyp2F1(q, 1.0, 2.0, -x).value;
                           worst = std::max(worst, rel_err(rep, tsallis_log(q, 1.0 + x)));
                       }
                       return worst;
                   }});

    if (q < 1.0) return;

    out.push_back({"[n] c_n = c_(n-1)", "D e_q = e_q on Taylor coefficients", at, 1e-12, [=] {
                       const DeformationScheme s = make(q);
                       const RealSeries c = phi_exp_coefficients(s, 60);
                       const DeformationScheme exact = DeformationScheme::tsallis(q);
                       double worst = 0.0;
                       for (Eigen::Index n = 1; n <= 60; ++n) {
                           worst = std::max(worst, rel_err(phi(exact, long(n)) * c[n], c[n - 1]));
                       }
                       return worst;
                   }});

    out.push_back({"Q_(n-1) = n! / [n]!", "Borges product against the Tsallis factorial", at, 1e-12, [=] {
                       const DeformationScheme s = make(q);
                       double worst = 0.0;
                       double fact = 1.0;
                       for (long n = 1; n <= 20; ++n) {
                           fact *= double(n);
                           worst = std::max(worst, rel_err(fact / phi_factorial(s, n), borges_Q(q, n - 1)));
                       }
                       return worst;
                   }});

    if (q == 1.0) return;

    out.push_back({"1F0(1/(q-1); (q-1)x) = e_q(x)", "e_q(x) = 1F0(1/(q-1); -; (q-1)x)", at, 1e-10, [=] {
                       double worst = 0.0;
                       for (double z : grid(-0.85, 0.85, 20)) {
                           const double x = z / (q - 1.0);
                           const double rep = hyp1F0(1.0 / (q - 1.0), z).value;
                           worst = std::max(worst, rel_err(rep, tsallis_exp_closed(q, x)));
                       }
                       return worst;
                   }});

    out.push_back({"Pochhammer identity", "(t)_n = (n-1)! t sum_j (t)_j / j!, t = 1/(q-1)", at, 1e-10,
                   [=] { return verify_pochhammer_identity(1.0 / (q - 1.0), 25).max_rel_residual; }});
}

double tsallis_energy_rational(double q, double n) {
    const double d = q - 1.0;
    const double num = 2.0 * d * n * n + 2.0 * n + 2.0 - q;
    const double den = d * d * n * n + (3.0 - q) * d * n + 2.0 - q;
    return 0.5 * num / den;
}

double tsallis_gap_closed(double q, double n) {
    const double d = q - 1.0;
    return (2.0 - q) / (d * d * n * n + 2.0 * d * n + q * (2.0 - q));
}

void spectrum_cases(CaseList& out, const TsallisFactory& make, double q) {
    if (q < 1.0) return;
    const std::string at = label(q);

    out.push_back({"E0 = 1/2", "ground level (phi(1) + phi(0)) / 2", at, 0.0,
                   [=] { return std::abs(energy_level(make(q), 0) - 0.5); }});

    out.push_back({"E1 = 1/2 + 1/q", "first excited level 1/2 + 1/q", at, 1e-12,
                   [=] { return std::abs(energy_level(make(q), 1) - (0.5 + 1.0 / q)); }});

    if (q < 2.0) {
        out.push_back({"E_n rational form", "E_n = (2(q-1)n^2 + 2n + 2 - q) / (2((q-1)^2 n^2 + (3-q)(q-1)n + 2 - q))",
                       at, 1e-12, [=] {
                           const DeformationScheme s = make(q);
                           double worst = 0.0;
                           for (long n = 0; n <= 100; ++n) {
                               worst = std::max(worst, rel_err(energy_level(s, n), tsallis_energy_rational(q, double(n))));
                           }
                           return worst;
                       }});
    }

    out.push_back({"E_(n+1) - E_n closed form", "gap (2-q) / ((q-1)^2 n^2 + 2(q-1)n + q(2-q))", at, 1e-10, [=] {
                       const SpectrumReport r = spectrum_report(make(q), 100);
                       double worst = 0.0;
                       for (long n = 0; n < 100; ++n) {
                           const double closed = tsallis_gap_closed(q, double(n));
                           const double scale = std::max(std::abs(closed), std::numeric_limits<double>::epsilon());
                           worst = std::max(worst, std::abs(r.gaps[n] - closed) / scale);
                       }
                       return worst;
                   }});

    out.push_back({"gaps nonnegative", "E_(n+1) >= E_n for n <= 10^4", at, 0.0, [=] {
                       const SpectrumReport r = spectrum_report(make(q), 10'000);
                       const double lowest = *std::min_element(r.gaps.begin(), r.gaps.end());
                       return std::max(0.0, -lowest);
                   }});

    if (q > 1.0) {
        out.push_back({"band top 1/(q-1)", "E_n -> 1/(q-1), checked at n = 10^6", at, 1e-4,
                       [=] { return std::abs(energy_level(make(q), 1'000'000) - 1.0 / (q - 1.0)); }});
    }

    out.push_back({"[a, a+] = phi(N+1) - phi(N)", "commutator on the 64-dim truncation", at, 1e-12,
                   [=] { return commutator_residual(build_fock(make(q), 64)); }});
}

void coherent_cases(CaseList& out, const TsallisFactory& make, double q) {
    if (q < 1.0 || q > 2.0) return;
    const std::string at = label(q);
    const double scale = q == 1.0 ? 1.0 : 1.0 / std::sqrt(q - 1.0);
    const std::complex<double> alphas[] = {std::polar(0.3 * scale, 0.4), std::polar(0.8 * scale, -1.1)};

    out.push_back({"a|alpha> = alpha|alpha>", "annihilation eigenvalue on the 64-dim truncation", at, 1e-8, [=] {
                       const DeformationScheme s = make(q);
                       double worst = 0.0;
                       for (auto alpha : alphas) worst = std::max(worst, eigen_residual(coherent_state(s, alpha, 64)));
                       return worst;
                   }});

    out.push_back({"f-coherent coefficients", "sqrt(Q_(n-1)) alpha^n / sqrt(n!) = alpha^n / sqrt([n]!)", at, 1e-12,
                   [=] {
                       const DeformationScheme s = make(q);
                       double worst = 0.0;
                       for (auto alpha : alphas) {
                           const CoherentState st = coherent_state(s, alpha, 64);
                           const Eigen::VectorXcd f = f_coherent_coefficients(q, alpha, 64);
                           for (Eigen::Index n = 0; n < 64; ++n) {
                               const double d = std::abs(st.coefficients[n] - f[n]);
                               worst = std::max(worst, f[n] == 0.0 ? d : d / std::abs(f[n]));
                           }
                       }
                       return worst;
                   }});

    if (q == 2.0) {
        out.push_back({"harmonious norm = sqrt(1 - |alpha|^2)", "q = 2 coherent normalization", at, 1e-14, [=] {
                           const DeformationScheme s = make(q);
                           double worst = 0.0;
                           for (auto alpha : alphas) {
                               const double n = coherent_state(s, alpha, 64).norm_const;
                               worst = std::max(worst, std::abs(n - std::sqrt(1.0 - std::norm(alpha))));
                           }
                           return worst;
                       }});
    } else {
        out.push_back({"norm = e_q(|alpha|^2)^(-1/2)", "coherent normalization", at, 1e-12, [=] {
                           const DeformationScheme s = make(q);
                           double worst = 0.0;
                           for (auto alpha : alphas) {
                               const double n = coherent_state(s, alpha, 64).norm_const;
                               worst = std::max(worst, rel_err(n, 1.0 / std::sqrt(tsallis_exp_closed(q, std::norm(alpha)))));
                           }
                           return worst;
                       }});
    }
}

SampledFunction polynomial_function(const RealSeries& p) {
    RealSeries dp = RealSeries::zero(std::max<Eigen::Index>(p.order() - 1, 0));
    for (Eigen::Index n = 1; n <= p.order(); ++n) dp.coeffs()[n - 1] = double(n) * p[n];
    return {[p](double x) { return p(x); }, [dp](double x) { return dp(x); }};
}

void calculus_cases(CaseList& out, const TsallisFactory& make, double q) {
    const std::string at = label(q);

    if (q <= 2.0 && q >= 1.0) {
        out.push_back({"D x^n = [n] x^(n-1)", "quadrature Tsallis derivative on monomials, n <= 16", at, 1e-10, [=] {
                           const DeformationScheme s = make(q);
                           double worst = 0.0;
                           for (Eigen::Index n = 0; n <= 16; ++n) {
                               const SampledFunction f = polynomial_function(RealSeries::monomial(n));
                               for (double x : {0.3, 0.7, 1.0}) {
                                   const double ref = n == 0 ? 0.0 : phi(s, long(n)) * std::pow(x, double(n - 1));
                                   worst = std::max(worst, rel_err(tsallis_derivative_quadrature(f, x, q).value, ref));
                               }
                           }
                           return worst;
                       }});

        const std::string sub = subscript(q);
        out.push_back({"D e" + sub + "(kx) = k e" + sub + "(kx)", "quadrature eigenfunction law, k in {0.3, 0.7}", at,
                       1e-8, [=] {
                           double worst = 0.0;
                           for (double k : {0.3, 0.7}) {
                               SampledFunction f{[=](double x) { return tsallis_exp_closed(q, k * x); },
                                                 [=](double x) { return k * std::pow(tsallis_exp_closed(q, k * x), q); }};
                               const double hi = q == 1.0 ? 2.0 : 0.8 / ((q - 1.0) * k);
                               for (double x : grid(-1.0, hi, 10)) {
                                   const double value = tsallis_derivative_quadrature(f, x, q).value;
                                   worst = std::max(worst, std::abs(value - k * tsallis_exp_closed(q, k * x)));
                               }
                           }
                           return worst;
                       }});

        out.push_back({"quadrature = series on polynomials", "two Tsallis derivative paths agree, order <= 16", at,
                       1e-10, [=] {
                           const DeformationScheme s = make(q);
                           double worst = 0.0;
                           for (Eigen::Index order : {3, 9, 16}) {
                               RealSeries p = RealSeries::zero(order);
                               for (Eigen::Index n = 0; n <= order; ++n) p.coeffs()[n] = std::cos(1.3 * double(n) + 0.2);
                               const RealSeries dp = derivative_on_series(p, s);
                               const SampledFunction f = polynomial_function(p);
                               for (double x : {-0.6, 0.4, 0.8}) {
                                   worst = std::max(worst, rel_err(tsallis_derivative_quadrature(f, x, q).value, dp(x)));
                               }
                           }
                           return worst;
                       }});
    }

    if (q < 1.0) return;

    out.push_back({"D_T I_T s = s", "series derivative inverts the series integral", at, 1e-13, [=] {
                       const DeformationScheme s = make(q);
                       RealSeries p = RealSeries::zero(12);
                       for (Eigen::Index n = 0; n <= 12; ++n) p.coeffs()[n] = std::sin(0.7 * double(n) + 0.5);
                       const RealSeries back = derivative_on_series(tsallis_integral_series(p, q), s);
                       double worst = 0.0;
                       for (Eigen::Index n = 0; n <= 12; ++n) worst = std::max(worst, rel_err(back[n], p[n]));
                       return worst;
                   }});

    out.push_back({"D e_q(kx) = k e_q(kx) on series", "eigenfunction law on Taylor coefficients, order 30", at, 1e-12,
                   [=] {
                       const DeformationScheme s = make(q);
                       const double k = 0.7;
                       RealSeries e = phi_exp_coefficients(s, 30);
                       for (Eigen::Index n = 0; n <= 30; ++n) e.coeffs()[n] *= std::pow(k, double(n));
                       const RealSeries d = derivative_on_series(e, s);
                       double worst = 0.0;
                       for (Eigen::Index n = 0; n < 30; ++n) worst = std::max(worst, rel_err(d[n], k * e[n]));
                       return worst;
                   }});

    out.push_back({"<e_q(ax)|e_q(ax)> = e_q(|a|^2)", "Bargmann norm of the coherent function, order 40", at, 1e-10,
                   [=] {
                       const DeformationScheme s = make(q);
                       const std::complex<double> alpha = std::polar(0.5, 0.9);
                       const RealSeries c = phi_exp_coefficients(s, 40);
                       ComplexSeries f = ComplexSeries::zero(40);
                       for (Eigen::Index n = 0; n <= 40; ++n) f.coeffs()[n] = c[n] * std::pow(alpha, double(n));
                       const std::complex<double> ip = bargmann_inner_product(f, f, s);
                       const double ref = tsallis_exp_closed(q, std::norm(alpha));
                       return std::abs(ip - ref) / ref;
                   }});
}

// Family-independent cases for any built-in scheme.
void generic_cases(CaseList& out, std::string_view suite, const DeformationScheme& s) {
    const std::string at = s.descriptor();

    if (suite == "spectrum") {
        out.push_back({"[a, a+] = phi(N+1) - phi(N)", "commutator on the 64-dim truncation", at, 1e-12,
                       [=] { return commutator_residual(build_fock(s, 64)); }});
        out.push_back({"(a+)^n |0> / sqrt(phi(n)!) = |n>", "ladder from the vacuum, n < 24", at, 1e-12, [=] {
                           const FockTriple t = build_fock(s, 24);
                           double worst = 0.0;
                           for (Eigen::Index n = 0; n < 24; ++n) {
                               const Eigen::VectorXd v = state_from_vacuum(t, n);
                               worst = std::max(worst, (v - Eigen::VectorXd::Unit(24, n)).cwiseAbs().maxCoeff());
                           }
                           return worst;
                       }});
        if (s.is<Mu>()) {
            const double mu = s.as<Mu>().mu;
            out.push_back({"E_(n+1) - E_n closed form", "gap 1 / (mu^2 n^2 + 2mu(mu+1)n + 2mu + 1)", at, 1e-10, [=] {
                               double worst = 0.0;
                               for (long n = 0; n < 100; ++n) {
                                   const double nd = double(n);
                                   const double closed = 1.0 / (mu * mu * nd * nd + 2.0 * mu * (mu + 1.0) * nd + 2.0 * mu + 1.0);
                                   worst = std::max(worst, rel_err(energy_level(s, n + 1) - energy_level(s, n), closed));
                               }
                               return worst;
                           }});
        }
    } else if (suite == "series") {
        out.push_back({"[n] c_n = c_(n-1)", "D e_phi = e_phi on Taylor coefficients", at, 1e-12, [=] {
                           const RealSeries c = phi_exp_coefficients(s, 40);
                           double worst = 0.0;
                           for (Eigen::Index n = 1; n <= 40; ++n) {
                               if (c[n - 1] == 0.0) break;
                               worst = std::max(worst, rel_err(phi(s, long(n)) * c[n], c[n - 1]));
                           }
                           return worst;
                       }});
        out.push_back({"e_phi series = coefficient sum", "partial sums of sum x^n / phi(n)!", at, 1e-12, [=] {
                           const double radius = radius_of_convergence(s);
                           const double x = std::isfinite(radius) ? 0.3 * radius : 0.7;
                           const RealSeries c = phi_exp_coefficients(s, 200);
                           return rel_err(phi_exp_series(s, x).value, c(x));
                       }});
    } else if (suite == "coherent") {
        out.push_back({"a|alpha> = alpha|alpha>", "annihilation eigenvalue on the 64-dim truncation", at, 1e-8, [=] {
                           const double radius = radius_of_convergence(s);
                           const double mod2 = std::isfinite(radius) ? 0.5 * radius : 1.0;
                           return eigen_residual(coherent_state(s, std::polar(std::sqrt(mod2), 0.6), 64));
                       }});
    } else if (suite == "calculus") {
        out.push_back({"<xi_m|xi_n> = delta_mn", "normalized monomials are orthonormal, m, n <= 30", at, 1e-12, [=] {
                           double worst = 0.0;
                           for (Eigen::Index m = 0; m <= 30; ++m) {
                               const RealSeries xm = RealSeries::monomial(m, std::exp(-0.5 * phi_factorial(s, long(m), true)));
                               for (Eigen::Index n = 0; n <= 30; ++n) {
                                   const RealSeries xn =
                                       RealSeries::monomial(n, std::exp(-0.5 * phi_factorial(s, long(n), true)));
                                   const double delta = m == n ? 1.0 : 0.0;
                                   worst = std::max(worst, std::abs(bargmann_inner_product(xm, xn, s) - delta));
                               }
                           }
                           return worst;
                       }});

        std::function<double(const SampledFunction&, double)> quotient;
        std::string name;
        if (s.is<QOsc>()) {
            const double q = s.as<QOsc>().q;
            quotient = [q](const SampledFunction& f, double x) { return jackson_derivative(f, x, q); };
            name = "Jackson D x^n = [n]_q x^(n-1)";
        } else if (s.is<SymmetricQ>()) {
            const double q = s.as<SymmetricQ>().q;
            quotient = [q](const SampledFunction& f, double x) { return symmetric_derivative(f, x, q); };
            name = "symmetric D x^n = [n] x^(n-1)";
        } else if (s.is<PQ>()) {
            const PQ pq = s.as<PQ>();
            quotient = [pq](const SampledFunction& f, double x) { return pq_derivative(f, x, pq.p, pq.q); };
            name = "(p,q) D x^n = [n]_(p,q) x^(n-1)";
        }
        if (quotient) {
            out.push_back({name, "difference quotient on monomials, n <= 20", at, 1e-10, [=] {
                               double worst = 0.0;
                               for (long n = 1; n <= 20; ++n) {
                                   SampledFunction f{[n](double x) { return std::pow(x, double(n)); }, {}};
                                   for (double x : grid(0.25, 1.15, 10)) {
                                       const double ref = phi(s, n) * std::pow(x, double(n - 1));
                                       worst = std::max(worst, rel_err(quotient(f, x), ref));
                                   }
                               }
                               return worst;
                           }});
        }
    }
}

std::vector<DeformationScheme> default_generic_schemes() {
    return {DeformationScheme::boson(),          DeformationScheme::q_oscillator(0.5),
            DeformationScheme::symmetric_q(1.2), DeformationScheme::pq(0.5, 2.0),
            DeformationScheme::mu(0.3),          DeformationScheme::mu(1.0)};
}

constexpr double kDefaultQs[] = {1.0, 1.3, 1.5, 2.0};

void suite_cases(CaseList& out, std::string_view suite, const VerifyOptions& options) {
    const TsallisFactory& make = options.tsallis;
    auto tsallis_cases = [&](double q) {
        if (suite == "series") series_cases(out, make, q);
        if (suite == "spectrum") spectrum_cases(out, make, q);
        if (suite == "coherent") coherent_cases(out, make, q);
        if (suite == "calculus") calculus_cases(out, make, q);
    };

    if (options.scheme) {
        if (options.scheme->is<Tsallis>()) {
            tsallis_cases(options.scheme->as<Tsallis>().q);
        } else {
            generic_cases(out, suite, *options.scheme);
        }
        return;
    }

    for (double q : kDefaultQs) tsallis_cases(q);
    for (const auto& s : default_generic_schemes()) generic_cases(out, suite, s);

    if (suite == "spectrum") {
        const double q = 2.0 - 1e-9;
        out.push_back({"E_n -> 1 as q -> 2", "two-level collapse, n = 1..50", label(q), 1e-6, [=] {
                           const DeformationScheme s = make(q);
                           double worst = 0.0;
                           for (long n = 1; n <= 50; ++n) worst = std::max(worst, std::abs(energy_level(s, n) - 1.0));
                           return worst;
                       }});
    }
}

VerifyCase evaluate(const CaseSpec& spec) {
    VerifyCase result{spec.name, spec.anchor, spec.scheme, 0.0, spec.tolerance, false, {}};
    try {
        result.max_residual = spec.residual();
        result.pass = std::isfinite(result.max_residual) && result.max_residual <= spec.tolerance;
    } catch (const std::exception& e) {
        result.max_residual = std::numeric_limits<double>::infinity();
        result.error = e.what();
    }
    return result;
}

}  // namespace

bool is_suite_name(std::string_view suite) {
    return std::find(std::begin(kSuiteNames), std::end(kSuiteNames), suite) != std::end(kSuiteNames);
}

VerificationReport run_verification(std::string_view suite, const VerifyOptions& options) {
    if (suite != "all" && !is_suite_name(suite)) {
        throw PreconditionError("unknown verify suite '" + std::string(suite) +
                                "'; expected series, spectrum, coherent, calculus or all");
    }
    if (options.scheme && !options.scheme->is_builtin()) {
        throw PreconditionError("verify runs on built-in schemes only");
    }

    CaseList specs;
    if (suite == "all") {
        for (std::string_view s : kSuiteNames) suite_cases(specs, s, options);
    } else {
        suite_cases(specs, suite, options);
    }

    std::vector<VerifyCase> cases(specs.size());
    const unsigned workers =
        options.concurrent ? std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), specs.size())) : 1u;
    if (workers <= 1) {
        for (std::size_t i = 0; i < specs.size(); ++i) cases[i] = evaluate(specs[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < specs.size(); i = next++) cases[i] = evaluate(specs[i]);
            });
        }
    }

    std::sort(cases.begin(), cases.end(), [](const VerifyCase& a, const VerifyCase& b) {
        return std::tie(a.name, a.scheme) < std::tie(b.name, b.scheme);
    });
    VerificationReport report{std::string(suite), std::move(cases), true};
    for (const auto& c : report.cases) report.overall = report.overall && c.pass;
    return report;
}

DeformationScheme tabulated_tsallis(double q, long index, int bit) {
    const DeformationScheme exact = DeformationScheme::tsallis(q);
    std::vector<double> table(kVerifyTableLength);
    for (long n = 0; n < kVerifyTableLength; ++n) table[n] = phi(exact, n);
    if (bit >= 0) {
        if (bit > 63) throw PreconditionError("bit index must lie in [0, 63]");
        if (index < 0 || index >= kVerifyTableLength) {
            throw PreconditionError("mutated index outside the phi table");
        }
        const auto bits = std::bit_cast<std::uint64_t>(table[index]) ^ (std::uint64_t{1} << bit);
        table[index] = std::bit_cast<double>(bits);
    }
    return DeformationScheme::custom(std::move(table));
}

TsallisFactory tabulated_tsallis_factory(long index, int bit) {
    struct Cache {
        std::mutex lock;
        std::map<double, std::shared_ptr<const DeformationScheme>> built;
    };
    auto cache = std::make_shared<Cache>();
    return [cache, index, bit](double q) {
        std::shared_ptr<const DeformationScheme> entry;
        {
            std::lock_guard guard(cache->lock);
            auto it = cache->built.find(q);
            if (it != cache->built.end()) entry = it->second;
        }
        if (!entry) {
            entry = std::make_shared<const DeformationScheme>(tabulated_tsallis(q, index, bit));
            std::lock_guard guard(cache->lock);
            cache->built.emplace(q, entry);
        }
        return *entry;
    };
}

}  // namespace deformed
