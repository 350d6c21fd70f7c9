#include "deformed/scheme.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

namespace deformed {

namespace {

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view text, std::string_view key) {
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw PreconditionError("cannot parse value '" + std::string(text) + "' for key '" +
                                std::string(key) + "'");
    }
    return v;
}

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw PreconditionError(std::string(name) + " must be finite");
}

void check_index(long n) {
    if (n < 0) throw PreconditionError("n must be nonnegative, got " + std::to_string(n));
}

double checked(double v, long n, const char* family) {
    if (!std::isfinite(v)) {
        throw RangeError(std::string(family) + " number overflows double precision at n = " +
                             std::to_string(n),
                         n);
    }
    return v;
}

double q_number(double q, long n) {
    const double l = std::log(q);
    return checked(std::expm1(static_cast<double>(n) * l) / std::expm1(l), n, "q");
}

double symmetric_number(double q, long n) {
    const double h = std::log(q);
    return checked(std::sinh(static_cast<double>(n) * h) / std::sinh(h), n, "symmetric q");
}

double pq_number(double p, double q, long n) {
    if (p > 0.0 && q > 0.0) {
        // hi^(n-1) * (1 - r^n) / (1 - r), r = lo/hi, written symmetric in (p, q).
        const double hi = std::max(p, q);
        const double lo = std::min(p, q);
        const double l = std::log(lo / hi);
        const double ratio = std::expm1(static_cast<double>(n) * l) / std::expm1(l);
        const double log_scale = static_cast<double>(n - 1) * std::log(hi);
        return checked(std::exp(log_scale) * ratio, n, "(p,q)");
    }
    const double nd = static_cast<double>(n);
    return checked((std::pow(p, nd) - std::pow(q, nd)) / (p - q), n, "(p,q)");
}

double tsallis_denominator(double q, long n) {
    return 1.0 + (q - 1.0) * static_cast<double>(n - 1);
}

double tsallis_number(double q, long n) {
    if (q == 1.0) return static_cast<double>(n);
    const double den = tsallis_denominator(q, n);
    if (den <= 0.0) {
        throw DomainError("Tsallis number has a pole at n = " + std::to_string(n) +
                          " for q = " + format_number(q));
    }
    return static_cast<double>(n) / den;
}

// key=value,key=value
std::map<std::string, std::string, std::less<>> parse_params(std::string_view body) {
    std::map<std::string, std::string, std::less<>> out;
    while (!body.empty()) {
        const auto comma = body.find(',');
        const auto item = body.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw PreconditionError("malformed scheme parameter '" + std::string(item) + "'");
        }
        const std::string key(item.substr(0, eq));
        if (out.count(key)) throw PreconditionError("duplicate scheme parameter '" + key + "'");
        out.emplace(key, std::string(item.substr(eq + 1)));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

bool operator==(const Boson&, const Boson&) { return true; }
bool operator==(const QOsc& a, const QOsc& b) { return a.q == b.q; }
bool operator==(const SymmetricQ& a, const SymmetricQ& b) { return a.q == b.q; }
bool operator==(const PQ& a, const PQ& b) { return a.p == b.p && a.q == b.q; }
bool operator==(const Tsallis& a, const Tsallis& b) { return a.q == b.q; }
bool operator==(const Mu& a, const Mu& b) { return a.mu == b.mu; }
bool operator==(const CustomPhi& a, const CustomPhi& b) { return a.table == b.table; }

bool operator==(const DeformationScheme& a, const DeformationScheme& b) {
    return a.variant_ == b.variant_;
}

DeformationScheme DeformationScheme::boson() { return DeformationScheme(Boson{}); }

DeformationScheme DeformationScheme::q_oscillator(double q) {
    require_finite(q, "q");
    if (!(q > 0.0) || q == 1.0) throw PreconditionError("q-oscillator requires q > 0, q != 1");
    return DeformationScheme(QOsc{q});
}

DeformationScheme DeformationScheme::symmetric_q(double q) {
    require_finite(q, "q");
    if (!(q > 0.0) || q == 1.0) {
        throw PreconditionError("symmetric q-oscillator requires q > 0, q != 1");
    }
    return DeformationScheme(SymmetricQ{q});
}

DeformationScheme DeformationScheme::pq(double p, double q) {
    require_finite(p, "p");
    require_finite(q, "q");
    if (p == q) throw PreconditionError("(p,q)-oscillator requires p != q");
    return DeformationScheme(PQ{p, q});
}

DeformationScheme DeformationScheme::tsallis(double q) {
    require_finite(q, "q");
    if (!(q > 0.0) || q > 2.0) {
        throw PreconditionError(
            "q out of range (0,2]: phi_T(n) turns negative for q > 2, got q = " +
            format_number(q));
    }
    return DeformationScheme(Tsallis{q});
}

DeformationScheme DeformationScheme::mu(double mu) {
    require_finite(mu, "mu");
    if (!(mu >= 0.0)) throw PreconditionError("mu-oscillator requires mu >= 0");
    return DeformationScheme(Mu{mu});
}

DeformationScheme DeformationScheme::custom(std::vector<double> table) {
    if (table.empty()) throw PreconditionError("custom phi table must not be empty");
    if (table[0] != 0.0) throw PreconditionError("custom phi table must start with phi(0) = 0");
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!std::isfinite(table[i]) || table[i] < 0.0) {
            throw PreconditionError("custom phi entry " + std::to_string(i) +
                                    " must be a finite nonnegative number");
        }
    }
    return DeformationScheme(CustomPhi{std::move(table)});
}

DeformationScheme DeformationScheme::parse(std::string_view descriptor) {
    const auto colon = descriptor.find(':');
    const std::string_view family = descriptor.substr(0, colon);
    const std::string_view body =
        colon == std::string_view::npos ? std::string_view{} : descriptor.substr(colon + 1);
    auto params = parse_params(body);

    auto take = [&](std::string_view key) {
        auto it = params.find(key);
        if (it == params.end()) {
            throw PreconditionError("scheme '" + std::string(family) + "' requires parameter '" +
                                    std::string(key) + "'");
        }
        std::string value = it->second;
        params.erase(it);
        return value;
    };
    auto finish = [&](DeformationScheme s) {
        if (!params.empty()) {
            throw PreconditionError("unknown parameter '" + params.begin()->first +
                                    "' for scheme '" + std::string(family) + "'");
        }
        return s;
    };

    if (family == "boson") return finish(boson());
    if (family == "q") return finish(q_oscillator(parse_number(take("q"), "q")));
    if (family == "symq") return finish(symmetric_q(parse_number(take("q"), "q")));
    if (family == "pq") {
        const double p = parse_number(take("p"), "p");
        const double q = parse_number(take("q"), "q");
        return finish(pq(p, q));
    }
    if (family == "tsallis") return finish(tsallis(parse_number(take("q"), "q")));
    if (family == "mu") return finish(mu(parse_number(take("mu"), "mu")));
    if (family == "custom") {
        std::vector<double> table;
        const std::string owned = take("table");
        std::string_view view(owned);
        while (true) {
            const auto bar = view.find('|');
            table.push_back(parse_number(view.substr(0, bar), "table"));
            if (bar == std::string_view::npos) break;
            view.remove_prefix(bar + 1);
        }
        return finish(custom(std::move(table)));
    }
    throw PreconditionError("unknown scheme family '" + std::string(family) + "'");
}

std::string DeformationScheme::descriptor() const {
    struct Visitor {
        std::string operator()(const Boson&) const { return "boson"; }
        std::string operator()(const QOsc& s) const { return "q:q=" + format_number(s.q); }
        std::string operator()(const SymmetricQ& s) const {
            return "symq:q=" + format_number(s.q);
        }
        std::string operator()(const PQ& s) const {
            return "pq:p=" + format_number(s.p) + ",q=" + format_number(s.q);
        }
        std::string operator()(const Tsallis& s) const {
            return "tsallis:q=" + format_number(s.q);
        }
        std::string operator()(const Mu& s) const { return "mu:mu=" + format_number(s.mu); }
        std::string operator()(const CustomPhi& s) const {
            std::string out = "custom:table=";
            for (std::size_t i = 0; i < s.table.size(); ++i) {
                if (i) out += '|';
                out += format_number(s.table[i]);
            }
            return out;
        }
    };
    return std::visit(Visitor{}, variant_);
}

double phi(const DeformationScheme& scheme, long n) {
    check_index(n);
    if (n == 0) return 0.0;
    if (n == 1 && scheme.is_builtin() && !scheme.is<Mu>()) return 1.0;

    struct Visitor {
        long n;
        double operator()(const Boson&) const { return static_cast<double>(n); }
        double operator()(const QOsc& s) const { return q_number(s.q, n); }
        double operator()(const SymmetricQ& s) const { return symmetric_number(s.q, n); }
        double operator()(const PQ& s) const { return pq_number(s.p, s.q, n); }
        double operator()(const Tsallis& s) const { return tsallis_number(s.q, n); }
        double operator()(const Mu& s) const {
            return static_cast<double>(n) / (1.0 + s.mu * static_cast<double>(n));
        }
        double operator()(const CustomPhi& s) const {
            if (static_cast<std::size_t>(n) >= s.table.size()) {
                throw DomainError("custom phi table has " + std::to_string(s.table.size()) +
                                  " entries; phi(" + std::to_string(n) + ") is not defined");
            }
            return s.table[static_cast<std::size_t>(n)];
        }
    };
    return std::visit(Visitor{n}, scheme.variant());
}

double phi_factorial(const DeformationScheme& scheme, long n, bool log_domain) {
    check_index(n);
    if (log_domain) {
        double acc = 0.0;
        for (long j = 1; j <= n; ++j) {
            const double f = phi(scheme, j);
            if (!(f > 0.0)) {
                throw DomainError("log phi-factorial needs positive factors; phi(" +
                                  std::to_string(j) + ") = " + format_number(f));
            }
            acc += std::log(f);
        }
        return acc;
    }
    double acc = 1.0;
    for (long j = 1; j <= n; ++j) {
        acc *= phi(scheme, j);
        if (!std::isfinite(acc)) {
            throw RangeError("phi-factorial overflows double precision at n = " +
                                 std::to_string(j) + "; use the log domain",
                             j);
        }
    }
    return acc;
}

double nonlinearity_f(const DeformationScheme& scheme, long n) {
    if (n < 1) throw PreconditionError("nonlinearity f(n) requires n >= 1");
    if (scheme.is<Tsallis>()) {
        const double q = scheme.as<Tsallis>().q;
        const double den = tsallis_denominator(q, n);
        if (den <= 0.0) {
            throw DomainError("Tsallis nonlinearity undefined at n = " + std::to_string(n));
        }
        return 1.0 / std::sqrt(den);
    }
    const double value = phi(scheme, n);
    if (value < 0.0) {
        throw DomainError("nonlinearity f(n) undefined for negative phi at n = " +
                          std::to_string(n));
    }
    return std::sqrt(value / static_cast<double>(n));
}

double radius_of_convergence(const DeformationScheme& scheme) {
    struct Visitor {
        double operator()(const Boson&) const { return kInfinity; }
        double operator()(const QOsc& s) const { return s.q < 1.0 ? 1.0 / (1.0 - s.q) : kInfinity; }
        double operator()(const SymmetricQ&) const { return kInfinity; }
        double operator()(const PQ& s) const {
            const double hi = std::max(std::abs(s.p), std::abs(s.q));
            const double lo = std::min(std::abs(s.p), std::abs(s.q));
            if (hi > 1.0) return kInfinity;
            if (hi < 1.0) return 0.0;
            // |phi(n)| -> 1/|p - q| when exactly one of |p|, |q| is 1.
            if (lo == 1.0) return 0.0;
            return 1.0 / std::abs(s.p - s.q);
        }
        double operator()(const Tsallis& s) const {
            if (s.q > 1.0) return 1.0 / (s.q - 1.0);
            if (s.q == 1.0) return kInfinity;
            // Binomial series (1 + (1-q)x)^(1/(1-q)): terminates when the
            // exponent is a positive integer, otherwise the branch point bounds it.
            const double exponent = 1.0 / (1.0 - s.q);
            if (exponent == std::round(exponent)) return kInfinity;
            return exponent;
        }
        double operator()(const Mu& s) const { return s.mu > 0.0 ? 1.0 / s.mu : kInfinity; }
        double operator()(const CustomPhi&) const {
            throw UnsupportedError("radius of convergence is not available for a tabulated phi");
        }
    };
    return std::visit(Visitor{}, scheme.variant());
}

}  // namespace deformed
