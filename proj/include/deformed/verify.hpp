#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deformed/scheme.hpp"

namespace deformed {

struct VerifyCase {
    std::string name;
    /// Human-readable statement of the identity being checked.
    std::string anchor;
    /// Descriptor of the scheme the case ran on.
    std::string scheme;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    /// Set when the case threw instead of producing a residual.
    std::string error;
};

struct VerificationReport {
    std::string suite;
    std::vector<VerifyCase> cases;  ///< sorted by (name, scheme)
    bool overall = false;
};

/// Builds the scheme used wherever a suite needs the Tsallis oscillator at q.
using TsallisFactory = std::function<DeformationScheme(double q)>;

struct VerifyOptions {
    /// Restricts the suites to one scheme. Tsallis schemes fix q; other
    /// built-ins run the family-independent cases only.
    std::optional<DeformationScheme> scheme;
    TsallisFactory tsallis = &DeformationScheme::tsallis;
    /// Spread cases over hardware_concurrency() worker threads.
    bool concurrent = true;
};

inline constexpr std::string_view kSuiteNames[] = {"series", "spectrum", "coherent", "calculus"};

bool is_suite_name(std::string_view suite);

/// Runs one suite, or every suite for "all". Throws PreconditionError for an
/// unknown suite name.
VerificationReport run_verification(std::string_view suite, const VerifyOptions& options = {});

/// Largest table index a tabulated Tsallis scheme must cover for the suites.
inline constexpr long kVerifyTableLength = 1'000'002;

/// phi_T(0..kVerifyTableLength-1) as a CustomPhi table with bit `bit` (0 = least
/// significant, IEEE-754 layout) of entry `index` flipped. Pass bit < 0 for an
/// unmodified table. Throws PreconditionError when the flip yields an invalid table.
DeformationScheme tabulated_tsallis(double q, long index = 0, int bit = -1);

/// Factory returning tabulated_tsallis(q, index, bit), built once per q and shared
/// between threads.
TsallisFactory tabulated_tsallis_factory(long index = 0, int bit = -1);

}  // namespace deformed
