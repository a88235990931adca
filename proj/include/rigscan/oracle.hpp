#pragma once

#include "rigscan/engine.hpp"
#include "rigscan/kernels.hpp"
#include "rigscan/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Exact-arithmetic reference for small instances: brute-force enumeration of
// the multinomial/hypergeometric support, and an independent exact-rational
// DP over window states.  Both produce exact reduced rationals and exist to
// certify the interval pipeline.

namespace rigscan {

struct OracleSpec {
    Family family = Family::multinomial;
    std::int64_t n = 0;
    std::int64_t d = 0;
    std::vector<Rational> p;        // multinomial cell probabilities, exact
    std::vector<std::int64_t> m;    // hypergeometric cell counts

    static OracleSpec multinomial(std::int64_t n, std::vector<Rational> p);
    static OracleSpec multinomial_uniform(std::int64_t n, std::int64_t d);
    static OracleSpec hypergeometric(std::int64_t n, std::vector<std::int64_t> m);
};

class BudgetError : public std::runtime_error {
public:
    BudgetError(Int required, Int budget)
        : std::runtime_error("oracle budget exceeded: requires " + required.str() +
                             ", budget " + budget.str()),
          required_(std::move(required))
    {
    }
    const Int& required() const { return required_; }

private:
    Int required_;
};

inline constexpr long kDefaultOracleBudget = 100'000'000;

/// P(all windows of length ell sum to <= t), by pruned enumeration of the
/// support.  Refuses when C(n+d-1, d-1) exceeds the budget.
Rational exact_scan_probability(const OracleSpec& spec, std::uint32_t ell, std::int64_t t,
                                const Int& budget = Int(kDefaultOracleBudget));

/// P(max window sum >= t), by enumeration of the complementary event.
Rational exact_scan_tail_probability(const OracleSpec& spec, std::uint32_t ell,
                                     std::int64_t t,
                                     const Int& budget = Int(kDefaultOracleBudget));

/// The same rectangle probabilities through the exact-rational recursion over
/// window states; the independent second oracle.
Rational exact_rectangle_dp(const OracleSpec& spec, std::uint32_t ell,
                            const std::vector<IntSet>& sets,
                            const Int& budget = Int(kDefaultOracleBudget));

/// CDF convenience: all window sets {0..t}.
Rational exact_rectangle_dp(const OracleSpec& spec, std::uint32_t ell, std::int64_t t,
                            const Int& budget = Int(kDefaultOracleBudget));

/// Fixture lines: family, n, d, ell, t, parameters, reduced fraction;
/// tab-separated.
struct FixtureLine {
    Family family = Family::multinomial;
    std::int64_t n = 0;
    std::int64_t d = 0;
    std::uint32_t ell = 1;
    std::int64_t t = 0;
    std::string params; // "uniform" | "p=..." | "m=..."
    Rational value;
};

std::string fixture_format(const FixtureLine& line);
FixtureLine fixture_parse(const std::string& line);
OracleSpec fixture_spec(const FixtureLine& line);

} // namespace rigscan
