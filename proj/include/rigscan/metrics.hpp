#pragma once

#include "rigscan/rational.hpp"

#include <string>

// Accuracy calculus for probabilities in [0,1]: absolute/relative errors of
// point and interval approximations, optimal approximators, the maximal
// accuracy reachable in binary64, and the presentation formats (3-significant
// -digit bounds, the 7-digit probability representation system T).

namespace rigscan {

/// |p - p~|, rounded up.
double e_abs_point(double p, double pt);

/// |p - p~| / min(p, 1-p) with 0/0 := 0 and x/0 := inf, rounded up.
double e_rel_point(double p, double pt);

/// max over p in [a,b] of e_rel(p, p~); for p~ in [a,b] the maximum is
/// attained at an endpoint, so this is max(e_rel(a,p~), e_rel(b,p~)).
double e_rel_interval_at(double a, double b, double pt);

struct OptimalError {
    double value;        // upper bound on the mini-max error
    double approximator; // p~ attaining it (within rounding), inside [a,b]
    bool numeric;        // found by bisection (interval straddling 1/2)
};

/// ((b-a)/2 rounded up, midpoint).
OptimalError e_abs_interval(double a, double b);

/// Mini-max relative error: (b-a)/(b+a) at 2ab/(a+b) for b <= 1/2,
/// (b-a)/(2-a-b) at (a+b-2ab)/(2-a-b) for a >= 1/2, bisection otherwise.
OptimalError e_rel_interval(double a, double b);

/// Relative error of the minimal enclosing representable interval I(p):
/// 0 for representable p, inf below the smallest positive representable and
/// inside (1-2^-53, 1), otherwise 1/(2m+1) for the relevant mantissa index m.
double max_accuracy(const Rational& p);

/// Complement-aware variant: additionally inf for 0 < p < 2^-53, and the
/// coarser complement grid decides the mantissa index.
double max_accuracy_complement(const Rational& p);

/// Minimal c*10^k >= x with exactly 3 significant digits in c, e.g.
/// "2.01e-11"; "0" and "inf" pass through.
std::string display_bound_3sig(double x);

/// Known digits of the nearest T-system value: leading 0/9 runs compressed as
/// .0^x / .9^x (when longer than two), then the digits both endpoints agree
/// on, then "?" once they disagree.
std::string format_T(double a, double b);

struct ErrorReport {
    double e_abs_opt = 0;
    double e_abs_approximator = 0;
    std::string e_abs_display;
    double e_rel_opt = 0;
    double e_rel_approximator = 0;
    std::string e_rel_display;
    std::string approx;
};

/// Full accuracy report for a certified interval.  An interval whose upper
/// bound reaches 1 while the lower does not reports relative error inf: it
/// contains probabilities whose complement no representable value
/// approximates to any relative accuracy.
ErrorReport build_error_report(double lo, double hi);

} // namespace rigscan
