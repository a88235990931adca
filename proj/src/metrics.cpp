#include "rigscan/metrics.hpp"

#include "rigscan/fpround.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rigscan {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::msb;
using boost::multiprecision::numerator;

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_unit(double v, const char* what)
{
    if (!(v >= 0 && v <= 1)) throw std::domain_error(std::string(what) + ": outside [0,1]");
}

void check_interval(double a, double b, const char* what)
{
    check_unit(a, what);
    check_unit(b, what);
    if (!(a <= b)) throw std::domain_error(std::string(what) + ": requires a <= b");
}

Rational pow10r(long k)
{
    Int p(1);
    for (long i = 0; i < std::labs(k); ++i) p *= 10;
    return k >= 0 ? Rational(p) : Rational(Int(1), p);
}

} // namespace

double e_abs_point(double p, double pt)
{
    check_unit(p, "e_abs_point");
    check_unit(pt, "e_abs_point");
    return p >= pt ? fp::sub_up_raw(p, pt) : fp::sub_up_raw(pt, p);
}

double e_rel_point(double p, double pt)
{
    const double num = e_abs_point(p, pt);
    if (num == 0) return 0;
    fp::RoundingSession session;
    const double den = std::min(p, fp::sub_dn_raw(1.0, p));
    if (den == 0) return kInf;
    return fp::div_up_raw(num, den);
}

double e_rel_interval_at(double a, double b, double pt)
{
    check_interval(a, b, "e_rel_interval_at");
    if (!(a <= pt && pt <= b))
        throw std::domain_error("e_rel_interval_at: approximator outside [a,b]");
    return std::max(e_rel_point(a, pt), e_rel_point(b, pt));
}

OptimalError e_abs_interval(double a, double b)
{
    check_interval(a, b, "e_abs_interval");
    fp::RoundingSession session;
    const double value = fp::div_up_raw(fp::sub_up_raw(b, a), 2.0);
    const double mid = std::clamp(0.5 * (a + b), a, b);
    return {value, mid, false};
}

OptimalError e_rel_interval(double a, double b)
{
    check_interval(a, b, "e_rel_interval");
    if (a == b) return {0, a, false};
    fp::RoundingSession session;
    if (b <= 0.5) {
        const double value = fp::div_up_raw(fp::sub_up_raw(b, a), fp::add_dn_raw(a, b));
        const double pt = std::clamp(2 * a * b / (a + b), a, b);
        return {value, pt, false};
    }
    if (a >= 0.5) {
        const double den = fp::sub_dn_raw(fp::sub_dn_raw(2.0, a), b);
        const double value = den <= 0 ? kInf : fp::div_up_raw(fp::sub_up_raw(b, a), den);
        const double dexact = 2 - a - b;
        const double pt = dexact <= 0 ? b : std::clamp((a + b - 2 * a * b) / dexact, a, b);
        return {value, pt, false};
    }
    // Straddling 1/2: e_rel(a, .) increases and e_rel(b, .) decreases in the
    // approximator, so the optimum sits at their crossing.
    double lo = a, hi = b;
    for (int i = 0; i < 200 && std::nextafter(lo, hi) < hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (e_rel_point(a, mid) < e_rel_point(b, mid))
            lo = mid;
        else
            hi = mid;
    }
    const double glo = e_rel_interval_at(a, b, lo);
    const double ghi = e_rel_interval_at(a, b, hi);
    return glo <= ghi ? OptimalError{glo, lo, true} : OptimalError{ghi, hi, true};
}

// ---------------------------------------------------------------------------
// Maximal accuracy

namespace {

double inv_odd(const Int& m)
{
    return to_double_down(Rational(Int(1), 2 * m + 1));
}

Int floor_rational(const Rational& v)
{
    return numerator(v) / denominator(v);
}

} // namespace

double max_accuracy(const Rational& p)
{
    if (p < 0 || p > 1) throw std::domain_error("max_accuracy: p outside [0,1]");
    if (p == 0 || p == 1) return 0;
    if (p < pow2(-1074)) return kInf;
    if (p > 1 - pow2(-53)) return kInf;
    if (is_representable64(p)) return 0;
    if (p < pow2(-1022)) return inv_odd(floor_rational(p * pow2(1074)));
    if (p > Rational(1, 2)) return inv_odd(floor_rational((1 - p) * pow2(53)));
    long e = static_cast<long>(msb(numerator(p))) - static_cast<long>(msb(denominator(p)));
    if (p < pow2(e)) --e;
    if (p >= pow2(e + 1)) ++e;
    return inv_odd(floor_rational(p * pow2(52 - e)));
}

double max_accuracy_complement(const Rational& p)
{
    if (p < 0 || p > 1) throw std::domain_error("max_accuracy_complement: p outside [0,1]");
    if (p == 0 || p == 1) return 0;
    if (p < pow2(-53) || p > 1 - pow2(-53)) return kInf;
    const Rational q = 2 * p <= 1 ? p : 1 - p;
    const Rational scaled = q * pow2(53);
    if (denominator(scaled) == 1) return 0; // p and 1-p both representable
    return inv_odd(floor_rational(scaled));
}

// ---------------------------------------------------------------------------
// Presentation

std::string display_bound_3sig(double x)
{
    if (std::isnan(x)) throw std::domain_error("display_bound_3sig: NaN");
    if (x == 0) return "0";
    if (std::isinf(x)) return "inf";
    if (x < 0) throw std::domain_error("display_bound_3sig: negative");
    const Rational v = rational_of(x);
    long e10 = static_cast<long>(std::floor(std::log10(x)));
    while (v < pow10r(e10)) --e10;
    while (v >= pow10r(e10 + 1)) ++e10;
    const long b = e10 - 2;
    const Rational q = v / pow10r(b);
    Int a = floor_rational(q);
    if (Rational(a) != q) ++a; // ceil
    long exp = b + 2;
    if (a > 999) {
        a = 100;
        ++exp;
    }
    const std::string digits = a.str();
    std::string out;
    out += digits[0];
    out += '.';
    out += digits.substr(1);
    out += 'e';
    out += std::to_string(exp);
    return out;
}

// ---------------------------------------------------------------------------
// The T system.  A T-value in (0,1) is a leading run of 0s or 9s followed by
// max(5, 7-run) digits, the first of which differs from the run digit; 0 and
// 1 belong to T as the all-0 and all-9 expansions.

namespace {

struct TImage {
    enum Kind { zero, one, num } kind = zero;
    char run_char = '0';
    unsigned run_len = 0;
    std::string digits;

    bool operator==(const TImage&) const = default;

    // digit at decimal position i (0-based); nullopt when the image ends
    int digit_at(std::size_t i) const
    {
        if (kind == zero) return '0';
        if (kind == one) return '9';
        if (i < run_len) return run_char;
        const std::size_t j = i - run_len;
        if (j < digits.size()) return digits[j];
        return -1;
    }
};

unsigned digits_after_run(unsigned run) { return run >= 2 ? 5 : 7 - run; }

TImage canonical_from(const Int& block, unsigned places)
{
    std::string s = block.str();
    if (s.size() > places)
        throw std::logic_error("format_T: rounded block overflowed its scale");
    if (s.size() < places) s.insert(0, places - s.size(), '0');
    TImage img;
    img.kind = TImage::num;
    if (s[0] == '0' || s[0] == '9') {
        img.run_char = s[0];
        while (img.run_len < s.size() && s[img.run_len] == img.run_char) ++img.run_len;
        if (img.run_len == s.size() && img.run_char == '9') return {TImage::one, '9', 0, ""};
    }
    const unsigned nd = digits_after_run(img.run_len);
    img.digits = s.substr(img.run_len, nd);
    if (img.digits.size() < nd) img.digits.append(nd - img.digits.size(), '0');
    if (img.digits.find_first_not_of('0') == std::string::npos && img.run_char == '0')
        return {TImage::zero, '0', 0, ""};
    return img;
}

TImage nearest_T(double v)
{
    check_unit(v, "format_T");
    if (v == 0) return {TImage::zero, '0', 0, ""};
    if (v == 1) return {TImage::one, '9', 0, ""};
    const Rational r = rational_of(v);
    const DecimalDigits lead = decimal_digits(r, 400);
    unsigned run = 0;
    char rc = lead.digits[0];
    if (rc == '0' || rc == '9')
        while (run < lead.digits.size() && lead.digits[run] == rc) ++run;
    else
        rc = '0';
    const unsigned places = run + digits_after_run(run);
    const Rational scaled = r * pow10r(static_cast<long>(places));
    Int block = floor_rational(scaled);
    const Rational frac = scaled - Rational(block);
    const bool nine_run = run > 0 && rc == '9';
    if (frac > Rational(1, 2) || (frac == Rational(1, 2) && !nine_run)) ++block;
    return canonical_from(block, places);
}

std::string render_run(char c, unsigned len)
{
    if (len >= 3) return std::string(1, c) + "^" + std::to_string(len);
    return std::string(len, c);
}

std::string render_full(const TImage& img)
{
    if (img.kind == TImage::zero) return "0";
    if (img.kind == TImage::one) return "1";
    return "." + render_run(img.run_char, img.run_len) + img.digits;
}

std::string render_prefix(const std::string& prefix)
{
    std::string out = ".";
    std::size_t run = 0;
    if (!prefix.empty() && (prefix[0] == '0' || prefix[0] == '9'))
        while (run < prefix.size() && prefix[run] == prefix[0]) ++run;
    out += render_run(prefix.empty() ? '0' : prefix[0], static_cast<unsigned>(run));
    out += prefix.substr(run);
    out += "?";
    return out;
}

} // namespace

std::string format_T(double a, double b)
{
    check_interval(a, b, "format_T");
    const TImage ta = nearest_T(a);
    const TImage tb = nearest_T(b);
    if (ta == tb) return render_full(ta);
    std::string prefix;
    for (std::size_t i = 0;; ++i) {
        const int da = ta.digit_at(i);
        const int db = tb.digit_at(i);
        if (da < 0 || db < 0 || da != db) break;
        prefix += static_cast<char>(da);
    }
    return render_prefix(prefix);
}

ErrorReport build_error_report(double lo, double hi)
{
    check_interval(lo, hi, "build_error_report");
    ErrorReport report;
    const OptimalError ea = e_abs_interval(lo, hi);
    report.e_abs_opt = ea.value;
    report.e_abs_approximator = ea.approximator;
    report.e_abs_display = display_bound_3sig(ea.value);
    if (hi >= 1 && lo < 1) {
        report.e_rel_opt = kInf;
        report.e_rel_approximator = 1;
        report.e_rel_display = "inf";
    } else {
        const OptimalError er = e_rel_interval(lo, hi);
        report.e_rel_opt = er.value;
        report.e_rel_approximator = er.approximator;
        report.e_rel_display = display_bound_3sig(er.value);
    }
    report.approx = format_T(lo, hi);
    return report;
}

} // namespace rigscan
