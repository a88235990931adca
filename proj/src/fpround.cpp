#include "rigscan/fpround.hpp"

#include <bit>
#include <cfenv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <mutex>

namespace rigscan::fp {

namespace detail {

thread_local int tl_session_depth = 0;
std::atomic<int> g_mode{-1};

namespace {

bool probe_strong()
{
    const int saved = std::fegetround();
    if (std::fesetround(FE_UPWARD) != 0) return false;
    const double up = hw_div_up<double>(1.0, 3.0);
    const double dn = hw_div_dn<double>(1.0, 3.0);
    std::fesetround(saved);
    return dn < up;
}

int resolve_mode_impl()
{
    const char* env = std::getenv("RIGSCAN_ROUNDING");
    if (env != nullptr && std::strcmp(env, "fallback") == 0) return 1;
    const bool have_strong = probe_strong();
    if (env != nullptr && std::strcmp(env, "strong") == 0) {
        if (!have_strong)
            throw std::runtime_error(
                "RIGSCAN_ROUNDING=strong requested but rounding-direction "
                "control is unavailable");
        return 0;
    }
    return have_strong ? 0 : 1;
}

} // namespace

int resolve_mode()
{
    int m = g_mode.load(std::memory_order_acquire);
    if (m >= 0) return m;
    static std::mutex mu;
    const std::lock_guard<std::mutex> lock(mu);
    m = g_mode.load(std::memory_order_relaxed);
    if (m < 0) {
        m = resolve_mode_impl();
        g_mode.store(m, std::memory_order_release);
    }
    return m;
}

void force_mode_for_tests(int mode)
{
    g_mode.store(mode, std::memory_order_release);
}

} // namespace detail

Mode active_mode()
{
    return detail::resolve_mode() == 0 ? Mode::strong : Mode::fallback;
}

RoundingSession::RoundingSession()
{
    if (detail::resolve_mode() != 0) return;
    counted_ = true;
    if (detail::tl_session_depth++ == 0) {
        saved_ = std::fegetround();
        std::fesetround(FE_UPWARD);
        restore_ = true;
    }
}

RoundingSession::~RoundingSession()
{
    if (!counted_) return;
    if (--detail::tl_session_depth == 0 && restore_) std::fesetround(saved_);
}

namespace detail {
namespace {

// ---------------------------------------------------------------------------
// Fallback primitives (no fenv access): nearest-rounded result plus an exact
// error term decides the outward step.  Where the error term itself could
// underflow (tiny products/quotients) the result is stepped outward
// unconditionally, which stays within the fallback contract.

constexpr double kDblMax = std::numeric_limits<double>::max();

inline double next_up_d(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
inline double next_dn_d(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }

// Knuth two-sum error term; exact for all finite inputs.
inline double two_sum_err(double a, double b, double s)
{
    const double bb = s - a;
    const double aa = s - bb;
    const double db = b - bb;
    const double da = a - aa;
    return da + db;
}

double fb_add_up(double a, double b)
{
    if (std::isinf(a) || std::isinf(b)) return a + b;
    const double s = a + b;
    if (std::isinf(s)) return s > 0 ? s : -kDblMax;
    const double e = two_sum_err(a, b, s);
    return e > 0 ? next_up_d(s) : s;
}

double fb_add_dn(double a, double b)
{
    if (std::isinf(a) || std::isinf(b)) return a + b;
    const double s = a + b;
    if (std::isinf(s)) return s > 0 ? kDblMax : s;
    const double e = two_sum_err(a, b, s);
    return e < 0 ? next_dn_d(s) : s;
}

// |p| below this and the fma error term of a product may itself be inexact.
constexpr double kMulDanger = 0x1p-968;

double fb_mul_up(double a, double b)
{
    if (a == 0 || b == 0 || std::isinf(a) || std::isinf(b)) return a * b;
    const double p = a * b;
    if (std::isinf(p)) return p > 0 ? p : -kDblMax;
    if (p == 0) return std::signbit(a) == std::signbit(b) ? std::numeric_limits<double>::denorm_min() : -0.0;
    if (std::fabs(p) < kMulDanger) return next_up_d(p);
    const double e = std::fma(a, b, -p);
    return e > 0 ? next_up_d(p) : p;
}

double fb_mul_dn(double a, double b)
{
    if (a == 0 || b == 0 || std::isinf(a) || std::isinf(b)) return a * b;
    const double p = a * b;
    if (std::isinf(p)) return p > 0 ? kDblMax : p;
    if (p == 0) return std::signbit(a) == std::signbit(b) ? 0.0 : -std::numeric_limits<double>::denorm_min();
    if (std::fabs(p) < kMulDanger) return next_dn_d(p);
    const double e = std::fma(a, b, -p);
    return e < 0 ? next_dn_d(p) : p;
}

double fb_div_up(double a, double b)
{
    if (a == 0 || std::isinf(b)) return a / b; // exact zero, signed
    if (std::isinf(a)) return a / b;           // exact infinity
    const double q = a / b;
    if (std::isinf(q)) return q > 0 ? q : -kDblMax;
    if (q == 0) return (std::signbit(a) == std::signbit(b)) ? std::numeric_limits<double>::denorm_min() : -0.0;
    if (std::fabs(q) < kMulDanger || std::fabs(a) < kMulDanger) return next_up_d(q);
    const double r = std::fma(-q, b, a); // residual a - q*b, exact here
    if (r == 0) return q;
    const bool exact_above = std::signbit(r) == std::signbit(b); // a/b > q
    return exact_above ? next_up_d(q) : q;
}

double fb_div_dn(double a, double b)
{
    if (a == 0 || std::isinf(b)) return a / b;
    if (std::isinf(a)) return a / b;
    const double q = a / b;
    if (std::isinf(q)) return q > 0 ? kDblMax : q;
    if (q == 0) return (std::signbit(a) == std::signbit(b)) ? 0.0 : -std::numeric_limits<double>::denorm_min();
    if (std::fabs(q) < kMulDanger || std::fabs(a) < kMulDanger) return next_dn_d(q);
    const double r = std::fma(-q, b, a);
    if (r == 0) return q;
    const bool exact_above = std::signbit(r) == std::signbit(b);
    return exact_above ? q : next_dn_d(q);
}

// Fallback float primitives: * of floats is exact in double, + leaves an
// exact double two-sum error, / an exact fma residual; a directed
// double->float conversion finishes each.

float flt_from_exact_double(double x, bool up)
{
    float f = static_cast<float>(x);
    if (std::isinf(f)) {
        if (up) return f > 0 ? f : -std::numeric_limits<float>::max();
        return f > 0 ? std::numeric_limits<float>::max() : f;
    }
    const double fd = static_cast<double>(f);
    if (fd == x) return f;
    if (up) return fd > x ? f : std::nextafterf(f, std::numeric_limits<float>::infinity());
    return fd < x ? f : std::nextafterf(f, -std::numeric_limits<float>::infinity());
}

// exact value = s + e with |e| <= ulp(s)/2; f vs s is conclusive because a
// float step dwarfs e, and ties fall back to the sign of e.
float flt_from_sum(double s, double e, bool up)
{
    float f = static_cast<float>(s);
    if (std::isinf(f)) {
        if (up) return f > 0 ? f : -std::numeric_limits<float>::max();
        return f > 0 ? std::numeric_limits<float>::max() : f;
    }
    const double fd = static_cast<double>(f);
    int cmp; // sign of f - exact
    if (fd != s)
        cmp = fd > s ? 1 : -1;
    else
        cmp = e == 0 ? 0 : (e > 0 ? -1 : 1);
    if (cmp == 0) return f;
    if (up) return cmp > 0 ? f : std::nextafterf(f, std::numeric_limits<float>::infinity());
    return cmp < 0 ? f : std::nextafterf(f, -std::numeric_limits<float>::infinity());
}

float fb_add_up_f(float a, float b)
{
    if (std::isinf(a) || std::isinf(b)) return a + b;
    const double ad = a, bd = b;
    const double s = ad + bd; // never overflows double for float inputs
    return flt_from_sum(s, two_sum_err(ad, bd, s), true);
}
float fb_add_dn_f(float a, float b)
{
    if (std::isinf(a) || std::isinf(b)) return a + b;
    const double ad = a, bd = b;
    const double s = ad + bd;
    return flt_from_sum(s, two_sum_err(ad, bd, s), false);
}
float fb_mul_up_f(float a, float b)
{
    if (a == 0 || b == 0 || std::isinf(a) || std::isinf(b)) return a * b;
    return flt_from_exact_double(static_cast<double>(a) * static_cast<double>(b), true);
}
float fb_mul_dn_f(float a, float b)
{
    if (a == 0 || b == 0 || std::isinf(a) || std::isinf(b)) return a * b;
    return flt_from_exact_double(static_cast<double>(a) * static_cast<double>(b), false);
}

float fb_div_f(float a, float b, bool up)
{
    if (a == 0 || std::isinf(b) || std::isinf(a)) return a / b;
    const double ad = a, bd = b;
    const double q = ad / bd;
    float f = flt_from_exact_double(q, up);
    // q is the nearest double to a/b; if q happens to land exactly on a float
    // the residual decides which side the exact quotient is on.
    if (static_cast<double>(f) == q) {
        const double r = std::fma(-q, bd, ad); // exact: float operands
        if (r != 0) {
            const bool exact_above = std::signbit(r) == std::signbit(bd);
            if (up && exact_above) f = std::nextafterf(f, std::numeric_limits<float>::infinity());
            if (!up && !exact_above) f = std::nextafterf(f, -std::numeric_limits<float>::infinity());
        }
    }
    return f;
}

template <class Fn>
auto with_temp_session(Fn&& fn)
{
    RoundingSession session;
    return fn();
}

} // namespace

#define RIGSCAN_SLOW_D(name, fb)                                              \
    double slow_##name(double a, double b)                                     \
    {                                                                          \
        if (resolve_mode() == 0)                                               \
            return with_temp_session([&] { return hw_##name<double>(a, b); }); \
        return fb(a, b);                                                       \
    }

RIGSCAN_SLOW_D(add_up, fb_add_up)
RIGSCAN_SLOW_D(add_dn, fb_add_dn)
RIGSCAN_SLOW_D(mul_up, fb_mul_up)
RIGSCAN_SLOW_D(mul_dn, fb_mul_dn)
RIGSCAN_SLOW_D(div_up, fb_div_up)
RIGSCAN_SLOW_D(div_dn, fb_div_dn)
double slow_sub_up(double a, double b) { return slow_add_up(a, -b); }
double slow_sub_dn(double a, double b) { return slow_add_dn(a, -b); }
#undef RIGSCAN_SLOW_D

#define RIGSCAN_SLOW_F(name, fb)                                               \
    float slow_##name(float a, float b)                                        \
    {                                                                           \
        if (resolve_mode() == 0)                                                \
            return with_temp_session([&] { return hw_##name<float>(a, b); });   \
        return fb;                                                              \
    }

RIGSCAN_SLOW_F(add_up, fb_add_up_f(a, b))
RIGSCAN_SLOW_F(add_dn, fb_add_dn_f(a, b))
RIGSCAN_SLOW_F(mul_up, fb_mul_up_f(a, b))
RIGSCAN_SLOW_F(mul_dn, fb_mul_dn_f(a, b))
RIGSCAN_SLOW_F(div_up, fb_div_f(a, b, true))
RIGSCAN_SLOW_F(div_dn, fb_div_f(a, b, false))
float slow_sub_up(float a, float b) { return slow_add_up(a, -b); }
float slow_sub_dn(float a, float b) { return slow_add_dn(a, -b); }
#undef RIGSCAN_SLOW_F

} // namespace detail

namespace {

template <class T>
bool invalid_add(T a, T b)
{
    return (std::isinf(a) && std::isinf(b) && std::signbit(a) != std::signbit(b)) ||
           std::isnan(a) || std::isnan(b);
}

template <class T>
bool invalid_mul(T a, T b)
{
    return (a == 0 && std::isinf(b)) || (b == 0 && std::isinf(a)) ||
           std::isnan(a) || std::isnan(b);
}

template <class T>
bool invalid_div(T a, T b)
{
    return b == 0 || (std::isinf(a) && std::isinf(b)) || std::isnan(a) || std::isnan(b);
}

template <class T>
RoundResult<T> make_result(T up, T dn, bool want_up)
{
    if (up == dn) return {up, Flag::exact};
    return want_up ? RoundResult<T>{up, Flag::rounded_up}
                   : RoundResult<T>{dn, Flag::rounded_down};
}

constexpr auto kInvalidFlag = Flag::invalid;

template <class T>
RoundResult<T> invalid_result()
{
    return {std::numeric_limits<T>::quiet_NaN(), kInvalidFlag};
}

} // namespace

template <class T>
RoundResult<T> add_up(T a, T b)
{
    if (invalid_add(a, b)) return invalid_result<T>();
    RoundingSession s;
    return make_result(add_up_raw(a, b), add_dn_raw(a, b), true);
}
template <class T>
RoundResult<T> add_down(T a, T b)
{
    if (invalid_add(a, b)) return invalid_result<T>();
    RoundingSession s;
    return make_result(add_up_raw(a, b), add_dn_raw(a, b), false);
}
template <class T>
RoundResult<T> sub_up(T a, T b)
{
    if (invalid_add(a, -b)) return invalid_result<T>();
    RoundingSession s;
    return make_result(sub_up_raw(a, b), sub_dn_raw(a, b), true);
}
template <class T>
RoundResult<T> sub_down(T a, T b)
{
    if (invalid_add(a, -b)) return invalid_result<T>();
    RoundingSession s;
    return make_result(sub_up_raw(a, b), sub_dn_raw(a, b), false);
}
template <class T>
RoundResult<T> mul_up(T a, T b)
{
    if (invalid_mul(a, b)) return invalid_result<T>();
    RoundingSession s;
    return make_result(mul_up_raw(a, b), mul_dn_raw(a, b), true);
}
template <class T>
RoundResult<T> mul_down(T a, T b)
{
    if (invalid_mul(a, b)) return invalid_result<T>();
    RoundingSession s;
    return make_result(mul_up_raw(a, b), mul_dn_raw(a, b), false);
}
template <class T>
RoundResult<T> div_up(T a, T b)
{
    if (invalid_div(a, b)) return invalid_result<T>();
    RoundingSession s;
    return make_result(div_up_raw(a, b), div_dn_raw(a, b), true);
}
template <class T>
RoundResult<T> div_down(T a, T b)
{
    if (invalid_div(a, b)) return invalid_result<T>();
    RoundingSession s;
    return make_result(div_up_raw(a, b), div_dn_raw(a, b), false);
}

template RoundResult<double> add_up(double, double);
template RoundResult<double> add_down(double, double);
template RoundResult<double> sub_up(double, double);
template RoundResult<double> sub_down(double, double);
template RoundResult<double> mul_up(double, double);
template RoundResult<double> mul_down(double, double);
template RoundResult<double> div_up(double, double);
template RoundResult<double> div_down(double, double);
template RoundResult<float> add_up(float, float);
template RoundResult<float> add_down(float, float);
template RoundResult<float> sub_up(float, float);
template RoundResult<float> sub_down(float, float);
template RoundResult<float> mul_up(float, float);
template RoundResult<float> mul_down(float, float);
template RoundResult<float> div_up(float, float);
template RoundResult<float> div_down(float, float);

// ---------------------------------------------------------------------------
// Hex format

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";
constexpr std::string_view kDot{"\xc2\xb7"}; // middle dot

std::string hex_fraction(std::uint64_t frac, int nibbles)
{
    std::string s(static_cast<std::size_t>(nibbles), '0');
    for (int i = nibbles - 1; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = kHexDigits[frac & 0xF];
        frac >>= 4;
    }
    return s;
}

} // namespace

std::string format_hex(double x)
{
    if (!(x >= 0) || std::isinf(x))
        throw std::invalid_argument("format_hex: requires a finite value >= 0");
    if (x == 0) return "0";
    if (x == 1) return "1";
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
    const std::uint64_t frac = bits & ((std::uint64_t{1} << 52) - 1);
    const int biased = static_cast<int>(bits >> 52);
    std::string out;
    if (biased == 0) {
        out = "0." + hex_fraction(frac, 13) + std::string(kDot) + "2^-1022";
    } else {
        out = "1." + hex_fraction(frac, 13) + std::string(kDot) + "2^" +
              std::to_string(biased - 1023);
    }
    return out;
}

std::string format_hex(float x)
{
    if (!(x >= 0) || std::isinf(x))
        throw std::invalid_argument("format_hex: requires a finite value >= 0");
    if (x == 0) return "0";
    if (x == 1) return "1";
    const std::uint32_t bits = std::bit_cast<std::uint32_t>(x);
    const std::uint32_t frac = bits & ((std::uint32_t{1} << 23) - 1);
    const int biased = static_cast<int>(bits >> 23);
    // 23 fraction bits left-aligned into 6 nibbles
    const std::uint64_t aligned = std::uint64_t{frac} << 1;
    if (biased == 0) return "0." + hex_fraction(aligned, 6) + std::string(kDot) + "2^-126";
    return "1." + hex_fraction(aligned, 6) + std::string(kDot) + "2^" +
           std::to_string(biased - 127);
}

namespace {

struct HexParts {
    bool leading_one;
    std::uint64_t frac;
    long exp;
};

HexParts parse_hex_parts(std::string_view s, int nibbles)
{
    const auto fail = [&](std::string_view what, std::string_view tok) {
        throw parse_error("parse_hex: " + std::string(what) + " at \"" +
                          std::string(tok) + "\"");
    };
    if (s.size() < 2 || (s[0] != '0' && s[0] != '1') || s[1] != '.')
        fail("expected significand starting \"0.\" or \"1.\"", s.substr(0, std::min<std::size_t>(2, s.size())));
    const bool leading_one = s[0] == '1';
    s.remove_prefix(2);
    std::uint64_t frac = 0;
    for (int i = 0; i < nibbles; ++i) {
        if (s.empty()) fail("significand too short", s);
        const char c = s.front();
        const char* pos = std::strchr(kHexDigits, c);
        if (pos == nullptr || c == '\0') fail("expected lowercase hex digit", s.substr(0, 1));
        frac = frac << 4 | static_cast<std::uint64_t>(pos - kHexDigits);
        s.remove_prefix(1);
    }
    if (s.size() < kDot.size() + 2 || s.substr(0, kDot.size()) != kDot ||
        s.substr(kDot.size(), 2) != "2^")
        fail("expected \"\xc2\xb7\x32^\"", s);
    s.remove_prefix(kDot.size() + 2);
    if (s.empty()) fail("missing exponent", s);
    long exp = 0;
    try {
        std::size_t used = 0;
        exp = std::stol(std::string(s), &used);
        if (used != s.size()) fail("trailing characters after exponent", s.substr(used));
    } catch (const std::logic_error&) {
        fail("malformed exponent", s);
    }
    return {leading_one, frac, exp};
}

} // namespace

double parse_hex64(std::string_view s)
{
    if (s == "0") return 0.0;
    if (s == "1") return 1.0;
    const HexParts p = parse_hex_parts(s, 13);
    if (!p.leading_one) {
        if (p.exp != -1022)
            throw parse_error("parse_hex: subnormal exponent must be -1022, got 2^" +
                              std::to_string(p.exp));
        return std::bit_cast<double>(p.frac);
    }
    if (p.exp < -1022 || p.exp > 1023)
        throw parse_error("parse_hex: exponent out of range at \"2^" +
                          std::to_string(p.exp) + "\"");
    const std::uint64_t bits = (static_cast<std::uint64_t>(p.exp + 1023) << 52) | p.frac;
    return std::bit_cast<double>(bits);
}

float parse_hex32(std::string_view s)
{
    if (s == "0") return 0.0f;
    if (s == "1") return 1.0f;
    const HexParts p = parse_hex_parts(s, 6);
    if (p.frac & 1)
        throw parse_error("parse_hex: last significand bit beyond binary32 at \"" +
                          std::string(s) + "\"");
    const auto frac = static_cast<std::uint32_t>(p.frac >> 1);
    if (!p.leading_one) {
        if (p.exp != -126)
            throw parse_error("parse_hex: subnormal exponent must be -126, got 2^" +
                              std::to_string(p.exp));
        return std::bit_cast<float>(frac);
    }
    if (p.exp < -126 || p.exp > 127)
        throw parse_error("parse_hex: exponent out of range at \"2^" +
                          std::to_string(p.exp) + "\"");
    const std::uint32_t bits = (static_cast<std::uint32_t>(p.exp + 127) << 23) | frac;
    return std::bit_cast<float>(bits);
}

float to_float_up(double x)
{
    if (std::isnan(x)) return std::numeric_limits<float>::quiet_NaN();
    return detail::flt_from_exact_double(x, true);
}

float to_float_down(double x)
{
    if (std::isnan(x)) return std::numeric_limits<float>::quiet_NaN();
    return detail::flt_from_exact_double(x, false);
}

} // namespace rigscan::fp
