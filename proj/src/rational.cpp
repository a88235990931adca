#include "rigscan/rational.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rigscan {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::msb;
using boost::multiprecision::numerator;

constexpr double kInf = std::numeric_limits<double>::infinity();

double next_up_d(double x) { return std::nextafter(x, kInf); }
double next_dn_d(double x) { return std::nextafter(x, -kInf); }

// A double within ~1 ulp of v > 0, used as the starting point for the
// directed conversions.
double approx_positive(const Rational& v)
{
    const Int& num = numerator(v);
    const Int& den = denominator(v);
    const long e = static_cast<long>(msb(num)) - static_cast<long>(msb(den));
    if (e > 1100) return std::numeric_limits<double>::max();
    if (e < -1130) return 0.0;
    // scale so that num*2^k/den has ~54 significant bits
    const long k = 54 - e;
    Int scaled_num = num;
    Int scaled_den = den;
    if (k >= 0)
        scaled_num <<= static_cast<unsigned long>(k);
    else
        scaled_den <<= static_cast<unsigned long>(-k);
    const Int q = scaled_num / scaled_den;
    return std::ldexp(q.convert_to<double>(), static_cast<int>(-k));
}

} // namespace

Rational rational_of(double x)
{
    if (!std::isfinite(x)) throw std::invalid_argument("rational_of: non-finite value");
    if (x == 0) return Rational(0);
    int e = 0;
    const double m = std::frexp(x, &e); // x = m * 2^e, |m| in [0.5, 1)
    const auto mant = static_cast<long long>(std::ldexp(m, 53)); // integer
    Rational r(mant);
    const long shift = e - 53;
    if (shift >= 0)
        r *= pow2(shift);
    else
        r /= pow2(-shift);
    return r;
}

double to_double_down(const Rational& v)
{
    if (v == 0) return 0.0;
    if (v < 0) return -to_double_up(-v);
    double g = approx_positive(v);
    if (std::isinf(g)) g = std::numeric_limits<double>::max();
    while (g > 0 && rational_of(g) > v) g = next_dn_d(g);
    while (true) {
        const double n = next_up_d(g);
        if (std::isinf(n) || rational_of(n) > v) break;
        g = n;
    }
    return g;
}

double to_double_up(const Rational& v)
{
    if (v == 0) return 0.0;
    if (v < 0) return -to_double_down(-v);
    double g = approx_positive(v);
    if (std::isinf(g)) g = std::numeric_limits<double>::max();
    while (!std::isinf(g) && rational_of(g) < v) g = next_up_d(g);
    if (std::isinf(g)) return g;
    while (g > 0) {
        const double n = next_dn_d(g);
        if (rational_of(n) < v) break;
        g = n;
    }
    return g;
}

bool is_representable64(const Rational& v)
{
    if (v == 0) return true;
    const double d = to_double_down(v);
    return rational_of(d) == v;
}

Rational rational_from_string(std::string_view s)
{
    const auto fail = [&](std::string_view what) {
        throw std::invalid_argument("rational_from_string: " + std::string(what) +
                                    " in \"" + std::string(s) + "\"");
    };
    if (s.empty()) fail("empty string");
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const std::string_view num = s.substr(0, slash);
        const std::string_view den = s.substr(slash + 1);
        if (num.empty() || den.empty()) fail("malformed fraction");
        try {
            const Int n{std::string(num)};
            const Int d{std::string(den)};
            return Rational(n, d);
        } catch (const std::exception&) {
            fail("malformed fraction");
        }
    }
    bool neg = false;
    std::string_view rest = s;
    if (rest.front() == '+' || rest.front() == '-') {
        neg = rest.front() == '-';
        rest.remove_prefix(1);
    }
    std::string int_part, frac_part;
    long exp10 = 0;
    std::size_t i = 0;
    while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9') int_part += rest[i++];
    if (i < rest.size() && rest[i] == '.') {
        ++i;
        while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9') frac_part += rest[i++];
    }
    if (i < rest.size() && (rest[i] == 'e' || rest[i] == 'E')) {
        ++i;
        try {
            std::size_t used = 0;
            exp10 = std::stol(std::string(rest.substr(i)), &used);
            i += used;
        } catch (const std::logic_error&) {
            fail("malformed exponent");
        }
    }
    if (i != rest.size() || (int_part.empty() && frac_part.empty())) fail("malformed number");
    Int digits(int_part.empty() ? "0" : int_part);
    for (const char c : frac_part) digits = digits * 10 + (c - '0');
    Rational r(digits);
    const long down = static_cast<long>(frac_part.size()) - exp10;
    Int scale(1);
    for (long j = 0; j < std::labs(down); ++j) scale *= 10;
    if (down > 0)
        r /= Rational(scale);
    else if (down < 0)
        r *= Rational(scale);
    return neg ? -r : r;
}

std::string rational_to_string(const Rational& v)
{
    std::string s = numerator(v).str();
    if (denominator(v) != 1) s += "/" + denominator(v).str();
    return s;
}

Rational pow2(long k)
{
    Int p(1);
    p <<= static_cast<unsigned long>(std::labs(k));
    return k >= 0 ? Rational(p) : Rational(Int(1), p);
}

Int binomial_int(unsigned long n, unsigned long k)
{
    if (k > n) return Int(0);
    if (k > n - k) k = n - k;
    Int r(1);
    for (unsigned long j = 0; j < k; ++j) {
        r *= static_cast<unsigned long>(n - j);
        r /= j + 1;
    }
    return r;
}

DecimalDigits decimal_digits(const Rational& v, unsigned count)
{
    if (v < 0 || v >= 1) throw std::invalid_argument("decimal_digits: value outside [0,1)");
    Int num = numerator(v);
    const Int& den = denominator(v);
    std::string digits;
    digits.reserve(count);
    for (unsigned i = 0; i < count; ++i) {
        num *= 10;
        const Int d = num / den;
        digits += static_cast<char>('0' + d.convert_to<int>());
        num -= d * den;
    }
    return {std::move(digits), num != 0};
}

} // namespace rigscan
