#include "rigscan/rational.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace rigscan;

TEST_CASE("directed conversion brackets non-representable rationals tightly")
{
    const Rational third(1, 3);
    const double dn = to_double_down(third);
    const double up = to_double_up(third);
    CHECK(rational_of(dn) < third);
    CHECK(rational_of(up) > third);
    CHECK(std::nextafter(dn, 1.0) == up);

    const Rational day(1, 365);
    CHECK(rational_of(to_double_down(day)) < day);
    CHECK(rational_of(to_double_up(day)) > day);
    CHECK(std::nextafter(to_double_down(day), 1.0) == to_double_up(day));

    CHECK(to_double_down(Rational(1, 4)) == 0.25);
    CHECK(to_double_up(Rational(1, 4)) == 0.25);
    CHECK(is_representable64(Rational(1, 4)));
    CHECK(!is_representable64(third));
}

TEST_CASE("conversion handles extreme magnitudes")
{
    // below the smallest positive double
    const Rational tiny = pow2(-1075);
    CHECK(to_double_down(tiny) == 0.0);
    CHECK(to_double_up(tiny) == std::numeric_limits<double>::denorm_min());
    // inside the subnormal range
    const Rational sub = pow2(-1074) * 7 / 2; // 3.5 * denorm_min
    CHECK(to_double_down(sub) == 3 * std::numeric_limits<double>::denorm_min());
    CHECK(to_double_up(sub) == 4 * std::numeric_limits<double>::denorm_min());
    // beyond the largest double
    const Rational big = rational_of(std::numeric_limits<double>::max()) * 2;
    CHECK(to_double_down(big) == std::numeric_limits<double>::max());
    CHECK(std::isinf(to_double_up(big)));
}

TEST_CASE("round trip through rational_of is exact")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(0, 1);
    for (int i = 0; i < 2000; ++i) {
        const double x = uni(rng);
        CHECK(to_double_down(rational_of(x)) == x);
        CHECK(to_double_up(rational_of(x)) == x);
    }
}

TEST_CASE("decimal and fraction parsing is exact")
{
    CHECK(rational_from_string("0.25") == Rational(1, 4));
    CHECK(rational_from_string("2.5e-3") == Rational(1, 400));
    CHECK(rational_from_string("1") == 1);
    CHECK(rational_from_string(".5") == Rational(1, 2));
    CHECK(rational_from_string("7/9") == Rational(7, 9));
    CHECK(rational_from_string("-3/4") == Rational(-3, 4));
    CHECK(rational_from_string("1e3") == 1000);
    CHECK_THROWS_AS(rational_from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("abc"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("1/"), std::invalid_argument);
    CHECK(rational_to_string(Rational(2, 6)) == "1/3");
    CHECK(rational_to_string(Rational(4)) == "4");
}

TEST_CASE("binomial coefficients and decimal digits")
{
    CHECK(binomial_int(4, 2) == 6);
    CHECK(binomial_int(503, 3) == Int("21084251"));
    CHECK(binomial_int(3, 5) == 0);
    const auto dd = decimal_digits(Rational(1, 8), 5);
    CHECK(dd.digits == "12500");
    CHECK(!dd.remainder_nonzero);
    const auto dt = decimal_digits(Rational(1, 3), 4);
    CHECK(dt.digits == "3333");
    CHECK(dt.remainder_nonzero);
}
