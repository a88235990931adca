#include "rigscan/interval.hpp"
#include "rigscan/rational.hpp"

#include <doctest.h>

#include <random>

using namespace rigscan;

namespace {

// interval around a rational, randomly widened a few steps
IntervalProb around(const Rational& v, std::mt19937_64& rng)
{
    double lo = to_double_down(v);
    double hi = to_double_up(v);
    std::uniform_int_distribution<int> w(0, 3);
    for (int i = w(rng); i-- > 0;) lo = std::nextafter(lo, -1.0);
    for (int i = w(rng); i-- > 0;) hi = std::nextafter(hi, 2.0);
    if (lo < 0) lo = 0;
    return {lo, hi};
}

Rational random_prob(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> den(1, 10000);
    const long q = den(rng);
    std::uniform_int_distribution<long> num(0, q);
    return {num(rng), q};
}

} // namespace

TEST_CASE("identities")
{
    const IntervalProb x{0.2, 0.3};
    CHECK(iv_add(IntervalProb{0, 0}, x) == x);
    CHECK(iv_mul(IntervalProb{1, 1}, x) == x);
    CHECK(iv_mul(IntervalProb{0.5, 0.5}, IntervalProb{0.5, 0.5}) == IntervalProb{0.25, 0.25});
}

TEST_CASE("construction rejects inverted or negative intervals")
{
    CHECK_THROWS_AS(IntervalProb(0.5, 0.2), std::domain_error);
    CHECK_THROWS_AS(IntervalProb(-0.1, 0.2), std::domain_error);
}

TEST_CASE("clamp and complement")
{
    CHECK(iv_clamp_unit(IntervalProb{0.97, 1.0000000000000002}) == IntervalProb{0.97, 1});
    CHECK(iv_clamp_unit(IntervalProb{0.2, 0.3}) == IntervalProb{0.2, 0.3});
    CHECK(iv_complement(IntervalProb{0, 0}) == IntervalProb{1, 1});
    CHECK(iv_complement(IntervalProb{0.25, 0.5}) == IntervalProb{0.5, 0.75});
}

TEST_CASE("containment is preserved by add, mul and complement")
{
    std::mt19937_64 rng(42);
    for (int i = 0; i < 3000; ++i) {
        const Rational p = random_prob(rng);
        const Rational q = random_prob(rng);
        const IntervalProb a = around(p, rng);
        const IntervalProb b = around(q, rng);

        const IntervalProb sum = iv_add(a, b);
        CHECK(rational_of(sum.lo) <= p + q);
        CHECK(rational_of(sum.hi) >= p + q);

        const IntervalProb prod = iv_mul(a, b);
        CHECK(rational_of(prod.lo) <= p * q);
        CHECK(rational_of(prod.hi) >= p * q);

        const IntervalProb ac = iv_clamp_unit(a);
        const IntervalProb comp = iv_complement(ac);
        if (p <= 1) {
            CHECK(rational_of(comp.lo) <= 1 - p);
            CHECK(rational_of(comp.hi) >= 1 - p);
        }
        // double complement contains the original
        const IntervalProb back = iv_complement(iv_clamp_unit(comp));
        CHECK(back.lo <= ac.lo);
        CHECK(back.hi >= ac.hi);
    }
}

TEST_CASE("operations are deterministic")
{
    const IntervalProb a{0.1, 0.2}, b{0.3, 0.5};
    const IntervalProb r1 = iv_mul(iv_add(a, b), b);
    const IntervalProb r2 = iv_mul(iv_add(a, b), b);
    CHECK(r1 == r2);
}

TEST_CASE("json serialization carries authoritative hex fields")
{
    const std::string js = interval_json(IntervalProb{0.5, 0.75});
    CHECK(js ==
          "{\"lo_hex\":\"1.0000000000000\xc2\xb7"
          "2^-1\",\"hi_hex\":\"1.8000000000000\xc2\xb7"
          "2^-1\",\"lo_dec\":0.5,\"hi_dec\":0.75}");
}
