#include "rigscan/oracle.hpp"

#include <doctest.h>

using namespace rigscan;

TEST_CASE("hand-checkable instances")
{
    // n=2, d=2, l=1, t=1: only the (1,1) split survives
    const auto spec = OracleSpec::multinomial(2, {Rational(1, 2), Rational(1, 2)});
    CHECK(exact_scan_probability(spec, 1, 1) == Rational(1, 2));
    CHECK(exact_scan_probability(spec, 1, 2) == 1);
    CHECK(exact_scan_probability(spec, 1, 0) == 0);
    CHECK(exact_rectangle_dp(spec, 1, 1) == Rational(1, 2));
}

TEST_CASE("enumeration and recursion oracles agree exactly")
{
    for (const std::int64_t n : {2, 4, 7}) {
        for (const std::int64_t d : {2, 3, 5}) {
            const auto mspec = OracleSpec::multinomial_uniform(n, d);
            std::vector<std::int64_t> m(static_cast<std::size_t>(d), (n + d - 1) / d + 1);
            const auto hspec = OracleSpec::hypergeometric(n, m);
            for (std::uint32_t ell = 1; ell <= 3 && static_cast<std::int64_t>(ell) <= d; ++ell)
                for (std::int64_t t = 0; t <= n; ++t) {
                    CHECK(exact_scan_probability(mspec, ell, t) ==
                          exact_rectangle_dp(mspec, ell, t));
                    CHECK(exact_scan_probability(hspec, ell, t) ==
                          exact_rectangle_dp(hspec, ell, t));
                }
        }
    }
}

TEST_CASE("complementary events sum to exactly one")
{
    const auto spec = OracleSpec::multinomial_uniform(6, 4);
    for (std::uint32_t ell = 1; ell <= 3; ++ell)
        for (std::int64_t t = 0; t <= 6; ++t)
            CHECK(exact_scan_probability(spec, ell, t) +
                      exact_scan_tail_probability(spec, ell, t + 1) ==
                  1);
    const auto hspec = OracleSpec::hypergeometric(4, {2, 2, 2});
    for (std::int64_t t = 0; t <= 4; ++t)
        CHECK(exact_scan_probability(hspec, 2, t) +
                  exact_scan_tail_probability(hspec, 2, t + 1) ==
              1);
}

TEST_CASE("budget refusal names the required budget")
{
    const auto spec = OracleSpec::multinomial_uniform(10, 6);
    try {
        exact_scan_probability(spec, 2, 3, Int(10));
        CHECK(false);
    } catch (const BudgetError& e) {
        CHECK(e.required() == binomial_int(15, 5));
        CHECK(std::string(e.what()).find("3003") != std::string::npos);
    }
    CHECK_THROWS_AS(exact_rectangle_dp(spec, 2, 3, Int(2)), BudgetError);
}

TEST_CASE("rejects inconsistent parameters")
{
    CHECK_THROWS_AS(OracleSpec::multinomial(2, {Rational(1, 2), Rational(1, 3)}),
                    std::domain_error);
    CHECK_THROWS_AS(OracleSpec::hypergeometric(10, {2, 2, 2}), std::domain_error);
    const auto spec = OracleSpec::multinomial_uniform(3, 3);
    CHECK_THROWS_AS(exact_scan_probability(spec, 4, 1), std::domain_error);
}

TEST_CASE("fixture lines round trip")
{
    FixtureLine line;
    line.family = Family::hypergeometric;
    line.n = 4;
    line.d = 3;
    line.ell = 2;
    line.t = 3;
    line.params = "m=2,2,2";
    line.value = exact_scan_probability(fixture_spec(line), line.ell, line.t);
    const std::string text = fixture_format(line);
    const FixtureLine back = fixture_parse(text);
    CHECK(back.family == line.family);
    CHECK(back.n == line.n);
    CHECK(back.params == line.params);
    CHECK(back.value == line.value);
    CHECK(text.find('\t') != std::string::npos);
}

TEST_CASE("hypergeometric enumeration matches a hand computation")
{
    // draws of 4 from three cells of 2: P(every adjacent pair <= 3)
    const auto spec = OracleSpec::hypergeometric(4, {2, 2, 2});
    const Rational all = exact_scan_probability(spec, 2, 4);
    CHECK(all == 1);
    // t = 1 forces cell pattern (x1,x2,x3) with x1+x2 <= 1 and x2+x3 <= 1,
    // impossible with 4 draws
    CHECK(exact_scan_probability(spec, 2, 1) == 0);
}
