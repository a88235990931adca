#include "rigscan/engine.hpp"
#include "rigscan/oracle.hpp"
#include "rigscan/rational.hpp"
#include "rigscan/scan.hpp"

#include <doctest.h>

#include <random>

using namespace rigscan;

namespace {

// Two-state toy chain: state 0 holds mass [1,1]; one admissible successor.
class ToyModel final : public TransitionModel<double> {
public:
    explicit ToyModel(IntervalProb kernel) : kernel_(kernel) {}
    std::size_t step_count() const override { return 2; }
    void initial_layer(const IntSet& a1, std::vector<LayerEntry<double>>& out) const override
    {
        out.clear();
        if (a1.contains(0)) out.push_back({0, IntervalProb{1, 1}});
    }
    void successors(std::size_t, StateKey, const IntSet& ak,
                    std::vector<TransitionOut>& out) const override
    {
        out.clear();
        if (ak.contains(1)) out.push_back({1, 1});
    }
    Interval<double> step(std::size_t, StateKey, StateKey) const override { return kernel_; }

private:
    IntervalProb kernel_;
};

bool contains(const IntervalProb& iv, const Rational& v)
{
    return rational_of(iv.lo) <= v && v <= rational_of(iv.hi);
}

} // namespace

TEST_CASE("int sets")
{
    const IntSet r = IntSet::range(2, 5);
    CHECK(r.contains(2));
    CHECK(r.contains(5));
    CHECK(!r.contains(6));
    CHECK(r.size() == 4);
    const IntSet e = IntSet::of({7, 1, 4, 4});
    CHECK(e.contains(4));
    CHECK(!e.contains(2));
    CHECK(e.min() == 1);
    CHECK(e.max() == 7);
    CHECK(IntSet::of({3, 4, 5}).is_range()); // contiguous collapses
    CHECK(IntSet::range(3, 2).empty());
    std::vector<std::int64_t> seen;
    e.for_each([&](std::int64_t v) { seen.push_back(v); });
    CHECK(seen == std::vector<std::int64_t>{1, 4, 7});
}

TEST_CASE("single transition propagates the kernel")
{
    const ToyModel model(IntervalProb{0.25, 0.5});
    const DPLayer<double> l1 = dp_init(model, IntSet::range(0, 1));
    REQUIRE(l1.entries.size() == 1);
    const DPLayer<double> l2 = dp_step(model, l1, IntSet::range(0, 1));
    REQUIRE(l2.entries.size() == 1);
    CHECK(l2.entries[0].mass == IntervalProb{0.25, 0.5});
    CHECK(rectangle_probability(model, {IntSet::range(0, 1), IntSet::range(0, 1)}) ==
          IntervalProb{0.25, 0.5});
}

TEST_CASE("two exact contributions accumulate exactly")
{
    // window chain on a 2-cell split: both paths into the final state carry
    // exactly 0.25
    const auto chain = ChainSpec::multinomial_rationals(
        2, {Rational(1, 2), Rational(1, 2)});
    const WindowModel<double> model(chain, 1);
    const IntervalProb total = rectangle_probability(
        model, {IntSet::range(0, 2), IntSet::range(0, 2)});
    CHECK(total == IntervalProb{1, 1});
    const IntervalProb atmost1 = rectangle_probability(
        model, {IntSet::range(0, 1), IntSet::range(0, 1)});
    CHECK(contains(atmost1, Rational(1, 2)));
}

TEST_CASE("empty admissible sets give a certified zero")
{
    const auto chain = ChainSpec::multinomial_uniform(3, 3);
    const WindowModel<double> model(chain, 1);
    const DPLayer<double> empty = dp_init(model, IntSet::of({}));
    CHECK(empty.entries.empty());
    CHECK(rectangle_probability(model,
                                {IntSet::of({}), IntSet::range(0, 3), IntSet::range(0, 3)})
              .hi == 0);
}

TEST_CASE("full-range rectangle probability contains one")
{
    const auto chain = ChainSpec::multinomial_uniform(6, 4);
    const WindowModel<double> model(chain, 1);
    const std::vector<IntSet> sets(4, IntSet::range(0, 6));
    const IntervalProb total = rectangle_probability(model, sets);
    CHECK(total.lo <= 1.0);
    CHECK(total.hi == 1.0); // clamped
    CHECK(1.0 - total.lo < 1e-13);
}

TEST_CASE("layer sums never grow under full increment ranges")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<std::int64_t> nd(1, 8), dd(2, 5);
        const std::int64_t n = nd(rng), d = dd(rng);
        std::vector<Rational> p;
        Rational left(1);
        for (std::int64_t i = 0; i + 1 < d; ++i) {
            std::uniform_int_distribution<long> num(0, 6);
            Rational cell = left * Rational(num(rng), 10);
            p.push_back(cell);
            left -= cell;
        }
        p.push_back(left);
        const auto chain = ChainSpec::multinomial_rationals(n, p);
        const WindowModel<double> model(chain, 1);
        DPLayer<double> layer = dp_init(model, IntSet::range(0, n));
        double prev = layer_sum(layer).hi;
        for (std::int64_t k = 2; k <= d; ++k) {
            layer = dp_step(model, layer, IntSet::range(0, n));
            const double cur = layer_sum(layer).hi;
            CHECK(cur <= prev * (1 + 1e-12));
            prev = cur;
        }
    }
}

TEST_CASE("engine intervals contain the exact rational DP on random models")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        std::uniform_int_distribution<std::int64_t> nd(1, 7), dd(2, 5);
        std::uniform_int_distribution<int> td(0, 7);
        const std::int64_t n = nd(rng), d = dd(rng);
        const auto spec = OracleSpec::multinomial_uniform(n, d);
        const auto chain = ChainSpec::multinomial_uniform(n, d);
        const WindowModel<double> model(chain, 1);
        // random per-coordinate sets
        std::vector<IntSet> sets;
        for (std::int64_t k = 0; k < d; ++k) {
            std::vector<std::int64_t> vals;
            for (std::int64_t v = 0; v <= n; ++v)
                if (td(rng) < 5) vals.push_back(v);
            sets.push_back(IntSet::of(std::move(vals)));
        }
        const IntervalProb iv = rectangle_probability(model, sets);
        const Rational exact = exact_rectangle_dp(spec, 1, sets);
        CHECK(contains(iv, exact));
        // determinism: bit-identical rerun
        CHECK(rectangle_probability(model, sets) == iv);
    }
}

TEST_CASE("enlarging a constraint set is monotone")
{
    const auto chain = ChainSpec::multinomial_uniform(8, 4);
    const WindowModel<double> model(chain, 1);
    std::vector<IntSet> sets(4, IntSet::range(0, 3));
    const IntervalProb small = rectangle_probability(model, sets);
    sets[1] = IntSet::range(0, 5);
    const IntervalProb big = rectangle_probability(model, sets);
    CHECK(big.hi >= small.lo);
}

TEST_CASE("set count must match the step count")
{
    const auto chain = ChainSpec::multinomial_uniform(3, 3);
    const WindowModel<double> model(chain, 1);
    CHECK_THROWS_AS(rectangle_probability(model, {IntSet::range(0, 3)}), std::domain_error);
}
