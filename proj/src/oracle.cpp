#include "rigscan/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace rigscan {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

void check_spec(const OracleSpec& spec)
{
    if (spec.d < 1) throw std::domain_error("oracle: d >= 1 required");
    if (spec.n < 0) throw std::domain_error("oracle: n >= 0 required");
    if (spec.family == Family::multinomial) {
        if (static_cast<std::int64_t>(spec.p.size()) != spec.d)
            throw std::domain_error("oracle: cell probability count != d");
        Rational sum(0);
        for (const Rational& v : spec.p) {
            if (v < 0 || v > 1) throw std::domain_error("oracle: cell probability outside [0,1]");
            sum += v;
        }
        if (sum != 1) throw std::domain_error("oracle: cell probabilities must sum to 1");
    } else {
        if (static_cast<std::int64_t>(spec.m.size()) != spec.d)
            throw std::domain_error("oracle: cell count vector size != d");
        std::int64_t total = 0;
        for (const std::int64_t v : spec.m) {
            if (v < 0) throw std::domain_error("oracle: negative cell count");
            total += v;
        }
        if (total < spec.n) throw std::domain_error("oracle: sum m_i >= n required");
    }
}

void check_enum_budget(const OracleSpec& spec, const Int& budget)
{
    const Int required = binomial_int(static_cast<unsigned long>(spec.n + spec.d - 1),
                                      static_cast<unsigned long>(spec.d - 1));
    if (required > budget) throw BudgetError(required, budget);
}

// Common-denominator form of the multinomial cells: p_i = a_i / scale.
struct ScaledCells {
    std::vector<Int> a;
    Int scale;
};

ScaledCells scale_cells(const std::vector<Rational>& p)
{
    Int scale(1);
    for (const Rational& v : p) {
        const Int den = denominator(v);
        scale = scale / gcd(scale, den) * den;
    }
    ScaledCells out;
    out.scale = scale;
    out.a.reserve(p.size());
    for (const Rational& v : p) out.a.push_back(numerator(v) * (scale / denominator(v)));
    return out;
}

Int int_pow(const Int& base, std::int64_t e)
{
    Int r(1);
    for (std::int64_t i = 0; i < e; ++i) r *= base;
    return r;
}

Rational rat_pow(const Rational& base, std::int64_t e)
{
    Rational r(1);
    for (std::int64_t i = 0; i < e; ++i) r *= base;
    return r;
}

// Enumeration of the support with per-window accounting.  `windows` holds the
// running sums of the (up to ell) windows the next increment participates in.
class Enumerator {
public:
    Enumerator(const OracleSpec& spec, std::uint32_t ell) : spec_(spec), ell_(ell)
    {
        if (ell_ < 1 || static_cast<std::int64_t>(ell_) > spec.d)
            throw std::domain_error("oracle: window length outside [1, d]");
        if (spec.family == Family::multinomial) cells_ = scale_cells(spec.p);
    }

    // Sum of unnormalized weights over compositions whose window sums all
    // stay <= t; prunes on partial windows.
    Int cdf_weight(std::int64_t t)
    {
        total_ = 0;
        t_ = t;
        prune_ = true;
        predicate_tail_ = false;
        x_.assign(static_cast<std::size_t>(spec_.d), 0);
        dfs(0, spec_.n, Int(1));
        return total_;
    }

    // Sum of weights over compositions with at least one window sum >= t;
    // full enumeration.
    Int tail_weight(std::int64_t t)
    {
        total_ = 0;
        t_ = t;
        prune_ = false;
        predicate_tail_ = true;
        x_.assign(static_cast<std::size_t>(spec_.d), 0);
        dfs(0, spec_.n, Int(1));
        return total_;
    }

    Rational normalize(const Int& weight) const
    {
        if (spec_.family == Family::multinomial)
            return Rational(weight, int_pow(cells_.scale, spec_.n));
        std::int64_t total = 0;
        for (const std::int64_t v : spec_.m) total += v;
        return Rational(weight, binomial_int(static_cast<unsigned long>(total),
                                             static_cast<unsigned long>(spec_.n)));
    }

private:
    void dfs(std::size_t i, std::int64_t remaining, Int acc)
    {
        const auto d = static_cast<std::size_t>(spec_.d);
        const std::int64_t hi =
            spec_.family == Family::hypergeometric
                ? std::min(remaining, spec_.m[i])
                : remaining;
        const bool last = i + 1 == d;
        for (std::int64_t xi = last ? remaining : 0; xi <= hi; ++xi) {
            if (last && xi != remaining) break;
            if (last && spec_.family == Family::hypergeometric && remaining > hi) break;
            x_[i] = xi;
            if (prune_ && window_partial_exceeds(i)) continue;
            Int next = acc;
            if (spec_.family == Family::multinomial) {
                next *= binomial_int(static_cast<unsigned long>(remaining),
                                     static_cast<unsigned long>(xi));
                next *= int_pow(cells_.a[i], xi);
            } else {
                next *= binomial_int(static_cast<unsigned long>(spec_.m[i]),
                                     static_cast<unsigned long>(xi));
            }
            if (next == 0) continue;
            if (last) {
                if (accept()) total_ += next;
            } else {
                dfs(i + 1, remaining - xi, next);
            }
        }
        x_[i] = 0;
    }

    // Any window ending at or before position i (or still open through i)
    // already above t?
    bool window_partial_exceeds(std::size_t i) const
    {
        std::int64_t sum = 0;
        const std::size_t lo = i + 1 >= ell_ ? i + 1 - ell_ : 0;
        for (std::size_t j = i; j + 1 > lo; --j) {
            sum += x_[j];
            if (sum > t_) return true;
        }
        return false;
    }

    bool accept() const
    {
        std::int64_t best = 0;
        const auto d = static_cast<std::size_t>(spec_.d);
        std::int64_t sum = 0;
        for (std::size_t j = 0; j < d; ++j) {
            sum += x_[j];
            if (j >= ell_) sum -= x_[j - ell_];
            if (j + 1 >= ell_) best = std::max(best, sum);
        }
        if (predicate_tail_) return best >= t_;
        return best <= t_;
    }

    const OracleSpec& spec_;
    std::uint32_t ell_;
    ScaledCells cells_;
    std::vector<std::int64_t> x_;
    Int total_ = 0;
    std::int64_t t_ = 0;
    bool prune_ = true;
    bool predicate_tail_ = false;
};

} // namespace

OracleSpec OracleSpec::multinomial(std::int64_t n, std::vector<Rational> p)
{
    OracleSpec spec;
    spec.family = Family::multinomial;
    spec.n = n;
    spec.d = static_cast<std::int64_t>(p.size());
    spec.p = std::move(p);
    check_spec(spec);
    return spec;
}

OracleSpec OracleSpec::multinomial_uniform(std::int64_t n, std::int64_t d)
{
    return multinomial(n, std::vector<Rational>(static_cast<std::size_t>(d),
                                                Rational(1, d)));
}

OracleSpec OracleSpec::hypergeometric(std::int64_t n, std::vector<std::int64_t> m)
{
    OracleSpec spec;
    spec.family = Family::hypergeometric;
    spec.n = n;
    spec.d = static_cast<std::int64_t>(m.size());
    spec.m = std::move(m);
    check_spec(spec);
    return spec;
}

Rational exact_scan_probability(const OracleSpec& spec, std::uint32_t ell, std::int64_t t,
                                const Int& budget)
{
    check_spec(spec);
    check_enum_budget(spec, budget);
    if (t < 0) return Rational(0);
    Enumerator e(spec, ell);
    return e.normalize(e.cdf_weight(t));
}

Rational exact_scan_tail_probability(const OracleSpec& spec, std::uint32_t ell,
                                     std::int64_t t, const Int& budget)
{
    check_spec(spec);
    check_enum_budget(spec, budget);
    Enumerator e(spec, ell);
    return e.normalize(e.tail_weight(t));
}

// ---------------------------------------------------------------------------
// Exact-rational window DP (independent of the interval engine)

namespace {

class RationalWindowDP {
public:
    RationalWindowDP(const OracleSpec& spec, std::uint32_t ell) : spec_(spec), ell_(ell)
    {
        if (ell_ < 1 || static_cast<std::int64_t>(ell_) > spec.d)
            throw std::domain_error("oracle: window length outside [1, d]");
        if (spec.family == Family::multinomial) {
            tails_.assign(static_cast<std::size_t>(spec.d) + 1, Rational(0));
            for (std::size_t j = static_cast<std::size_t>(spec.d); j-- > 0;)
                tails_[j] = spec.p[j] + tails_[j + 1];
        } else {
            m_tails_.assign(static_cast<std::size_t>(spec.d) + 1, 0);
            for (std::size_t j = static_cast<std::size_t>(spec.d); j-- > 0;)
                m_tails_[j] = spec.m[j] + m_tails_[j + 1];
        }
    }

    Rational run(const std::vector<IntSet>& sets)
    {
        const std::size_t windows = static_cast<std::size_t>(spec_.d) - ell_ + 1;
        if (sets.size() != windows)
            throw std::domain_error("oracle: one constraint set per window required");
        using State = std::vector<std::int64_t>;
        std::map<State, Rational> layer;
        // W_1
        State tuple(ell_, 0);
        build_init(sets[0], 0, 0, Rational(1), tuple, layer);
        // W_2 .. W_K
        for (std::size_t k = 1; k < windows; ++k) {
            std::map<State, Rational> next;
            for (const auto& [v, mass] : layer) {
                const std::int64_t y = v.back();
                for (std::int64_t x = y; x <= spec_.n; ++x) {
                    if (!sets[k].contains(x - v.front())) continue;
                    const Rational kern = kernel(k + ell_ - 1, y, x);
                    if (kern == 0) continue;
                    State w(v.begin() + 1, v.end());
                    w.push_back(x);
                    next[std::move(w)] += kern * mass;
                }
            }
            layer = std::move(next);
        }
        Rational total(0);
        for (const auto& [v, mass] : layer) total += mass;
        return total;
    }

private:
    // P(S_{cell+1} = x | S_cell = y), cells 0-indexed
    Rational kernel(std::size_t cell, std::int64_t y, std::int64_t x) const
    {
        if (x < y || x > spec_.n) return Rational(0);
        const std::int64_t np = spec_.n - y;
        const std::int64_t k = x - y;
        if (np == 0) return k == 0 ? Rational(1) : Rational(0);
        if (spec_.family == Family::multinomial) {
            if (tails_[cell] == 0) return Rational(0);
            const Rational pi = spec_.p[cell] / tails_[cell];
            return Rational(binomial_int(static_cast<unsigned long>(np),
                                         static_cast<unsigned long>(k))) *
                   rat_pow(pi, k) * rat_pow(1 - pi, np - k);
        }
        const std::int64_t r = spec_.m[cell];
        const std::int64_t b = m_tails_[cell + 1];
        if (k > r || np - k > b) return Rational(0);
        return Rational(binomial_int(static_cast<unsigned long>(r),
                                     static_cast<unsigned long>(k)) *
                            binomial_int(static_cast<unsigned long>(b),
                                         static_cast<unsigned long>(np - k)),
                        binomial_int(static_cast<unsigned long>(r + b),
                                     static_cast<unsigned long>(np)));
    }

    void build_init(const IntSet& a1, std::size_t depth, std::int64_t prev, Rational mass,
                    std::vector<std::int64_t>& tuple,
                    std::map<std::vector<std::int64_t>, Rational>& layer)
    {
        if (!a1.empty() && prev > a1.max()) return;
        const bool last = depth + 1 == ell_;
        for (std::int64_t s = prev; s <= spec_.n; ++s) {
            if (last && !a1.contains(s)) continue;
            const Rational kern = kernel(depth, prev, s);
            if (kern == 0) continue;
            tuple[depth] = s;
            if (last)
                layer[tuple] += mass * kern;
            else
                build_init(a1, depth + 1, s, mass * kern, tuple, layer);
        }
    }

    const OracleSpec& spec_;
    std::uint32_t ell_;
    std::vector<Rational> tails_;
    std::vector<std::int64_t> m_tails_;
};

} // namespace

Rational exact_rectangle_dp(const OracleSpec& spec, std::uint32_t ell,
                            const std::vector<IntSet>& sets, const Int& budget)
{
    check_spec(spec);
    const Int states = binomial_int(static_cast<unsigned long>(spec.n + ell),
                                    static_cast<unsigned long>(ell));
    if (states > budget) throw BudgetError(states, budget);
    RationalWindowDP dp(spec, ell);
    return dp.run(sets);
}

Rational exact_rectangle_dp(const OracleSpec& spec, std::uint32_t ell, std::int64_t t,
                            const Int& budget)
{
    if (t < 0) return Rational(0);
    const std::size_t windows = static_cast<std::size_t>(spec.d) - ell + 1;
    return exact_rectangle_dp(spec, ell, std::vector<IntSet>(windows, IntSet::range(0, t)),
                              budget);
}

// ---------------------------------------------------------------------------
// Fixture lines

std::string fixture_format(const FixtureLine& line)
{
    std::ostringstream os;
    os << (line.family == Family::multinomial ? "multinomial" : "hypergeometric") << '\t'
       << line.n << '\t' << line.d << '\t' << line.ell << '\t' << line.t << '\t'
       << line.params << '\t' << rational_to_string(line.value);
    return os.str();
}

FixtureLine fixture_parse(const std::string& line)
{
    std::istringstream is(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(is, field, '\t')) fields.push_back(field);
    if (fields.size() != 7)
        throw std::invalid_argument("fixture_parse: expected 7 tab-separated fields");
    FixtureLine out;
    if (fields[0] == "multinomial")
        out.family = Family::multinomial;
    else if (fields[0] == "hypergeometric")
        out.family = Family::hypergeometric;
    else
        throw std::invalid_argument("fixture_parse: unknown family " + fields[0]);
    out.n = std::stoll(fields[1]);
    out.d = std::stoll(fields[2]);
    out.ell = static_cast<std::uint32_t>(std::stoul(fields[3]));
    out.t = std::stoll(fields[4]);
    out.params = fields[5];
    out.value = rational_from_string(fields[6]);
    return out;
}

OracleSpec fixture_spec(const FixtureLine& line)
{
    if (line.params == "uniform") {
        if (line.family != Family::multinomial)
            throw std::invalid_argument("fixture_spec: uniform is multinomial-only");
        return OracleSpec::multinomial_uniform(line.n, line.d);
    }
    if (line.params.rfind("p=", 0) == 0) {
        std::vector<Rational> p;
        std::istringstream is(line.params.substr(2));
        std::string tok;
        while (std::getline(is, tok, ',')) p.push_back(rational_from_string(tok));
        return OracleSpec::multinomial(line.n, std::move(p));
    }
    if (line.params.rfind("m=", 0) == 0) {
        std::vector<std::int64_t> m;
        std::istringstream is(line.params.substr(2));
        std::string tok;
        while (std::getline(is, tok, ',')) m.push_back(std::stoll(tok));
        return OracleSpec::hypergeometric(line.n, std::move(m));
    }
    throw std::invalid_argument("fixture_spec: unknown parameter field " + line.params);
}

} // namespace rigscan
