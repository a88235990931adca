#include "rigscan/kernels.hpp"

#include <stdexcept>
#include <string>

namespace rigscan {

namespace {

// Probability chains stay exact as long as integer factors convert to T
// exactly; 10^6 is also the boundedness guarantee of the density loops.
constexpr std::int64_t kMaxCount = 1'000'000;

template <class T, bool Up>
T dir_mul(T a, T b)
{
    if constexpr (Up)
        return fp::mul_up_raw(a, b);
    else
        return fp::mul_dn_raw(a, b);
}

template <class T, bool Up>
T dir_div(T a, T b)
{
    if constexpr (Up)
        return fp::div_up_raw(a, b);
    else
        return fp::div_dn_raw(a, b);
}

// Interleaved binomial product: coefficient factors (n-k+j0)/j0 are applied
// only while f < 1, so f never strays far from [q^k, n].
template <class T, bool Up>
T bnp(std::int64_t k, std::int64_t n, T p, T q)
{
    if (2 * k > n) return bnp<T, Up>(n - k, n, q, p);
    T f = 1;
    std::int64_t j0 = 0, j1 = 0, j2 = 0;
    while (j0 < k || j1 < k || j2 < n - k) {
        if (j0 < k && f < 1) {
            ++j0;
            f = dir_mul<T, Up>(f, dir_div<T, Up>(T(n - k + j0), T(j0)));
        } else if (j1 < k) {
            ++j1;
            f = dir_mul<T, Up>(f, p);
        } else if (j2 < n - k) {
            ++j2;
            f = dir_mul<T, Up>(f, q);
        } else {
            // only coefficient factors remain but f >= 1; not reachable for
            // probability inputs once 2k <= n, handled so the loop always
            // advances
            ++j0;
            f = dir_mul<T, Up>(f, dir_div<T, Up>(T(n - k + j0), T(j0)));
        }
    }
    return f;
}

// Interleaved hypergeometric product: numerator factors of C(r,k)C(b,n-k)
// while f < 1, otherwise the next reciprocal factor of C(r+b,n).
template <class T, bool Up>
T hyp(std::int64_t n, std::int64_t r, std::int64_t b, std::int64_t k)
{
    T f = 1;
    std::int64_t j0 = 0, j1 = 0, j2 = 0;
    while (j0 < k || j1 < n - k || j2 < n) {
        if (f < 1 && (j0 < k || j1 < n - k)) {
            if (j0 < k) {
                f = dir_mul<T, Up>(f, dir_div<T, Up>(T(r - j0), T(j0 + 1)));
                ++j0;
            } else {
                f = dir_mul<T, Up>(f, dir_div<T, Up>(T(b - j1), T(j1 + 1)));
                ++j1;
            }
        } else if (j2 < n) {
            f = dir_mul<T, Up>(f, dir_div<T, Up>(T(j2 + 1), T(r + b - j2)));
            ++j2;
        } else if (j0 < k) {
            f = dir_mul<T, Up>(f, dir_div<T, Up>(T(r - j0), T(j0 + 1)));
            ++j0;
        } else {
            f = dir_mul<T, Up>(f, dir_div<T, Up>(T(b - j1), T(j1 + 1)));
            ++j1;
        }
    }
    return f;
}

[[noreturn]] void domain_fail(const std::string& what)
{
    throw std::domain_error(what);
}

} // namespace

template <class T>
void BinomParams<T>::validate() const
{
    if (n < 0 || n > kMaxCount) domain_fail("BinomParams: n outside [0, 10^6]");
    if (k < 0 || k > n) domain_fail("BinomParams: k outside [0, n]");
    if (!(0 <= p_lo && p_lo <= p_hi && p_hi <= 1))
        domain_fail("BinomParams: p bounds violate 0 <= p_lo <= p_hi <= 1");
    if (!(0 <= q_lo && q_lo <= q_hi && q_hi <= 1))
        domain_fail("BinomParams: q bounds violate 0 <= q_lo <= q_hi <= 1");
    fp::RoundingSession session;
    if (fp::add_up_raw(p_hi, q_hi) < 1 || fp::add_dn_raw(p_lo, q_lo) > 1)
        domain_fail("BinomParams: bounds exclude p + q = 1");
}

void HyperParams::validate() const
{
    if (r < 0 || b < 0) domain_fail("HyperParams: negative population");
    if (r + b > kMaxCount) domain_fail("HyperParams: population above 10^6");
    if (n < 1 || n > r + b) domain_fail("HyperParams: n outside [1, r+b]");
    if (k < std::max<std::int64_t>(0, n - b) || k > std::min(n, r))
        domain_fail("HyperParams: k outside the support [max(0,n-b), min(n,r)]");
}

template <class T>
Interval<T> binom_density(const BinomParams<T>& params)
{
    params.validate();
    fp::RoundingSession session;
    const T lo = bnp<T, false>(params.k, params.n, params.p_lo, params.q_lo);
    const T hi = bnp<T, true>(params.k, params.n, params.p_hi, params.q_hi);
    return {lo, hi};
}

template <class T>
Interval<T> hyper_density_t(const HyperParams& params)
{
    params.validate();
    const std::int64_t klo = std::max<std::int64_t>(0, params.n - params.b);
    const std::int64_t khi = std::min(params.n, params.r);
    if (klo == khi) return Interval<T>::point(1); // single-point support
    fp::RoundingSession session;
    const T lo = hyp<T, false>(params.n, params.r, params.b, params.k);
    const T hi = hyp<T, true>(params.n, params.r, params.b, params.k);
    return {lo, hi};
}

template <class T>
ChainSpecT<T> ChainSpecT<T>::multinomial(std::int64_t n, std::vector<Interval<T>> cells)
{
    if (n < 0 || n > kMaxCount) domain_fail("ChainSpec: n outside [0, 10^6]");
    if (cells.empty()) domain_fail("ChainSpec: d >= 1 required");
    ChainSpecT spec;
    spec.family = Family::multinomial;
    spec.n = n;
    spec.d = static_cast<std::int64_t>(cells.size());
    spec.cells = std::move(cells);
    fp::RoundingSession session;
    const std::size_t d = spec.cells.size();
    spec.tail.assign(d + 1, Interval<T>());
    for (std::size_t j = d; j-- > 0;)
        spec.tail[j] = iv_add(spec.cells[j], spec.tail[j + 1]);
    if (spec.tail[0].lo > 1 || spec.tail[0].hi < 1)
        domain_fail("ChainSpec: cell bounds exclude sum p_i = 1");
    spec.pi.assign(d, Interval<T>());
    spec.qi.assign(d, Interval<T>());
    for (std::size_t k = 0; k + 1 < d; ++k) {
        const Interval<T>& num = spec.cells[k];
        const Interval<T>& num2 = spec.tail[k + 1];
        const Interval<T>& den = spec.tail[k];
        Interval<T>& pk = spec.pi[k];
        Interval<T>& qk = spec.qi[k];
        if (den.hi == 0) continue; // conditioning on a null event; stays [0,0]
        if (den.lo == 0) {
            pk = {0, 1};
            qk = {0, 1};
        } else {
            pk = {0, std::min(T(1), fp::div_up_raw(num.hi, den.lo))};
            pk.lo = std::min(pk.hi, fp::div_dn_raw(num.lo, den.hi));
            qk = {0, std::min(T(1), fp::div_up_raw(num2.hi, den.lo))};
            qk.lo = std::min(qk.hi, fp::div_dn_raw(num2.lo, den.hi));
        }
    }
    spec.pi[d - 1] = Interval<T>::point(1); // ratio p_d / p_d
    spec.qi[d - 1] = Interval<T>();
    return spec;
}

template <class T>
ChainSpecT<T> ChainSpecT<T>::multinomial_uniform(std::int64_t n, std::int64_t d)
{
    if (d < 1 || d > kMaxCount) domain_fail("ChainSpec: d outside [1, 10^6]");
    return multinomial_rationals(n, std::vector<Rational>(static_cast<std::size_t>(d),
                                                          Rational(1, d)));
}

namespace {

template <class T>
Interval<T> bounds_of(const Rational& v)
{
    const double lo = to_double_down(v);
    const double hi = to_double_up(v);
    if constexpr (std::is_same_v<T, double>)
        return {lo, hi};
    else
        return {fp::to_float_down(lo), fp::to_float_up(hi)};
}

} // namespace

template <class T>
ChainSpecT<T> ChainSpecT<T>::multinomial_rationals(std::int64_t n, const std::vector<Rational>& p)
{
    std::vector<Interval<T>> cells;
    cells.reserve(p.size());
    for (const Rational& v : p) {
        if (v < 0 || v > 1) domain_fail("ChainSpec: cell probability outside [0,1]");
        cells.push_back(bounds_of<T>(v));
    }
    ChainSpecT spec = multinomial(n, std::move(cells));
    // Exact cells admit exact conditional ratios; rebinding them here keeps
    // every step ratio one ulp wide instead of inheriting the width of the
    // rounded suffix sums.
    std::vector<Rational> tails(p.size() + 1, Rational(0));
    for (std::size_t j = p.size(); j-- > 0;) tails[j] = p[j] + tails[j + 1];
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (tails[k] == 0) {
            spec.pi[k] = Interval<T>();
            spec.qi[k] = Interval<T>();
            continue;
        }
        spec.pi[k] = bounds_of<T>(p[k] / tails[k]);
        spec.qi[k] = bounds_of<T>(tails[k + 1] / tails[k]);
    }
    return spec;
}

template <class T>
ChainSpecT<T> ChainSpecT<T>::hypergeometric(std::int64_t n, std::vector<std::int64_t> m)
{
    if (m.empty()) domain_fail("ChainSpec: d >= 1 required");
    ChainSpecT spec;
    spec.family = Family::hypergeometric;
    spec.n = n;
    spec.d = static_cast<std::int64_t>(m.size());
    spec.m = std::move(m);
    spec.m_tail.assign(spec.m.size() + 1, 0);
    std::int64_t total = 0;
    for (std::size_t j = spec.m.size(); j-- > 0;) {
        if (spec.m[j] < 0) domain_fail("ChainSpec: negative cell count");
        spec.m_tail[j] = spec.m[j] + spec.m_tail[j + 1];
    }
    total = spec.m_tail[0];
    if (total > kMaxCount) domain_fail("ChainSpec: total count above 10^6");
    if (n < 0 || n > total) domain_fail("ChainSpec: n outside [0, sum m_i]");
    return spec;
}

template <class T>
Interval<T> transition(const ChainSpecT<T>& spec, std::size_t k, std::int64_t y,
                       std::int64_t x)
{
    if (k >= static_cast<std::size_t>(spec.d))
        domain_fail("transition: step index outside [0, d)");
    if (y < 0 || x < y || x > spec.n) return {};
    const std::int64_t remaining = spec.n - y;
    const std::int64_t delta = x - y;
    if (remaining == 0) return delta == 0 ? Interval<T>::point(1) : Interval<T>();

    if (spec.family == Family::hypergeometric) {
        const std::int64_t r = spec.m[k];
        const std::int64_t b = spec.m_tail[k + 1];
        if (delta > r || remaining - delta > b) return {};
        return hyper_density_t<T>({remaining, r, b, delta});
    }

    if (spec.pi[k].hi == 0 && spec.qi[k].hi == 0) return {}; // null conditioning event
    BinomParams<T> bp;
    bp.n = remaining;
    bp.k = delta;
    bp.p_lo = spec.pi[k].lo;
    bp.p_hi = spec.pi[k].hi;
    bp.q_lo = spec.qi[k].lo;
    bp.q_hi = spec.qi[k].hi;
    return binom_density(bp);
}

template struct BinomParams<double>;
template struct BinomParams<float>;
template Interval<double> binom_density(const BinomParams<double>&);
template Interval<float> binom_density(const BinomParams<float>&);
template Interval<double> hyper_density_t<double>(const HyperParams&);
template Interval<float> hyper_density_t<float>(const HyperParams&);
template struct ChainSpecT<double>;
template struct ChainSpecT<float>;
template Interval<double> transition(const ChainSpecT<double>&, std::size_t, std::int64_t, std::int64_t);
template Interval<float> transition(const ChainSpecT<float>&, std::size_t, std::int64_t, std::int64_t);

} // namespace rigscan
