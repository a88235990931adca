#pragma once

#include "rigscan/interval.hpp"
#include "rigscan/rational.hpp"

#include <cstdint>
#include <vector>

// Rigorous interval evaluation of binomial and hypergeometric densities via
// interleaved product factorizations, and the partial-sum Markov transition
// kernels for multinomial and multivariate hypergeometric vectors.

namespace rigscan {

enum class Family { multinomial, hypergeometric };

/// Binomial density parameters with success/failure probability bounds.
/// Bounds rather than point values: cell probabilities like 1/365 are not
/// representable.
template <class T>
struct BinomParams {
    std::int64_t n = 0;
    std::int64_t k = 0;
    T p_lo = 0, p_hi = 0;
    T q_lo = 0, q_hi = 0;

    void validate() const;
};

struct HyperParams {
    std::int64_t n = 0; // sample size
    std::int64_t r = 0; // red count
    std::int64_t b = 0; // blue count
    std::int64_t k = 0;

    void validate() const;
};

/// Certified interval for b_{n,p}(k) over all p in [p_lo, p_hi] with
/// consistent q = 1-p.  Factor order is the frozen interleaved product:
/// a binomial-coefficient factor (n-k+j0)/j0 while the accumulator is < 1,
/// otherwise the next p then q factor; 2k > n reduces by symmetry.
template <class T>
Interval<T> binom_density(const BinomParams<T>& params);

/// Certified interval for h_{n,r,b}(k); integer inputs are exact, widths come
/// only from the rounded divisions.
template <class T>
Interval<T> hyper_density_t(const HyperParams& params);

inline Interval<double> hyper_density(const HyperParams& params)
{
    return hyper_density_t<double>(params);
}

/// Discrete Markov model for the partial sums S_k of a multinomial or
/// multivariate hypergeometric vector.  Suffix cell sums are precomputed once
/// (descending-index accumulation) so conditional ratios are deterministic.
template <class T>
struct ChainSpecT {
    Family family = Family::multinomial;
    std::int64_t n = 0;
    std::int64_t d = 0;
    std::vector<Interval<T>> cells;      // multinomial probability bounds
    std::vector<std::int64_t> m;         // hypergeometric cell counts
    std::vector<Interval<T>> tail;       // suffix sums of cells, size d+1
    std::vector<std::int64_t> m_tail;    // suffix sums of m, size d+1
    // Conditional step ratios p_{k+1}/tail and their complements, bound once
    // at construction.  Exact-rational cell inputs give one-ulp-wide ratios;
    // interval cell inputs go through the outward-rounded suffix-sum
    // quotients.
    std::vector<Interval<T>> pi;         // multinomial only, size d
    std::vector<Interval<T>> qi;         // multinomial only, size d

    static ChainSpecT multinomial(std::int64_t n, std::vector<Interval<T>> cells);
    static ChainSpecT multinomial_uniform(std::int64_t n, std::int64_t d);
    static ChainSpecT multinomial_rationals(std::int64_t n, const std::vector<Rational>& p);
    static ChainSpecT hypergeometric(std::int64_t n, std::vector<std::int64_t> m);

    /// Largest increment a single step into cell `k` can produce.
    std::int64_t support_max(std::size_t k) const
    {
        return family == Family::multinomial ? n : m[k];
    }
    /// Smallest increment a step into cell `k` from partial sum y can produce.
    std::int64_t support_min(std::size_t k, std::int64_t y) const
    {
        if (family == Family::multinomial)
            return k + 1 == static_cast<std::size_t>(d) ? n - y : 0;
        return std::max<std::int64_t>(0, (n - y) - m_tail[k + 1]);
    }
};

using ChainSpec = ChainSpecT<double>;

/// Certified one-step transition probability P(S_{k+1} = x | S_k = y), cells
/// 0-indexed (step k consumes cell k).  Impossible transitions give [0,0].
template <class T>
Interval<T> transition(const ChainSpecT<T>& spec, std::size_t k, std::int64_t y,
                       std::int64_t x);

} // namespace rigscan
