#pragma once

#include "rigscan/fpround.hpp"

#include <stdexcept>
#include <string>

// Certified probability intervals: [lo, hi] of representable numbers proven
// to contain an exact probability.  Operations widen outward, so containment
// is preserved (Lemma: b1 (dn)op b2 <= x op y <= c1 (up)op c2 for positive x, y).

namespace rigscan {

template <class T>
struct Interval {
    T lo;
    T hi;

    Interval() : lo(0), hi(0) {}
    Interval(T lo_, T hi_) : lo(lo_), hi(hi_)
    {
        if (!(lo <= hi) || !(lo >= 0))
            throw std::domain_error("Interval: requires 0 <= lo <= hi");
    }

    bool operator==(const Interval&) const = default;

    bool contains(T v) const { return lo <= v && v <= hi; }
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
    T width() const { return fp::sub_up_raw(hi, lo); }
    bool is_zero() const { return hi == 0; }

    static Interval point(T v) { return Interval(v, v); }
};

using IntervalProb = Interval<double>;

template <class T>
inline Interval<T> iv_add(const Interval<T>& a, const Interval<T>& b)
{
    return {fp::add_dn_raw(a.lo, b.lo), fp::add_up_raw(a.hi, b.hi)};
}

template <class T>
inline Interval<T> iv_mul(const Interval<T>& a, const Interval<T>& b)
{
    return {fp::mul_dn_raw(a.lo, b.lo), fp::mul_up_raw(a.hi, b.hi)};
}

/// Replaces hi by min(hi, 1); certification of a probability is preserved.
template <class T>
inline Interval<T> iv_clamp_unit(const Interval<T>& a)
{
    if (!(a.lo <= 1)) throw std::domain_error("iv_clamp_unit: lo > 1");
    return {a.lo, a.hi > 1 ? T(1) : a.hi};
}

/// Certifies 1 - p for a certifying p; requires hi <= 1.
template <class T>
inline Interval<T> iv_complement(const Interval<T>& a)
{
    if (!(a.hi <= 1)) throw std::domain_error("iv_complement: hi > 1");
    return {fp::sub_dn_raw(T(1), a.hi), fp::sub_up_raw(T(1), a.lo)};
}

/// Shortest round-trip decimal of an endpoint (display only).
std::string decimal_shortest(double v);
std::string decimal_shortest(float v);

/// JSON object {"lo_hex","hi_hex","lo_dec","hi_dec"}; hex is authoritative.
std::string interval_json(const Interval<double>& iv);
std::string interval_json(const Interval<float>& iv);

} // namespace rigscan
