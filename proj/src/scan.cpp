#include "rigscan/scan.hpp"

#include <limits>
#include <stdexcept>

namespace rigscan {

template <class T>
WindowModel<T>::WindowModel(ChainSpecT<T> chain, std::uint32_t ell)
    : chain_(std::move(chain)), ell_(ell)
{
    if (ell_ < 1 || static_cast<std::int64_t>(ell_) > chain_.d)
        throw std::domain_error("WindowModel: window length outside [1, d]");
    windows_ = static_cast<std::size_t>(chain_.d - ell_ + 1);
    radix_ = static_cast<std::uint64_t>(chain_.n) + 1;
    pow_.assign(ell_ + 1, 1);
    for (std::uint32_t i = 1; i <= ell_; ++i) {
        if (pow_[i - 1] > std::numeric_limits<std::uint64_t>::max() / radix_ / 4)
            throw std::domain_error("WindowModel: (n+1)^l exceeds the state key space");
        pow_[i] = pow_[i - 1] * radix_;
    }
}

// Key layout: the tuple is packed rotated, (s_2, ..., s_l, s_1), so states
// sharing the overlap prefix (s_2..s_l) -- exactly the predecessors feeding
// the same successor cells -- are adjacent in layer order.  Contributions to
// a cell still arrive in ascending s_1 order, the same per-cell sequence the
// straight packing produces.

template <class T>
StateKey WindowModel<T>::pack(const std::vector<std::int64_t>& sums) const
{
    if (sums.size() != ell_) throw std::domain_error("pack: tuple length != l");
    StateKey key = 0;
    for (std::uint32_t i = 1; i < ell_; ++i) key = key * radix_ + static_cast<StateKey>(sums[i]);
    return key * radix_ + static_cast<StateKey>(sums[0]);
}

template <class T>
std::vector<std::int64_t> WindowModel<T>::unpack(StateKey key) const
{
    std::vector<std::int64_t> sums(ell_);
    sums[0] = static_cast<std::int64_t>(key % radix_);
    key /= radix_;
    for (std::uint32_t i = ell_; i-- > 1;) {
        sums[i] = static_cast<std::int64_t>(key % radix_);
        key /= radix_;
    }
    return sums;
}

template <class T>
void WindowModel<T>::init_rec(const IntSet& a1, std::uint32_t depth, std::int64_t prev,
                              std::vector<std::int64_t>& tuple, const Interval<T>& mass,
                              std::vector<LayerEntry<T>>& out) const
{
    if (prev > a1.max()) return; // sums are nondecreasing, s_l can no longer hit A_1
    const std::size_t cell = depth;
    const std::int64_t lo = prev + chain_.support_min(cell, prev);
    const std::int64_t hi = prev + std::min(chain_.n - prev, chain_.support_max(cell));
    const bool last = depth + 1 == ell_;
    for (std::int64_t s = lo; s <= hi; ++s) {
        if (last && !a1.contains(s)) continue;
        const Interval<T> k = transition(chain_, cell, prev, s);
        if (k.hi == 0) continue;
        const Interval<T> next = iv_mul(mass, k);
        if (next.hi == 0) continue;
        tuple[depth] = s;
        if (last)
            out.push_back({pack(tuple), next});
        else
            init_rec(a1, depth + 1, s, tuple, next, out);
    }
}

template <class T>
void WindowModel<T>::initial_layer(const IntSet& a1, std::vector<LayerEntry<T>>& out) const
{
    out.clear();
    if (a1.empty()) return;
    fp::RoundingSession session;
    std::vector<std::int64_t> tuple(ell_, 0);
    init_rec(a1, 0, 0, tuple, Interval<T>::point(1), out);
    std::sort(out.begin(), out.end(),
              [](const LayerEntry<T>& a, const LayerEntry<T>& b) { return a.state < b.state; });
}

template <class T>
void WindowModel<T>::prepare_step(std::size_t k, const IntSet& ak) const
{
    cached_step_ = k;
    cache_dmax_ = ak.empty() ? -1 : std::min(ak.max(), chain_.n);
    rows_.assign(static_cast<std::size_t>(chain_.n) + 1, {});
    row_built_.assign(static_cast<std::size_t>(chain_.n) + 1, 0);
    last_from_ = ~StateKey{0};
}

template <class T>
Interval<T> WindowModel<T>::kernel(std::size_t k, std::int64_t y, std::int64_t delta) const
{
    const std::size_t cell = k + ell_ - 2;
    if (y < 0 || y > chain_.n || delta < 0 || y + delta > chain_.n) return {};
    if (cached_step_ != k) {
        // step() without a prepare_step(): stage rows for the full range
        cached_step_ = k;
        cache_dmax_ = chain_.n;
        rows_.assign(static_cast<std::size_t>(chain_.n) + 1, {});
        row_built_.assign(static_cast<std::size_t>(chain_.n) + 1, 0);
    }
    auto& row = rows_[static_cast<std::size_t>(y)];
    if (!row_built_[static_cast<std::size_t>(y)]) {
        const std::int64_t dmax = std::min(cache_dmax_, chain_.n - y);
        row.resize(static_cast<std::size_t>(std::max<std::int64_t>(dmax + 1, 1)));
        for (std::int64_t d = 0; d <= dmax; ++d)
            row[static_cast<std::size_t>(d)] = transition(chain_, cell, y, y + d);
        row_built_[static_cast<std::size_t>(y)] = 1;
    }
    if (delta >= static_cast<std::int64_t>(row.size()))
        return transition(chain_, cell, y, y + delta);
    return row[static_cast<std::size_t>(delta)];
}

// Rotated-key coordinates: first = s_1 (low digit), y = s_l, and the
// successor rotated tuple is (s_3, ..., s_l, y + delta, s_2), so successor
// keys sit at stride radix in delta.
template <class T>
void WindowModel<T>::decompose(StateKey from, std::int64_t& first, std::int64_t& y,
                               StateKey& base) const
{
    first = static_cast<std::int64_t>(from % radix_);
    if (ell_ == 1) {
        y = first;
        base = static_cast<StateKey>(y); // successor key = y + delta
        return;
    }
    const StateKey rem = from / radix_; // digits (s_2 .. s_l)
    y = static_cast<std::int64_t>(rem % radix_);
    const StateKey s2 = rem / pow_[ell_ - 2];
    const StateKey mid = rem % pow_[ell_ - 2]; // digits (s_3 .. s_l)
    base = (mid * radix_ + static_cast<StateKey>(y)) * radix_ + s2;
}

template <class T>
void WindowModel<T>::successors(std::size_t k, StateKey from, const IntSet& ak,
                                std::vector<TransitionOut>& out) const
{
    out.clear();
    std::int64_t first = 0, y = 0;
    StateKey base = 0;
    decompose(from, first, y, base);
    const std::int64_t spread = y - first;
    const std::size_t cell = k + ell_ - 2;
    const std::int64_t dmin = chain_.support_min(cell, y);
    const std::int64_t dmax = std::min(chain_.n - y, chain_.support_max(cell));
    const StateKey stride = ell_ == 1 ? 1 : radix_;
    if (ak.is_range()) {
        const std::int64_t lo = std::max(dmin, ak.min() - spread);
        const std::int64_t hi = std::min(dmax, ak.max() - spread);
        for (std::int64_t d = lo; d <= hi; ++d)
            out.push_back({base + static_cast<StateKey>(d) * stride, spread + d});
    } else {
        ak.for_each([&](std::int64_t w) {
            const std::int64_t d = w - spread;
            if (d < dmin || d > dmax) return;
            out.push_back({base + static_cast<StateKey>(d) * stride, w});
        });
    }
}

template <class T>
Interval<T> WindowModel<T>::step(std::size_t k, StateKey from, StateKey to) const
{
    if (from != last_from_) {
        std::int64_t first = 0;
        last_from_ = from;
        decompose(from, first, last_y_, last_base_);
    }
    const StateKey stride = ell_ == 1 ? 1 : radix_;
    return kernel(k, last_y_, static_cast<std::int64_t>((to - last_base_) / stride));
}

template <class T>
Interval<T> scan_cdf(const ScanSpecT<T>& spec, std::int64_t t)
{
    if (t < 0) throw std::domain_error("scan_cdf: threshold below 0");
    if (t >= spec.chain.n) return Interval<T>::point(1); // no window can exceed n
    const WindowModel<T> model(spec.chain, spec.ell);
    const std::vector<IntSet> sets(model.step_count(), IntSet::range(0, t));
    return rectangle_probability(model, sets);
}

template <class T>
Interval<T> scan_tail(const ScanSpecT<T>& spec, std::int64_t t)
{
    if (t < 1 || t > spec.chain.n + 1)
        throw std::domain_error("scan_tail: threshold outside [1, n+1]");
    if (t > spec.chain.n) return {}; // a window summing above n is impossible
    return iv_complement(scan_cdf(spec, t - 1));
}

template <class T>
Interval<T> scan_rectangle(const ScanSpecT<T>& spec)
{
    const WindowModel<T> model(spec.chain, spec.ell);
    if (spec.sets.size() != model.step_count())
        throw std::domain_error("scan_rectangle: one constraint set per window required");
    return rectangle_probability(model, spec.sets);
}

template class WindowModel<double>;
template class WindowModel<float>;
template Interval<double> scan_cdf(const ScanSpecT<double>&, std::int64_t);
template Interval<float> scan_cdf(const ScanSpecT<float>&, std::int64_t);
template Interval<double> scan_tail(const ScanSpecT<double>&, std::int64_t);
template Interval<float> scan_tail(const ScanSpecT<float>&, std::int64_t);
template Interval<double> scan_rectangle(const ScanSpecT<double>&);
template Interval<float> scan_rectangle(const ScanSpecT<float>&);

} // namespace rigscan
