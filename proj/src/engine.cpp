#include "rigscan/engine.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace rigscan {

IntSet IntSet::of(std::vector<std::int64_t> values)
{
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (!values.empty() &&
        values.back() - values.front() + 1 == static_cast<std::int64_t>(values.size()))
        return range(values.front(), values.back());
    IntSet s;
    s.explicit_ = true;
    s.values_ = std::move(values);
    return s;
}

bool IntSet::contains(std::int64_t v) const
{
    if (!explicit_) return lo_ <= v && v <= hi_;
    return std::binary_search(values_.begin(), values_.end(), v);
}

namespace {

// Open-addressing accumulator for one DP layer.  Accumulation into a cell
// happens in exactly the order accumulate() is called; rehashing only
// relocates finished partial sums.
template <class T>
class LayerAccumulator {
public:
    explicit LayerAccumulator(std::size_t expected)
    {
        std::size_t cap = 16;
        while (cap < expected * 2) cap <<= 1;
        slots_.assign(cap, Slot{});
        mask_ = cap - 1;
    }

    void accumulate(StateKey key, T lo, T hi)
    {
        Slot* s = find(key);
        if (s->key == kEmpty) {
            if (++size_ * 10 > (mask_ + 1) * 7) {
                grow();
                s = find(key);
            }
            s->key = key;
            s->lo = lo;
            s->hi = hi;
        } else {
            s->lo = fp::add_dn_raw(s->lo, lo);
            s->hi = fp::add_up_raw(s->hi, hi);
        }
    }

    void extract_sorted(std::vector<LayerEntry<T>>& out) const
    {
        out.clear();
        out.reserve(size_);
        for (const Slot& s : slots_) {
            if (s.key == kEmpty || s.hi == 0) continue;
            out.push_back({s.key, Interval<T>(s.lo, s.hi)});
        }
        std::sort(out.begin(), out.end(),
                  [](const LayerEntry<T>& a, const LayerEntry<T>& b) { return a.state < b.state; });
    }

private:
    static constexpr StateKey kEmpty = ~StateKey{0};
    struct Slot {
        StateKey key = kEmpty;
        T lo{}, hi{};
    };

    Slot* find(StateKey key)
    {
        std::size_t i = hash(key) & mask_;
        while (slots_[i].key != kEmpty && slots_[i].key != key) i = (i + 1) & mask_;
        return &slots_[i];
    }

    void grow()
    {
        std::vector<Slot> old = std::move(slots_);
        slots_.assign(old.size() * 2, Slot{});
        mask_ = slots_.size() - 1;
        for (const Slot& s : old) {
            if (s.key == kEmpty) continue;
            std::size_t i = hash(s.key) & mask_;
            while (slots_[i].key != kEmpty) i = (i + 1) & mask_;
            slots_[i] = s;
        }
    }

    static std::size_t hash(StateKey key)
    {
        return static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ULL) >> 17);
    }

    std::vector<Slot> slots_;
    std::size_t mask_ = 0;
    std::size_t size_ = 0;
};

} // namespace

template <class T>
DPLayer<T> dp_init(const TransitionModel<T>& model, const IntSet& a1)
{
    fp::RoundingSession session;
    DPLayer<T> layer;
    layer.step = 1;
    model.initial_layer(a1, layer.entries);
    return layer;
}

template <class T>
DPLayer<T> dp_step(const TransitionModel<T>& model, const DPLayer<T>& layer,
                   const IntSet& ak)
{
    fp::RoundingSession session;
    DPLayer<T> next;
    next.step = layer.step + 1;
    if (layer.entries.empty() || ak.empty()) return next;
    model.prepare_step(next.step, ak);
    LayerAccumulator<T> acc(layer.entries.size());
    std::vector<TransitionOut> buf;
    for (const LayerEntry<T>& e : layer.entries) {
        model.successors(next.step, e.state, ak, buf);
        for (const TransitionOut& tr : buf) {
            const Interval<T> kernel = model.step(next.step, e.state, tr.to);
            if (kernel.hi == 0) continue;
            acc.accumulate(tr.to, fp::mul_dn_raw(kernel.lo, e.mass.lo),
                           fp::mul_up_raw(kernel.hi, e.mass.hi));
        }
    }
    acc.extract_sorted(next.entries);
    return next;
}

template <class T>
Interval<T> layer_sum(const DPLayer<T>& layer)
{
    fp::RoundingSession session;
    T lo = 0, hi = 0;
    for (const LayerEntry<T>& e : layer.entries) {
        lo = fp::add_dn_raw(lo, e.mass.lo);
        hi = fp::add_up_raw(hi, e.mass.hi);
    }
    return {lo, hi};
}

template <class T>
Interval<T> rectangle_probability(const TransitionModel<T>& model,
                                  const std::vector<IntSet>& sets)
{
    if (sets.size() != model.step_count())
        throw std::domain_error("rectangle_probability: one constraint set per step required");
    fp::RoundingSession session;
    DPLayer<T> layer = dp_init(model, sets[0]);
    for (std::size_t k = 1; k < sets.size(); ++k) {
        if (layer.entries.empty()) return {};
        layer = dp_step(model, layer, sets[k]);
    }
    return iv_clamp_unit(layer_sum(layer));
}

template DPLayer<double> dp_init(const TransitionModel<double>&, const IntSet&);
template DPLayer<float> dp_init(const TransitionModel<float>&, const IntSet&);
template DPLayer<double> dp_step(const TransitionModel<double>&, const DPLayer<double>&, const IntSet&);
template DPLayer<float> dp_step(const TransitionModel<float>&, const DPLayer<float>&, const IntSet&);
template Interval<double> layer_sum(const DPLayer<double>&);
template Interval<float> layer_sum(const DPLayer<float>&);
template Interval<double> rectangle_probability(const TransitionModel<double>&, const std::vector<IntSet>&);
template Interval<float> rectangle_probability(const TransitionModel<float>&, const std::vector<IntSet>&);

} // namespace rigscan
