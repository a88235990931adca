#pragma once

#include "rigscan/interval.hpp"

#include <cstdint>
#include <vector>

// Forward DP over a discrete Markov model: certified intervals for the
// rectangle probability P(Y_1 in A_1, ..., Y_d in A_d).
//
// Directed addition is non-associative, so accumulation orders are frozen:
// predecessors in ascending state order, increments ascending within each
// predecessor, final summation in ascending state order.  That order is the
// reproducibility contract of every result this engine produces.

namespace rigscan {

using StateKey = std::uint64_t;

/// Finite set of (nonnegative) integers, either a contiguous range or an
/// explicit sorted list.
class IntSet {
public:
    IntSet() = default;

    static IntSet range(std::int64_t lo, std::int64_t hi)
    {
        IntSet s;
        s.lo_ = lo;
        s.hi_ = hi;
        return s;
    }
    static IntSet of(std::vector<std::int64_t> values);

    bool empty() const { return explicit_ ? values_.empty() : lo_ > hi_; }
    bool is_range() const { return !explicit_; }
    std::int64_t min() const { return explicit_ ? values_.front() : lo_; }
    std::int64_t max() const { return explicit_ ? values_.back() : hi_; }
    bool contains(std::int64_t v) const;
    std::size_t size() const
    {
        return explicit_ ? values_.size()
                         : (lo_ > hi_ ? 0 : static_cast<std::size_t>(hi_ - lo_ + 1));
    }

    template <class Fn>
    void for_each(Fn&& fn) const
    {
        if (explicit_) {
            for (const std::int64_t v : values_) fn(v);
        } else {
            for (std::int64_t v = lo_; v <= hi_; ++v) fn(v);
        }
    }

private:
    std::int64_t lo_ = 0;
    std::int64_t hi_ = -1;
    std::vector<std::int64_t> values_;
    bool explicit_ = false;
};

struct TransitionOut {
    StateKey to;
    std::int64_t increment;
};

template <class T>
struct LayerEntry {
    StateKey state;
    Interval<T> mass;
};

template <class T>
struct DPLayer {
    std::size_t step = 0; // 1-based
    std::vector<LayerEntry<T>> entries; // ascending by state key
};

/// Abstract discrete Markov model.  States are opaque ordered keys; for fixed
/// (k, from), distinct admissible increments map to distinct to-states.
template <class T>
class TransitionModel {
public:
    virtual ~TransitionModel() = default;

    virtual std::size_t step_count() const = 0;

    /// Admissible initial states, ascending, with certified masses;
    /// certified-zero states may be omitted.
    virtual void initial_layer(const IntSet& a1, std::vector<LayerEntry<T>>& out) const = 0;

    /// Called once before the engine expands transitions into step k
    /// (2 <= k <= step_count()).  A single engine run is sequential, so the
    /// model may stage per-step tables here.
    virtual void prepare_step(std::size_t /*k*/, const IntSet& /*ak*/) const {}

    /// Reachable (to-state, increment) pairs with increment in ak, ascending
    /// by to-state.
    virtual void successors(std::size_t k, StateKey from, const IntSet& ak,
                            std::vector<TransitionOut>& out) const = 0;

    /// Certified kernel for a transition enumerated by successors().
    virtual Interval<T> step(std::size_t k, StateKey from, StateKey to) const = 0;
};

/// Layer 1: p(1, x) for admissible x.
template <class T>
DPLayer<T> dp_init(const TransitionModel<T>& model, const IntSet& a1);

/// One application of the recursion p(k,x) = sum_y kernel * p(k-1, x y^-1).
template <class T>
DPLayer<T> dp_step(const TransitionModel<T>& model, const DPLayer<T>& layer,
                   const IntSet& ak);

/// Directed sum of a layer in ascending state order (unclamped).
template <class T>
Interval<T> layer_sum(const DPLayer<T>& layer);

/// Certified interval for the rectangle probability, clamped into [0,1].
template <class T>
Interval<T> rectangle_probability(const TransitionModel<T>& model,
                                  const std::vector<IntSet>& sets);

} // namespace rigscan
