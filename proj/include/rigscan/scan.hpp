#pragma once

#include "rigscan/engine.hpp"
#include "rigscan/kernels.hpp"

#include <cstdint>
#include <memory>

// Reduction of rectangle scan probabilities to rectangle probabilities via
// the window chain W_k = (X_k, ..., X_{k+l-1}).  A window state is the
// l-tuple of nondecreasing partial sums; transitions v -> w require the
// overlap v_2 = w_1, ..., v_l = w_{l-1} and carry the scalar-chain kernel of
// the last coordinate.  Window j is admitted iff w_l - v_1 lies in A_j (the
// first window via w_l in A_1), which is the scan event expressed through
// partial-sum differences.

namespace rigscan {

template <class T>
struct ScanSpecT {
    ChainSpecT<T> chain;
    std::uint32_t ell = 1;
    std::vector<IntSet> sets; // one per window; may be empty for cdf/tail use
    bool tail_mode = false;
};

using ScanSpec = ScanSpecT<double>;

template <class T>
class WindowModel final : public TransitionModel<T> {
public:
    WindowModel(ChainSpecT<T> chain, std::uint32_t ell);

    std::size_t step_count() const override { return windows_; }
    void initial_layer(const IntSet& a1, std::vector<LayerEntry<T>>& out) const override;
    void prepare_step(std::size_t k, const IntSet& ak) const override;
    void successors(std::size_t k, StateKey from, const IntSet& ak,
                    std::vector<TransitionOut>& out) const override;
    Interval<T> step(std::size_t k, StateKey from, StateKey to) const override;

    StateKey pack(const std::vector<std::int64_t>& sums) const;
    std::vector<std::int64_t> unpack(StateKey key) const;

private:
    Interval<T> kernel(std::size_t k, std::int64_t y, std::int64_t delta) const;
    void decompose(StateKey from, std::int64_t& first, std::int64_t& y, StateKey& base) const;
    void init_rec(const IntSet& a1, std::uint32_t depth, std::int64_t prev,
                  std::vector<std::int64_t>& tuple, const Interval<T>& mass,
                  std::vector<LayerEntry<T>>& out) const;

    ChainSpecT<T> chain_;
    std::uint32_t ell_;
    std::size_t windows_;
    std::uint64_t radix_;
    std::vector<std::uint64_t> pow_;

    // Per-step kernel rows, staged by prepare_step.  One engine run drives a
    // model sequentially; concurrent evaluations should each build their own
    // model (construction is cheap), as scan_cdf/scan_tail do.
    mutable std::size_t cached_step_ = static_cast<std::size_t>(-1);
    mutable std::int64_t cache_dmax_ = -1;
    mutable std::vector<std::vector<Interval<T>>> rows_;
    mutable std::vector<char> row_built_;
    mutable StateKey last_from_ = ~StateKey{0};
    mutable std::int64_t last_y_ = 0;
    mutable StateKey last_base_ = 0;
};

template <class T>
WindowModel<T> build_window_model(const ScanSpecT<T>& spec)
{
    return WindowModel<T>(spec.chain, spec.ell);
}

/// P(max over windows of length l of the increment sums <= t), clamped.
template <class T>
Interval<T> scan_cdf(const ScanSpecT<T>& spec, std::int64_t t);

/// P(max window sum >= t) = complement of scan_cdf at t-1.
template <class T>
Interval<T> scan_tail(const ScanSpecT<T>& spec, std::int64_t t);

/// General rectangle scan probability using spec.sets.
template <class T>
Interval<T> scan_rectangle(const ScanSpecT<T>& spec);

} // namespace rigscan
