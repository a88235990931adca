#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

// Directed-rounding scalar arithmetic on IEEE binary64 (and binary32).
//
// Every *_up primitive returns a representable z with z >= exact result,
// every *_down primitive a representable z <= exact result.  Two modes:
//
//   strong   -- per-thread rounding-direction control (fesetround).  Results
//               are optimal: no representable number lies strictly between
//               the returned value and the exact result.
//   fallback -- error-free transformations on nearest-rounded results with
//               one-ulp outward stepping.  Results may be one representable
//               step wider than optimal; rigor is preserved.
//
// The mode is resolved once per process: RIGSCAN_ROUNDING={strong,fallback}
// overrides, otherwise strong is probed and used when available.
//
// Thread contract: primitives are correct from any thread.  In strong mode a
// primitive without an enclosing RoundingSession sets and restores the
// floating-point environment itself; hot loops should hold a RoundingSession
// (per thread) so the environment is switched once per region.

namespace rigscan::fp {

enum class Mode { strong, fallback };

enum class Flag { exact, rounded_up, rounded_down, invalid };

/// Mode the process resolved to.  Throws if RIGSCAN_ROUNDING=strong was
/// requested but rounding-direction control does not work on this platform.
Mode active_mode();

template <class T>
struct RoundResult {
    T value;
    Flag flag;
    bool valid() const { return flag != Flag::invalid; }
};

namespace detail {

extern thread_local int tl_session_depth;

// -1 unresolved, 0 strong, 1 fallback
extern std::atomic<int> g_mode;

int resolve_mode();

// Test support: overrides the resolved mode (0 strong, 1 fallback, -1 back to
// probing).  Only safe while no RoundingSession is open on any thread.
void force_mode_for_tests(int mode);

inline bool strong_active()
{
    return g_mode.load(std::memory_order_relaxed) == 0 && tl_session_depth > 0;
}

// Hardware paths; require FE_UPWARD to be active.  Operands and result are
// pinned so the compiler can neither fold the operation nor schedule it
// across the opaque fesetround() calls that bracket a rounding region
// (-frounding-math alone does not model that dependence).
template <class T>
inline void pin(T& x)
{
#if defined(__x86_64__) || defined(__i386__)
    asm volatile("" : "+x"(x) : : "memory");
#elif defined(__aarch64__)
    asm volatile("" : "+w"(x) : : "memory");
#else
    volatile T v = x;
    x = v;
#endif
}

// up(x op y) directly; down(x op y) = -up of the negated expression.
#define RIGSCAN_FP_PINNED(op, ea, eb, sign)                                    \
    T va = (ea);                                                               \
    T vb = (eb);                                                               \
    pin(va);                                                                   \
    pin(vb);                                                                   \
    T vr = va op vb;                                                           \
    pin(vr);                                                                   \
    return sign vr

template <class T> inline T hw_add_up(T a, T b) { RIGSCAN_FP_PINNED(+, a, b, +); }
template <class T> inline T hw_add_dn(T a, T b) { RIGSCAN_FP_PINNED(+, -a, -b, -); }
template <class T> inline T hw_sub_up(T a, T b) { RIGSCAN_FP_PINNED(-, a, b, +); }
template <class T> inline T hw_sub_dn(T a, T b) { RIGSCAN_FP_PINNED(-, b, a, -); }
template <class T> inline T hw_mul_up(T a, T b) { RIGSCAN_FP_PINNED(*, a, b, +); }
template <class T> inline T hw_mul_dn(T a, T b) { RIGSCAN_FP_PINNED(*, -a, b, -); }
template <class T> inline T hw_div_up(T a, T b) { RIGSCAN_FP_PINNED(/, a, b, +); }
template <class T> inline T hw_div_dn(T a, T b) { RIGSCAN_FP_PINNED(/, -a, b, -); }
#undef RIGSCAN_FP_PINNED

double slow_add_up(double, double);
double slow_add_dn(double, double);
double slow_sub_up(double, double);
double slow_sub_dn(double, double);
double slow_mul_up(double, double);
double slow_mul_dn(double, double);
double slow_div_up(double, double);
double slow_div_dn(double, double);
float slow_add_up(float, float);
float slow_add_dn(float, float);
float slow_sub_up(float, float);
float slow_sub_dn(float, float);
float slow_mul_up(float, float);
float slow_mul_dn(float, float);
float slow_div_up(float, float);
float slow_div_dn(float, float);

} // namespace detail

/// Scoped rounding region.  In strong mode the first session on a thread
/// switches that thread's environment to upward rounding and the last one
/// restores it; in fallback mode it is a no-op.  Confine each session to the
/// thread that opened it.
class RoundingSession {
public:
    RoundingSession();
    ~RoundingSession();
    RoundingSession(const RoundingSession&) = delete;
    RoundingSession& operator=(const RoundingSession&) = delete;

private:
    bool counted_ = false;
    bool restore_ = false;
    int saved_ = 0;
};

// Raw primitives.  Preconditions: operands are not NaN and the pair is not
// one of the invalid forms (0*inf, inf-inf, x/0); use the checked RoundResult
// API where inputs are not under control.

#define RIGSCAN_FP_RAW(name)                                                   \
    template <class T>                                                         \
    inline T name##_raw(T a, T b)                                              \
    {                                                                          \
        if (detail::strong_active()) return detail::hw_##name(a, b);           \
        return detail::slow_##name(a, b);                                      \
    }

RIGSCAN_FP_RAW(add_up)
RIGSCAN_FP_RAW(add_dn)
RIGSCAN_FP_RAW(sub_up)
RIGSCAN_FP_RAW(sub_dn)
RIGSCAN_FP_RAW(mul_up)
RIGSCAN_FP_RAW(mul_dn)
RIGSCAN_FP_RAW(div_up)
RIGSCAN_FP_RAW(div_dn)
#undef RIGSCAN_FP_RAW

// Checked operations ([OP] surface): detect the invalid forms and report
// whether the result is exact.

template <class T> RoundResult<T> add_up(T a, T b);
template <class T> RoundResult<T> add_down(T a, T b);
template <class T> RoundResult<T> sub_up(T a, T b);
template <class T> RoundResult<T> sub_down(T a, T b);
template <class T> RoundResult<T> mul_up(T a, T b);
template <class T> RoundResult<T> mul_down(T a, T b);
template <class T> RoundResult<T> div_up(T a, T b);
template <class T> RoundResult<T> div_down(T a, T b);

class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bit-exact hex form: "1.fef956911fe58·2^-1"; "0" and "1" are literal;
/// subnormals use a "0." significand with the minimal exponent.
std::string format_hex(double x);
std::string format_hex(float x);

double parse_hex64(std::string_view s);
float parse_hex32(std::string_view s);

/// Directed double -> float conversions (used by the binary32 pipeline).
float to_float_up(double x);
float to_float_down(double x);

} // namespace rigscan::fp
