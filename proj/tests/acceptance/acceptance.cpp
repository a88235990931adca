// Acceptance suite: one criterion per section, one PASS/FAIL line each.
// Tolerances and thresholds are pinned in code next to each check.

#include "rigscan/engine.hpp"
#include "rigscan/fpround.hpp"
#include "rigscan/metrics.hpp"
#include "rigscan/oracle.hpp"
#include "rigscan/rational.hpp"
#include "rigscan/report.hpp"
#include "rigscan/scan.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <random>
#include <string>
#include <thread>
#include <vector>

using namespace rigscan;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& s) { g_notes.push_back(s); }

void criterion(int number, const char* title, bool pass)
{
    std::printf("CRITERION %d: %-58s %s\n", number, title, pass ? "PASS" : "FAIL");
    for (const std::string& s : g_notes) std::printf("  - %s\n", s.c_str());
    g_notes.clear();
    if (!pass) ++g_failures;
    std::fflush(stdout);
}

double hex(const char* s) { return fp::parse_hex64(s); }

std::string fmt_g(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct RefRow {
    std::int64_t t;
    double lo, hi;
};

// reference rows: certified bounds published for the same experiments
std::vector<RefRow> multinomial_rows()
{
    const char* raw[][3] = {
        {"5", "1.1c5df1e171043\xc2\xb7" "2^-178", "1.1c5df1e1a1f83\xc2\xb7" "2^-178"},
        {"6", "1.b826f22ec43c3\xc2\xb7" "2^-67", "1.b826f22f10057\xc2\xb7" "2^-67"},
        {"7", "1.b71c49253c2df\xc2\xb7" "2^-27", "1.b71c492587c97\xc2\xb7" "2^-27"},
        {"8", "1.98b8351d309cf\xc2\xb7" "2^-11", "1.98b8351d76fbd\xc2\xb7" "2^-11"},
        {"9", "1.0f0230ce40e15\xc2\xb7" "2^-4", "1.0f0230ce6f8a1\xc2\xb7" "2^-4"},
        {"10", "1.826e2adb39686\xc2\xb7" "2^-2", "1.826e2adb7befd\xc2\xb7" "2^-2"},
        {"11", "1.7131cf883a935\xc2\xb7" "2^-1", "1.7131cf887a229\xc2\xb7" "2^-1"},
        {"12", "1.ce5760948e1f6\xc2\xb7" "2^-1", "1.ce576094ddb84\xc2\xb7" "2^-1"},
        {"13", "1.f1162301827ae\xc2\xb7" "2^-1", "1.f1162301d80ec\xc2\xb7" "2^-1"},
        {"14", "1.fbef9498596d7\xc2\xb7" "2^-1", "1.fbef9498b0df9\xc2\xb7" "2^-1"},
        {"15", "1.fef95690c7eda\xc2\xb7" "2^-1", "1.fef956911fe58\xc2\xb7" "2^-1"},
        {"16", "1.ffc1fbbf7ecb1\xc2\xb7" "2^-1", "1.ffc1fbbfd6e58\xc2\xb7" "2^-1"},
        {"17", "1.fff23b0ccb810\xc2\xb7" "2^-1", "1.fff23b0d23a3c\xc2\xb7" "2^-1"},
        {"18", "1.fffd1d22732da\xc2\xb7" "2^-1", "1.fffd1d22cb527\xc2\xb7" "2^-1"},
        {"19", "1.ffff6d4fcc6e4\xc2\xb7" "2^-1", "1.ffff6d5024936\xc2\xb7" "2^-1"},
        {"20", "1.ffffe456b7146\xc2\xb7" "2^-1", "1.ffffe4570f39a\xc2\xb7" "2^-1"},
        {"21", "1.fffffb0864ee9\xc2\xb7" "2^-1", "1.fffffb08bd13c\xc2\xb7" "2^-1"},
        {"22", "1.ffffff25f7228\xc2\xb7" "2^-1", "1.ffffff264f47d\xc2\xb7" "2^-1"},
        {"23", "1.ffffffdc210c0\xc2\xb7" "2^-1", "1.ffffffdc79315\xc2\xb7" "2^-1"},
        {"24", "1.fffffffa39167\xc2\xb7" "2^-1", "1.fffffffa913ba\xc2\xb7" "2^-1"},
        {"25", "1.fffffffefb7fe\xc2\xb7" "2^-1", "1.ffffffff53a50\xc2\xb7" "2^-1"},
    };
    std::vector<RefRow> rows{{4, 0.0, 0.0}};
    for (const auto& r : raw) rows.push_back({std::atoll(r[0]), hex(r[1]), hex(r[2])});
    return rows;
}

std::vector<RefRow> hypergeometric_rows()
{
    const char* raw[][3] = {
        {"5", "1.94a78cce088a0\xc2\xb7" "2^-160", "1.94a78cce6bf78\xc2\xb7" "2^-160"},
        {"6", "1.0acc3dae36d0e\xc2\xb7" "2^-55", "1.0acc3dae78827\xc2\xb7" "2^-55"},
        {"7", "1.591d6927f05d0\xc2\xb7" "2^-20", "1.591d6928456d6\xc2\xb7" "2^-20"},
        {"8", "1.40ac4ad30a26f\xc2\xb7" "2^-7", "1.40ac4ad3593a9\xc2\xb7" "2^-7"},
        {"9", "1.df885f4af6a55\xc2\xb7" "2^-3", "1.df885f4b6ceae\xc2\xb7" "2^-3"},
        {"10", "1.546bd86953fe9\xc2\xb7" "2^-1", "1.546bd869a7f5e\xc2\xb7" "2^-1"},
        {"11", "1.cec1ebd543545\xc2\xb7" "2^-1", "1.cec1ebd5b5793\xc2\xb7" "2^-1"},
        {"12", "1.f4e80889adab5\xc2\xb7" "2^-1", "1.f4e8088a29393\xc2\xb7" "2^-1"},
        {"13", "1.fde26f41b6dfc\xc2\xb7" "2^-1", "1.fde26f4234a4c\xc2\xb7" "2^-1"},
        {"14", "1.ffa6780c23f48\xc2\xb7" "2^-1", "1.ffa6780ca228e\xc2\xb7" "2^-1"},
        {"15", "1.fff314a39f023\xc2\xb7" "2^-1", "1.fff314a41d498\xc2\xb7" "2^-1"},
        {"16", "1.fffe5ec741b7c\xc2\xb7" "2^-1", "1.fffe5ec7c001c\xc2\xb7" "2^-1"},
        {"17", "1.ffffd20418497\xc2\xb7" "2^-1", "1.ffffd2049693f\xc2\xb7" "2^-1"},
        {"18", "1.fffffb94b6e8e\xc2\xb7" "2^-1", "1.fffffb9535338\xc2\xb7" "2^-1"},
        {"19", "1.ffffffa15dbfb\xc2\xb7" "2^-1", "1.ffffffa1dc0a3\xc2\xb7" "2^-1"},
        {"20", "1.fffffff8f330a\xc2\xb7" "2^-1", "1.fffffff9717b1\xc2\xb7" "2^-1"},
        {"21", "1.ffffffff55749\xc2\xb7" "2^-1", "1.ffffffffd3bf1\xc2\xb7" "2^-1"},
    };
    std::vector<RefRow> rows{{4, 0.0, 0.0}};
    for (const auto& r : raw) rows.push_back({std::atoll(r[0]), hex(r[1]), hex(r[2])});
    return rows;
}

struct TimedRow {
    std::int64_t t;
    Interval<double> iv;
    double cpu_seconds;
};

double thread_cpu_seconds()
{
    timespec ts{};
    clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
    return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}

// threshold sweep with per-row thread-cpu timing, two workers
std::vector<TimedRow> sweep(const ScanSpec& spec, std::int64_t t_lo, std::int64_t t_hi)
{
    const auto count = static_cast<std::size_t>(t_hi - t_lo + 1);
    std::vector<TimedRow> rows(count);
    const auto worker = [&](std::size_t begin) {
        for (std::size_t i = begin; i < count; i += 2) {
            const double start = thread_cpu_seconds();
            const Interval<double> iv = scan_cdf(spec, t_lo + static_cast<std::int64_t>(i));
            rows[i] = {t_lo + static_cast<std::int64_t>(i), iv, thread_cpu_seconds() - start};
        }
    };
    std::thread other([&] { worker(1); });
    worker(0);
    other.join();
    return rows;
}

bool contains_rational(const Interval<double>& iv, const Rational& v)
{
    return rational_of(iv.lo) <= v && v <= rational_of(iv.hi);
}

ScanSpec mult_spec()
{
    ScanSpec spec;
    spec.chain = ChainSpec::multinomial_uniform(500, 365);
    spec.ell = 3;
    return spec;
}

ScanSpec hyper_spec()
{
    ScanSpec spec;
    spec.chain = ChainSpec::hypergeometric(500, std::vector<std::int64_t>(365, 10));
    spec.ell = 3;
    return spec;
}

// ---------------------------------------------------------------------------

bool criterion1()
{
    const auto refs = multinomial_rows();
    const auto rows = sweep(mult_spec(), 4, 32);
    bool pass = true;

    double worst_width = 0, worst_time = 0;
    for (const auto& ref : refs) { // t in {4..25}
        const auto& row = rows[static_cast<std::size_t>(ref.t - 4)];
        const Interval<double> reference(ref.lo, ref.hi);
        if (!row.iv.intersects(reference)) {
            note("t=" + std::to_string(ref.t) + ": no overlap with the reference interval");
            pass = false;
        }
        const double width = row.iv.width();
        worst_width = std::max(worst_width, width);
        if (!(width <= 1e-10)) {
            note("t=" + std::to_string(ref.t) + ": width " + std::to_string(width) + " > 1e-10");
            pass = false;
        }
    }
    if (!(rows[0].iv.lo == 0 && rows[0].iv.hi == 0)) {
        note("t=4 is not exactly [0,0]");
        pass = false;
    }
    const double ref26_lo = hex("1.ffffffffb44b7\xc2\xb7" "2^-1");
    int saturated_from = -1;
    for (std::int64_t t = 26; t <= 32; ++t) {
        const auto& row = rows[static_cast<std::size_t>(t - 4)];
        if (!(row.iv.lo >= ref26_lo)) {
            note("t=" + std::to_string(t) + ": lower bound below the t=26 reference");
            pass = false;
        }
        if (row.iv.hi == 1.0 && saturated_from < 0) saturated_from = static_cast<int>(t);
        // an upper bound that has not yet saturated must still be a tighter
        // statement than the saturated reference row
        if (row.iv.hi != 1.0 && !(row.iv.hi < 1.0 && row.iv.hi > ref26_lo)) {
            note("t=" + std::to_string(t) + ": unsaturated upper bound inconsistent");
            pass = false;
        }
    }
    if (saturated_from < 0 || saturated_from > 27) {
        note("clamped upper bound never reached 1 by t=27");
        pass = false;
    } else if (saturated_from != 26) {
        note("upper bound saturates at t=" + std::to_string(saturated_from) +
             "; bounds below 1 before that are tighter than the reference's saturated rows");
    }
    // runtime ceiling over the sweep grid t in {4..25}; the t >= 26 rows only
    // feed the saturation check and are reported informationally
    double worst_late = 0;
    for (const auto& row : rows) {
        if (row.t <= 25) {
            worst_time = std::max(worst_time, row.cpu_seconds);
            if (!(row.cpu_seconds <= 60.0)) {
                note("t=" + std::to_string(row.t) + ": " + fmt_g(row.cpu_seconds) +
                     " s > 60 s");
                pass = false;
            }
        } else {
            worst_late = std::max(worst_late, row.cpu_seconds);
        }
    }
    // sanity ceiling on interval growth: width after m directed operations is
    // O(m * 2^-52) at probability magnitude; m bounds the per-path operation
    // count of the t=15 run, with factor-4 slack
    {
        const auto& row15 = rows[11];
        const double ops = 363.0 * (500.0 + 4 * 16 + 8);
        if (!(row15.iv.width() <= 4 * ops * 0x1p-52)) {
            note("t=15 width exceeds the operation-count growth ceiling");
            pass = false;
        }
    }
    note("worst width " + fmt_g(worst_width) + "; per-threshold time " + fmt_g(worst_time) +
         " s on the grid, " + fmt_g(worst_late) + " s on the saturated rows");
    return pass;
}

bool criterion2()
{
    const auto refs = hypergeometric_rows();
    const auto rows = sweep(hyper_spec(), 4, 21);
    bool pass = true;
    for (const auto& ref : refs) {
        const auto& row = rows[static_cast<std::size_t>(ref.t - 4)];
        const Interval<double> reference(ref.lo, ref.hi);
        if (!row.iv.intersects(reference)) {
            note("t=" + std::to_string(ref.t) + ": no overlap with the reference interval");
            pass = false;
        }
        if (!(row.iv.width() <= 1e-10)) {
            note("t=" + std::to_string(ref.t) + ": width above 1e-10");
            pass = false;
        }
    }
    const auto& row9 = rows[5];
    const std::string t9 = format_T(row9.iv.lo, row9.iv.hi);
    if (t9 != ".2341468") {
        note("t=9 approximation is " + t9 + ", expected .2341468");
        pass = false;
    }
    return pass;
}

bool criterion3()
{
    const ScanSpec spec = mult_spec();
    bool pass = true;
    const Interval<double> t16 = scan_tail(spec, 16);
    const std::string rep16 = format_T(t16.lo, t16.hi);
    if (rep16 != ".0020040") {
        note("tail(16) approximation is " + rep16 + ", expected .0020040");
        pass = false;
    }
    for (const std::int64_t t : {6, 7}) {
        const Interval<double> tail = scan_tail(spec, t);
        if (!(tail.lo >= 1.0 - 0x1p-52)) {
            note("tail(" + std::to_string(t) + ") lower bound further than 2^-52 below 1");
            pass = false;
        }
        const ErrorReport rep = build_error_report(tail.lo, tail.hi);
        if (!std::isinf(rep.e_rel_opt) || rep.e_rel_display != "inf") {
            note("tail(" + std::to_string(t) + ") relative error report is not inf");
            pass = false;
        }
    }
    return pass;
}

bool criterion4()
{
    bool pass = true;
    std::size_t checked = 0;
    for (const int family : {0, 1}) {
        for (std::int64_t n = 2; n <= 12; ++n) {
            for (std::int64_t d = 2; d <= 6; ++d) {
                OracleSpec ospec;
                ScanSpec spec;
                ScanSpecT<float> fspec;
                if (family == 0) {
                    ospec = OracleSpec::multinomial_uniform(n, d);
                    spec.chain = ChainSpec::multinomial_uniform(n, d);
                    fspec.chain = ChainSpecT<float>::multinomial_uniform(n, d);
                } else {
                    std::vector<std::int64_t> m(static_cast<std::size_t>(d),
                                                (n + d - 1) / d + 1);
                    for (std::size_t i = 0; i < m.size(); i += 3) m[i] += 1;
                    ospec = OracleSpec::hypergeometric(n, m);
                    spec.chain = ChainSpec::hypergeometric(n, m);
                    fspec.chain = ChainSpecT<float>::hypergeometric(n, m);
                }
                for (std::uint32_t ell = 1; ell <= 3 && static_cast<std::int64_t>(ell) <= d;
                     ++ell) {
                    spec.ell = fspec.ell = ell;
                    for (std::int64_t t = 0; t <= n; ++t) {
                        const Rational by_enum = exact_scan_probability(ospec, ell, t);
                        const Rational by_dp = exact_rectangle_dp(ospec, ell, t);
                        if (by_enum != by_dp) {
                            note("oracles disagree at family=" + std::to_string(family) +
                                 " n=" + std::to_string(n) + " d=" + std::to_string(d));
                            pass = false;
                        }
                        const Interval<double> iv = scan_cdf(spec, t);
                        if (!contains_rational(iv, by_enum)) {
                            note("containment violated at n=" + std::to_string(n) +
                                 " d=" + std::to_string(d) + " ell=" + std::to_string(ell) +
                                 " t=" + std::to_string(t));
                            pass = false;
                        }
                        const Interval<float> fiv = scan_cdf(fspec, t);
                        if (!(rational_of(fiv.lo) <= by_enum &&
                              by_enum <= rational_of(fiv.hi))) {
                            note("binary32 containment violated at n=" + std::to_string(n));
                            pass = false;
                        }
                        ++checked;
                    }
                }
            }
        }
    }
    note(std::to_string(checked) + " grid instances checked in binary64 and binary32");

    // showcase instances against frozen fixtures; the d=12 instance also runs
    // the enumeration oracle, the d=25 support is too large to enumerate
    const char* fixtures[] = {
        "multinomial\t15\t12\t3\t5\tuniform\t7643175262723/35664401793024",
        "multinomial\t15\t25\t3\t5\tuniform\t"
        "167589945457073283144/186264514923095703125",
    };
    for (const char* text : fixtures) {
        const FixtureLine line = fixture_parse(text);
        const OracleSpec ospec = fixture_spec(line);
        if (exact_rectangle_dp(ospec, line.ell, line.t) != line.value) {
            note("recursion oracle does not reproduce the frozen fixture");
            pass = false;
        }
        if (line.d == 12 &&
            exact_scan_probability(ospec, line.ell, line.t) != line.value) {
            note("enumeration oracle does not reproduce the frozen fixture");
            pass = false;
        }
        ScanSpec spec;
        spec.chain = ChainSpec::multinomial_uniform(line.n, line.d);
        spec.ell = line.ell;
        const auto start = std::chrono::steady_clock::now();
        const Interval<double> iv = scan_cdf(spec, line.t);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!contains_rational(iv, line.value)) {
            note("interval misses the showcase value at d=" + std::to_string(line.d));
            pass = false;
        }
        if (!(secs <= 1.0)) {
            note("showcase interval computation took " + std::to_string(secs) + " s > 1 s");
            pass = false;
        }
    }
    return pass;
}

bool criterion5()
{
    bool pass = true;
    const double a = 0.02, b = 0.03;
    const auto ulp = [](double x) { return std::nextafter(x, 1e308) - x; };
    const auto close1 = [&](double x, const Rational& target) {
        const double t = to_double_up(target);
        return std::fabs(x - t) <= ulp(std::fabs(t));
    };
    const auto ea = e_abs_interval(a, b);
    if (!close1(ea.value, Rational(1, 200)) || !close1(ea.approximator, Rational(1, 40))) {
        note("e_abs([0.02,0.03]) fixture failed");
        pass = false;
    }
    const auto er = e_rel_interval(a, b);
    if (!close1(er.value, Rational(1, 5)) || !close1(er.approximator, Rational(3, 125))) {
        note("e_rel([0.02,0.03]) fixture failed");
        pass = false;
    }
    const double approximators[] = {0.024, 0.025, 0.02, 0.03};
    const Rational rel_targets[] = {Rational(1, 5), Rational(1, 4), Rational(1, 3),
                                    Rational(1, 2)};
    for (std::size_t i = 0; i < 4; ++i) {
        if (!close1(e_rel_interval_at(a, b, approximators[i]), rel_targets[i])) {
            note("approximator row " + std::to_string(i) + " failed");
            pass = false;
        }
    }
    const double p = 0.027;
    const Rational point_targets[] = {Rational(3, 27), Rational(2, 27), Rational(7, 27),
                                      Rational(3, 27)};
    const Rational abs_targets[] = {Rational(3, 1000), Rational(1, 500), Rational(7, 1000),
                                    Rational(3, 1000)};
    for (std::size_t i = 0; i < 4; ++i) {
        if (!close1(e_rel_point(p, approximators[i]), point_targets[i]) ||
            !close1(e_abs_point(p, approximators[i]), abs_targets[i])) {
            note("point error row " + std::to_string(i) + " failed");
            pass = false;
        }
    }
    return pass;
}

double random_double(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<std::uint64_t> bits;
    const std::uint64_t mant = bits(rng) & ((std::uint64_t{1} << 52) - 1);
    const std::uint64_t sign = (bits(rng) & 1) << 63;
    std::uint64_t expo = 0;
    switch (pick(rng)) {
    case 0: expo = 0; break;
    case 1: expo = 1 + bits(rng) % 100; break;
    case 2: expo = 1 + bits(rng) % 2046; break;
    case 3: expo = 2046 - bits(rng) % 60; break;
    }
    return std::bit_cast<double>(sign | (expo << 52) | mant);
}

bool criterion6()
{
    bool pass = true;
    {
        const double c = 0x1p-53;
        const double inner = fp::add_down(1.0, c).value;
        const double left = fp::add_down(-1.0, 1.0).value;
        if (!(inner == 1.0 && fp::add_down(-1.0, inner).value == 0.0 && left == 0.0 &&
              fp::add_down(left, c).value == c)) {
            note("non-associativity fixture failed");
            pass = false;
        }
    }
    const bool strong = fp::active_mode() == fp::Mode::strong;
    std::mt19937_64 rng(424242);
    long containment_violations = 0, optimality_violations = 0;
    const auto check = [&](double dn, double up, const Rational& exact) {
        const bool below = std::isinf(dn) ? dn < 0 : rational_of(dn) <= exact;
        const bool above = std::isinf(up) ? up > 0 : rational_of(up) >= exact;
        if (!below || !above) ++containment_violations;
        if (strong) {
            if (!std::isinf(dn)) {
                const double n = std::nextafter(dn, 1e308);
                if (!std::isinf(n) && !(rational_of(n) > exact)) ++optimality_violations;
            }
            if (!std::isinf(up)) {
                const double n = std::nextafter(up, -1e308);
                if (!std::isinf(n) && !(rational_of(n) < exact)) ++optimality_violations;
            }
        }
    };
    const int iterations = 100000 / 4; // four operations per draw
    for (int i = 0; i < iterations; ++i) {
        const double x = random_double(rng), y = random_double(rng);
        const Rational rx = rational_of(x), ry = rational_of(y);
        check(fp::add_down(x, y).value, fp::add_up(x, y).value, rx + ry);
        check(fp::sub_down(x, y).value, fp::sub_up(x, y).value, rx - ry);
        check(fp::mul_down(x, y).value, fp::mul_up(x, y).value, rx * ry);
        if (y != 0) check(fp::div_down(x, y).value, fp::div_up(x, y).value, rx / ry);
    }
    note(std::to_string(iterations * 4) + " randomized checks, " +
         std::to_string(containment_violations) + " containment and " +
         std::to_string(optimality_violations) + " optimality violations (mode " +
         (strong ? "strong" : "fallback") + ")");
    if (containment_violations != 0 || (strong && optimality_violations != 0)) pass = false;
    return pass;
}

bool criterion7()
{
    bool pass = true;
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> uni(0, 1);
    for (int i = 0; i < 1000; ++i)
        if (max_accuracy(rational_of(uni(rng))) != 0) {
            note("representable probability with nonzero maximal accuracy");
            pass = false;
            break;
        }
    if (!std::isinf(max_accuracy(pow2(-1075)))) {
        note("max_accuracy(2^-1075) not inf");
        pass = false;
    }
    if (!std::isinf(max_accuracy(1 - pow2(-54)))) {
        note("max_accuracy(1 - 2^-54) not inf");
        pass = false;
    }
    const Rational cap(Int(1), (Int(1) << 53) + 1);
    std::uniform_int_distribution<long> expo(-1020, -2);
    std::uniform_int_distribution<long> num(3, 995);
    int tested = 0;
    for (int i = 0; i < 5000 && tested < 1000; ++i) {
        const Rational p = pow2(expo(rng)) * Rational(num(rng), 997);
        if (p < pow2(-1022) || p > Rational(1, 2) || is_representable64(p)) continue;
        ++tested;
        if (!(rational_of(max_accuracy(p)) <= cap)) {
            note("maximal accuracy above 1/(2^53+1)");
            pass = false;
        }
    }
    if (tested < 1000) {
        note("could not draw 1000 non-representable rationals");
        pass = false;
    }
    if (!std::isinf(max_accuracy_complement(pow2(-60)))) {
        note("complement accuracy of 2^-60 not inf");
        pass = false;
    }
    return pass;
}

bool criterion8()
{
    RunConfig config;
    config.command = "table";
    config.family = Family::multinomial;
    config.n = 500;
    config.d = 365;
    config.ell = 3;
    config.t_lo = 4;
    config.t_hi = 32;
    config.params = "uniform";
    config.format = OutputFormat::json;
    const std::string first = emit_json(run_scan_report(config));
    const std::string second = emit_json(run_scan_report(config));
    if (first != second) {
        note("consecutive runs differ");
        return false;
    }
    note(std::to_string(first.size()) + " bytes, byte-identical");
    return true;
}

} // namespace

int main()
{
    std::printf("rounding mode: %s\n",
                fp::active_mode() == fp::Mode::strong ? "strong" : "fallback");
    criterion(1, "multinomial sweep reproduction (n=500, d=365, l=3)", criterion1());
    criterion(2, "hypergeometric sweep reproduction (m = 10 per cell)", criterion2());
    criterion(3, "complement behavior of the upper distribution function", criterion3());
    criterion(4, "oracle soundness grid and showcase instances", criterion4());
    criterion(5, "error-metric fixtures", criterion5());
    criterion(6, "directed-rounding fixtures and randomized soundness", criterion6());
    criterion(7, "maximal-accuracy formulas", criterion7());
    criterion(8, "byte-identical determinism of the reference sweep", criterion8());
    if (g_failures != 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
