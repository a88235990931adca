#pragma once

#include "rigscan/interval.hpp"
#include "rigscan/kernels.hpp"
#include "rigscan/metrics.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

// Computation and emission of result tables: one row per threshold with the
// certified interval (hex authoritative), its accuracy report, and the
// T-system approximation.  All numeric content comes from the library; the
// emitters only format.

namespace rigscan {

enum class Precision { binary64, binary32 };
enum class OutputFormat { table, csv, json };

struct RunConfig {
    std::string command = "table"; // scan | tail | rect | table
    Family family = Family::multinomial;
    std::int64_t n = 0;
    std::int64_t d = 0;
    std::uint32_t ell = 1;
    std::int64_t t_lo = 0;
    std::int64_t t_hi = 0;      // inclusive; == t_lo for single-threshold runs
    bool tail = false;
    std::string params = "uniform"; // "uniform" | "p=r1,r2,..." | "m=c1,c2,..." | "m=VxC"
    Precision precision = Precision::binary64;
    OutputFormat format = OutputFormat::table;
    bool show_hex = true;
    unsigned threads = 0; // 0: hardware concurrency
};

struct TableRow {
    std::int64_t t = 0;
    Interval<double> iv;        // binary32 results widened exactly
    std::string lo_hex, hi_hex; // formatted in the computing precision
    std::string lo_dec, hi_dec;
    ErrorReport err;
};

struct Report {
    RunConfig config;
    std::string rounding; // "strong" | "fallback"
    std::vector<TableRow> rows;
};

/// Resolved cell parameters of a run.
struct ResolvedParams {
    std::vector<Rational> p;      // multinomial
    std::vector<std::int64_t> m;  // hypergeometric
};

/// Parses "uniform", "p=...", "m=..." (hex-float cell entries allowed).
ResolvedParams resolve_params(Family family, std::int64_t d, const std::string& params);

/// Computes the scan/tail rows for config.t_lo..t_hi; rows may be evaluated
/// in parallel but are always emitted in ascending threshold order.
Report run_scan_report(const RunConfig& config);

std::string emit_json(const Report& report);
std::string emit_csv(const Report& report);
std::string emit_table(const Report& report);
std::string emit(const Report& report);

} // namespace rigscan
