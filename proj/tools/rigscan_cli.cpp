#include "rigscan/engine.hpp"
#include "rigscan/fpround.hpp"
#include "rigscan/metrics.hpp"
#include "rigscan/oracle.hpp"
#include "rigscan/report.hpp"
#include "rigscan/scan.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace rigscan;

struct CommonArgs {
    std::string family = "multinomial";
    std::int64_t n = 0;
    std::int64_t d = 0;
    std::uint32_t ell = 1;
    bool uniform = false;
    std::string p;
    std::string m;
    std::string format = "table";
    std::string precision = "binary64";
    bool no_hex = false;
    unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_ell = true)
{
    cmd->add_option("--family", args.family, "multinomial or hypergeometric")
        ->check(CLI::IsMember({"multinomial", "hypergeometric"}));
    cmd->add_option("--n", args.n, "total count")->required();
    cmd->add_option("--d", args.d, "number of cells")->required();
    if (with_ell) cmd->add_option("--ell", args.ell, "scan window length");
    cmd->add_flag("--uniform", args.uniform, "uniform cell probabilities 1/d");
    cmd->add_option("--p", args.p, "cell probabilities: rationals or hex floats, comma separated");
    cmd->add_option("--m", args.m, "cell counts: comma separated or VALxCOUNT");
    cmd->add_option("--format", args.format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    cmd->add_option("--precision", args.precision, "binary64 or binary32")
        ->check(CLI::IsMember({"binary64", "binary32"}));
    cmd->add_flag("--dec", args.no_hex, "decimal endpoints in the table format");
    cmd->add_option("--threads", args.threads, "row workers (0: hardware)");
}

RunConfig to_config(const CommonArgs& args, const std::string& command)
{
    RunConfig config;
    config.command = command;
    config.family = args.family == "multinomial" ? Family::multinomial : Family::hypergeometric;
    config.n = args.n;
    config.d = args.d;
    config.ell = args.ell;
    if (args.uniform)
        config.params = "uniform";
    else if (!args.p.empty())
        config.params = "p=" + args.p;
    else if (!args.m.empty())
        config.params = "m=" + args.m;
    else
        throw std::invalid_argument("cell parameters required: --uniform, --p or --m");
    config.precision = args.precision == "binary64" ? Precision::binary64 : Precision::binary32;
    config.format = args.format == "table" ? OutputFormat::table
                  : args.format == "csv"   ? OutputFormat::csv
                                           : OutputFormat::json;
    config.show_hex = !args.no_hex;
    config.threads = args.threads;
    return config;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s)
{
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const std::int64_t t = std::stoll(s);
        return {t, t};
    }
    return {std::stoll(s.substr(0, dots)), std::stoll(s.substr(dots + 2))};
}

double parse_prob_value(const std::string& s)
{
    if (s.find("\xc2\xb7") != std::string::npos) return fp::parse_hex64(s);
    const Rational r = rational_from_string(s);
    const double dn = to_double_down(r);
    const double up = to_double_up(r);
    if (dn == up) return dn;
    return r - rational_of(dn) <= rational_of(up) - r ? dn : up;
}

IntSet parse_set(const std::string& s)
{
    std::vector<std::int64_t> values;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        const auto dots = tok.find("..");
        if (dots == std::string::npos) {
            values.push_back(std::stoll(tok));
        } else {
            const std::int64_t lo = std::stoll(tok.substr(0, dots));
            const std::int64_t hi = std::stoll(tok.substr(dots + 2));
            for (std::int64_t v = lo; v <= hi; ++v) values.push_back(v);
        }
    }
    return IntSet::of(std::move(values));
}

int run_scan_command(const CommonArgs& args, const std::string& trange, bool tail,
                     const std::string& command)
{
    RunConfig config = to_config(args, command);
    config.tail = tail;
    const auto [lo, hi] = parse_range(trange);
    config.t_lo = lo;
    config.t_hi = hi;
    const Report report = run_scan_report(config);
    std::cout << emit(report);
    if (config.format != OutputFormat::json) std::cout.flush();
    return 0;
}

int run_rect_command(const CommonArgs& args, const std::string& sets_arg,
                     const std::string& trange)
{
    RunConfig config = to_config(args, "rect");
    const ResolvedParams params = resolve_params(config.family, config.d, config.params);
    ScanSpec spec;
    spec.ell = args.ell;
    if (config.family == Family::multinomial)
        spec.chain = ChainSpec::multinomial_rationals(config.n, params.p);
    else
        spec.chain = ChainSpec::hypergeometric(config.n, params.m);
    const std::size_t windows = static_cast<std::size_t>(config.d) - args.ell + 1;
    std::int64_t t_echo = -1;
    if (!sets_arg.empty()) {
        std::istringstream is(sets_arg);
        std::string tok;
        while (std::getline(is, tok, ';')) spec.sets.push_back(parse_set(tok));
        if (spec.sets.size() == 1 && windows > 1)
            spec.sets.assign(windows, spec.sets[0]);
    } else {
        const auto [lo, hi] = parse_range(trange);
        if (lo != hi) throw std::invalid_argument("rect takes a single threshold");
        t_echo = lo;
        spec.sets.assign(windows, IntSet::range(0, lo));
    }
    const Interval<double> iv = scan_rectangle(spec);

    Report report;
    report.config = config;
    report.config.t_lo = report.config.t_hi = t_echo;
    report.rounding = fp::active_mode() == fp::Mode::strong ? "strong" : "fallback";
    TableRow row;
    row.t = t_echo;
    row.iv = iv;
    row.lo_hex = fp::format_hex(iv.lo);
    row.hi_hex = fp::format_hex(iv.hi);
    row.lo_dec = decimal_shortest(iv.lo);
    row.hi_dec = decimal_shortest(iv.hi);
    row.err = build_error_report(iv.lo, iv.hi);
    report.rows.push_back(std::move(row));
    std::cout << emit(report);
    return 0;
}

int run_errors_command(const std::string& lo_s, const std::string& hi_s,
                       const std::string& approx_s, const std::string& format)
{
    const double lo = parse_prob_value(lo_s);
    const double hi = parse_prob_value(hi_s);
    const ErrorReport report = build_error_report(lo, hi);
    if (format == "json") {
        std::cout << "{\"lo\":" << decimal_shortest(lo) << ",\"hi\":" << decimal_shortest(hi)
                  << ",\"e_abs\":" << decimal_shortest(report.e_abs_opt)
                  << ",\"e_abs_approximator\":" << decimal_shortest(report.e_abs_approximator)
                  << ",\"e_abs_display\":\"" << report.e_abs_display << "\""
                  << ",\"e_rel\":" << decimal_shortest(report.e_rel_opt)
                  << ",\"e_rel_approximator\":" << decimal_shortest(report.e_rel_approximator)
                  << ",\"e_rel_display\":\"" << report.e_rel_display << "\""
                  << ",\"approx\":\"" << report.approx << "\"";
        if (!approx_s.empty()) {
            const double pt = parse_prob_value(approx_s);
            std::cout << ",\"at\":{\"approximator\":" << decimal_shortest(pt)
                      << ",\"e_abs\":" << decimal_shortest(std::max(e_abs_point(lo, pt), e_abs_point(hi, pt)))
                      << ",\"e_rel\":" << decimal_shortest(e_rel_interval_at(lo, hi, pt)) << "}";
        }
        std::cout << "}";
        return 0;
    }
    std::printf("interval        [%s, %s]\n", fp::format_hex(lo).c_str(), fp::format_hex(hi).c_str());
    std::printf("e_abs           %s (approximator %s)\n", report.e_abs_display.c_str(),
                decimal_shortest(report.e_abs_approximator).c_str());
    std::printf("e_rel           %s (approximator %s)\n", report.e_rel_display.c_str(),
                decimal_shortest(report.e_rel_approximator).c_str());
    std::printf("approx          %s\n", report.approx.c_str());
    if (!approx_s.empty()) {
        const double pt = parse_prob_value(approx_s);
        std::printf("at %s: e_abs %s, e_rel %s\n", decimal_shortest(pt).c_str(),
                    decimal_shortest(std::max(e_abs_point(lo, pt), e_abs_point(hi, pt))).c_str(),
                    decimal_shortest(e_rel_interval_at(lo, hi, pt)).c_str());
    }
    return 0;
}

int run_oracle_command(const CommonArgs& args, std::int64_t t, bool tail,
                       const std::string& method, long budget, bool fixture)
{
    OracleSpec spec;
    if (args.uniform) {
        spec = OracleSpec::multinomial_uniform(args.n, args.d);
    } else {
        const RunConfig config = to_config(args, "oracle");
        const ResolvedParams params = resolve_params(config.family, config.d, config.params);
        spec = config.family == Family::multinomial
                   ? OracleSpec::multinomial(config.n, params.p)
                   : OracleSpec::hypergeometric(config.n, params.m);
    }
    const Int budget_int(budget);
    std::optional<Rational> by_enum, by_dp;
    if (method == "enumeration" || method == "both") {
        by_enum = tail ? exact_scan_tail_probability(spec, args.ell, t, budget_int)
                       : exact_scan_probability(spec, args.ell, t, budget_int);
    }
    if (method == "dp" || method == "both") {
        Rational cdf = exact_rectangle_dp(spec, args.ell, tail ? t - 1 : t, budget_int);
        by_dp = tail ? 1 - cdf : cdf;
    }
    if (by_enum && by_dp && *by_enum != *by_dp) {
        std::cerr << "oracle disagreement: enumeration " << rational_to_string(*by_enum)
                  << " vs dp " << rational_to_string(*by_dp) << "\n";
        return 1;
    }
    const Rational value = by_enum ? *by_enum : *by_dp;
    if (fixture) {
        FixtureLine line;
        line.family = spec.family;
        line.n = spec.n;
        line.d = spec.d;
        line.ell = args.ell;
        line.t = t;
        if (args.uniform)
            line.params = "uniform";
        else if (!args.p.empty())
            line.params = "p=" + args.p;
        else
            line.params = "m=" + args.m;
        line.value = value;
        std::cout << fixture_format(line) << "\n";
        return 0;
    }
    std::cout << rational_to_string(value) << "\n";
    std::cout << "# decimal ~ " << decimal_shortest(to_double_up(value)) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"rigscan: certified bounds for rectangle and scan probabilities of Markov increments"};
    app.require_subcommand(1);

    CommonArgs scan_args, tail_args, table_args, rect_args, oracle_args;
    std::string scan_t, tail_t, table_t = "0..0", rect_t, rect_sets;
    std::string errors_lo, errors_hi, errors_approx, errors_format = "table";
    std::int64_t oracle_t = 0;
    bool oracle_tail = false, oracle_fixture = false;
    std::string oracle_method = "both";
    long oracle_budget = kDefaultOracleBudget;
    bool report_rounding = false;
    app.add_flag("--report-rounding", report_rounding, "print the active rounding mode first");

    CLI::App* scan_cmd = app.add_subcommand("scan", "P(max window sum <= t), one threshold");
    add_common(scan_cmd, scan_args);
    scan_cmd->add_option("--t", scan_t, "threshold")->required();

    CLI::App* tail_cmd = app.add_subcommand("tail", "P(max window sum >= t), one threshold");
    add_common(tail_cmd, tail_args);
    tail_cmd->add_option("--t", tail_t, "threshold")->required();

    CLI::App* table_cmd = app.add_subcommand("table", "threshold sweep t=a..b");
    add_common(table_cmd, table_args);
    table_cmd->add_option("--t", table_t, "threshold range a..b")->required();
    bool table_tail = false;
    table_cmd->add_flag("--tail", table_tail, "sweep P(max >= t) instead of P(max <= t)");

    CLI::App* rect_cmd = app.add_subcommand("rect", "rectangle probability with explicit sets");
    add_common(rect_cmd, rect_args);
    rect_cmd->add_option("--t", rect_t, "threshold shorthand: all sets {0..t}");
    rect_cmd->add_option("--sets", rect_sets, "per-window sets, ';' separated, e.g. 0..5;0,2,4");

    CLI::App* errors_cmd = app.add_subcommand("errors", "error metrics of an interval");
    errors_cmd->add_option("--lo", errors_lo)->required();
    errors_cmd->add_option("--hi", errors_hi)->required();
    errors_cmd->add_option("--approx", errors_approx, "also report errors at this approximator");
    errors_cmd->add_option("--format", errors_format)->check(CLI::IsMember({"table", "json"}));

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "exact rational scan probability");
    add_common(oracle_cmd, oracle_args);
    oracle_cmd->add_option("--t", oracle_t, "threshold")->required();
    oracle_cmd->add_flag("--tail", oracle_tail, "P(max >= t) instead of P(max <= t)");
    oracle_cmd->add_option("--method", oracle_method)
        ->check(CLI::IsMember({"enumeration", "dp", "both"}));
    oracle_cmd->add_option("--budget", oracle_budget, "enumeration/state budget");
    oracle_cmd->add_flag("--fixture", oracle_fixture, "emit a fixture line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        CLI::App dummy;
        dummy.exit(e); // prints the one-line diagnostic
        return 2;
    }

    try {
        if (report_rounding)
            std::cout << "rounding="
                      << (fp::active_mode() == fp::Mode::strong ? "strong" : "fallback") << "\n";
        if (scan_cmd->parsed()) return run_scan_command(scan_args, scan_t, false, "scan");
        if (tail_cmd->parsed()) return run_scan_command(tail_args, tail_t, true, "tail");
        if (table_cmd->parsed()) return run_scan_command(table_args, table_t, table_tail, "table");
        if (rect_cmd->parsed()) return run_rect_command(rect_args, rect_sets, rect_t);
        if (errors_cmd->parsed())
            return run_errors_command(errors_lo, errors_hi, errors_approx, errors_format);
        if (oracle_cmd->parsed())
            return run_oracle_command(oracle_args, oracle_t, oracle_tail, oracle_method,
                                      oracle_budget, oracle_fixture);
    } catch (const BudgetError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
