#include "rigscan/report.hpp"

#include "rigscan/fpround.hpp"
#include "rigscan/scan.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace rigscan {

namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, sep)) out.push_back(tok);
    return out;
}

Rational parse_cell(const std::string& tok)
{
    if (tok.find("\xc2\xb7") != std::string::npos) return rational_of(fp::parse_hex64(tok));
    return rational_from_string(tok);
}

template <class T>
ScanSpecT<T> make_scan_spec(const RunConfig& config, const ResolvedParams& params)
{
    ScanSpecT<T> spec;
    spec.ell = config.ell;
    spec.tail_mode = config.tail;
    if (config.family == Family::multinomial)
        spec.chain = ChainSpecT<T>::multinomial_rationals(config.n, params.p);
    else
        spec.chain = ChainSpecT<T>::hypergeometric(config.n, params.m);
    return spec;
}

struct RowResult {
    Interval<double> iv;
    std::string lo_hex, hi_hex, lo_dec, hi_dec;
};

template <class T>
RowResult eval_row(const ScanSpecT<T>& spec, bool tail, std::int64_t t)
{
    const Interval<T> iv = tail ? scan_tail(spec, t) : scan_cdf(spec, t);
    RowResult row;
    row.iv = {static_cast<double>(iv.lo), static_cast<double>(iv.hi)};
    row.lo_hex = fp::format_hex(iv.lo);
    row.hi_hex = fp::format_hex(iv.hi);
    row.lo_dec = decimal_shortest(iv.lo);
    row.hi_dec = decimal_shortest(iv.hi);
    return row;
}

const char* family_name(Family f)
{
    return f == Family::multinomial ? "multinomial" : "hypergeometric";
}

const char* precision_name(Precision p)
{
    return p == Precision::binary64 ? "binary64" : "binary32";
}

std::string config_line(const Report& report)
{
    const RunConfig& c = report.config;
    std::ostringstream os;
    os << "command=" << c.command << " family=" << family_name(c.family) << " n=" << c.n
       << " d=" << c.d << " ell=" << c.ell << " t=" << c.t_lo;
    if (c.t_hi != c.t_lo) os << ".." << c.t_hi;
    os << " tail=" << (c.tail ? 1 : 0) << " params=" << c.params
       << " precision=" << precision_name(c.precision) << " rounding=" << report.rounding;
    return os.str();
}

} // namespace

ResolvedParams resolve_params(Family family, std::int64_t d, const std::string& params)
{
    ResolvedParams out;
    if (params == "uniform") {
        if (family != Family::multinomial)
            throw std::invalid_argument("params: uniform applies to the multinomial family");
        out.p.assign(static_cast<std::size_t>(d), Rational(1, d));
        return out;
    }
    if (params.rfind("p=", 0) == 0) {
        if (family != Family::multinomial)
            throw std::invalid_argument("params: p= applies to the multinomial family");
        for (const std::string& tok : split(params.substr(2), ','))
            out.p.push_back(parse_cell(tok));
        if (static_cast<std::int64_t>(out.p.size()) != d)
            throw std::invalid_argument("params: expected " + std::to_string(d) + " cells");
        return out;
    }
    if (params.rfind("m=", 0) == 0) {
        if (family != Family::hypergeometric)
            throw std::invalid_argument("params: m= applies to the hypergeometric family");
        const std::string body = params.substr(2);
        if (const auto x = body.find('x'); x != std::string::npos) {
            const std::int64_t value = std::stoll(body.substr(0, x));
            const std::int64_t count = std::stoll(body.substr(x + 1));
            if (count != d)
                throw std::invalid_argument("params: expected " + std::to_string(d) + " cells");
            out.m.assign(static_cast<std::size_t>(count), value);
            return out;
        }
        for (const std::string& tok : split(body, ',')) out.m.push_back(std::stoll(tok));
        if (static_cast<std::int64_t>(out.m.size()) != d)
            throw std::invalid_argument("params: expected " + std::to_string(d) + " cells");
        return out;
    }
    throw std::invalid_argument("params: expected uniform, p=..., or m=...");
}

Report run_scan_report(const RunConfig& config)
{
    const ResolvedParams params = resolve_params(config.family, config.d, config.params);

    Report report;
    report.config = config;
    report.rounding = fp::active_mode() == fp::Mode::strong ? "strong" : "fallback";

    if (config.t_lo > config.t_hi) return report; // empty sweep: no rows
    if (config.t_lo < 0 || config.t_hi > config.n + 1)
        throw std::invalid_argument("threshold range outside [0, n+1]");

    const std::size_t count = static_cast<std::size_t>(config.t_hi - config.t_lo + 1);
    std::vector<RowResult> results(count);

    const auto worker_body = [&](auto spec, std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < count; i += step)
            results[i] = eval_row(spec, config.tail, config.t_lo + static_cast<std::int64_t>(i));
    };

    unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));

    const auto run_all = [&](auto spec) {
        if (threads == 1) {
            worker_body(spec, 0, 1);
            return;
        }
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&, w] { worker_body(spec, w, threads); });
        for (std::thread& th : pool) th.join();
    };

    if (config.precision == Precision::binary64)
        run_all(make_scan_spec<double>(config, params));
    else
        run_all(make_scan_spec<float>(config, params));

    report.rows.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        TableRow row;
        row.t = config.t_lo + static_cast<std::int64_t>(i);
        row.iv = results[i].iv;
        row.lo_hex = results[i].lo_hex;
        row.hi_hex = results[i].hi_hex;
        row.lo_dec = results[i].lo_dec;
        row.hi_dec = results[i].hi_dec;
        row.err = build_error_report(row.iv.lo, row.iv.hi);
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string emit_json(const Report& report)
{
    const RunConfig& c = report.config;
    std::ostringstream os;
    os << "{\"config\":{"
       << "\"command\":\"" << c.command << "\","
       << "\"family\":\"" << family_name(c.family) << "\","
       << "\"n\":" << c.n << ",\"d\":" << c.d << ",\"ell\":" << c.ell << ","
       << "\"t_lo\":" << c.t_lo << ",\"t_hi\":" << c.t_hi << ","
       << "\"tail\":" << (c.tail ? "true" : "false") << ","
       << "\"params\":\"" << c.params << "\","
       << "\"precision\":\"" << precision_name(c.precision) << "\","
       << "\"rounding\":\"" << report.rounding << "\"},\"rows\":[";
    bool first = true;
    for (const TableRow& row : report.rows) {
        if (!first) os << ",";
        first = false;
        os << "{\"t\":" << row.t << ",\"lo_hex\":\"" << row.lo_hex << "\",\"hi_hex\":\""
           << row.hi_hex << "\",\"lo_dec\":" << row.lo_dec << ",\"hi_dec\":" << row.hi_dec
           << ",\"e_abs\":\"" << row.err.e_abs_display << "\",\"e_rel\":\""
           << row.err.e_rel_display << "\",\"approx\":\"" << row.err.approx << "\"}";
    }
    os << "]}";
    return os.str();
}

std::string emit_csv(const Report& report)
{
    std::ostringstream os;
    os << "# " << config_line(report) << "\n";
    os << "t,lo_hex,hi_hex,lo_dec,hi_dec,e_abs,e_rel,approx\n";
    for (const TableRow& row : report.rows)
        os << row.t << ',' << row.lo_hex << ',' << row.hi_hex << ',' << row.lo_dec << ','
           << row.hi_dec << ',' << row.err.e_abs_display << ',' << row.err.e_rel_display
           << ',' << row.err.approx << "\n";
    return os.str();
}

std::string emit_table(const Report& report)
{
    std::ostringstream os;
    os << "# " << config_line(report) << "\n";
    const bool hex = report.config.show_hex;
    std::vector<std::vector<std::string>> cells;
    cells.push_back(hex ? std::vector<std::string>{"t", "lo_hex", "hi_hex", "e_abs", "e_rel", "approx"}
                        : std::vector<std::string>{"t", "lo", "hi", "e_abs", "e_rel", "approx"});
    for (const TableRow& row : report.rows) {
        if (hex)
            cells.push_back({std::to_string(row.t), row.lo_hex, row.hi_hex,
                             row.err.e_abs_display, row.err.e_rel_display, row.err.approx});
        else
            cells.push_back({std::to_string(row.t), row.lo_dec, row.hi_dec,
                             row.err.e_abs_display, row.err.e_rel_display, row.err.approx});
    }
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto& r : cells)
        for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], r[j].size());
    for (const auto& r : cells) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            os << r[j];
            if (j + 1 < r.size()) os << std::string(width[j] - r[j].size() + 2, ' ');
        }
        os << "\n";
    }
    return os.str();
}

std::string emit(const Report& report)
{
    switch (report.config.format) {
    case OutputFormat::json: return emit_json(report);
    case OutputFormat::csv: return emit_csv(report);
    case OutputFormat::table: return emit_table(report);
    }
    return {};
}

} // namespace rigscan
