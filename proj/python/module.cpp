#include "rigscan/engine.hpp"
#include "rigscan/fpround.hpp"
#include "rigscan/metrics.hpp"
#include "rigscan/oracle.hpp"
#include "rigscan/report.hpp"
#include "rigscan/scan.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace rigscan;

namespace {

OracleSpec build_oracle_spec(const std::string& family, std::int64_t n, std::int64_t d,
                             const std::string& params)
{
    const Family fam = family == "hypergeometric" ? Family::hypergeometric : Family::multinomial;
    const ResolvedParams resolved = resolve_params(fam, d, params);
    return fam == Family::multinomial ? OracleSpec::multinomial(n, resolved.p)
                                      : OracleSpec::hypergeometric(n, resolved.m);
}

ScanSpec build_scan_spec(const std::string& family, std::int64_t n, std::int64_t d,
                         std::uint32_t ell, const std::string& params)
{
    const Family fam = family == "hypergeometric" ? Family::hypergeometric : Family::multinomial;
    const ResolvedParams resolved = resolve_params(fam, d, params);
    ScanSpec spec;
    spec.ell = ell;
    spec.chain = fam == Family::multinomial
                     ? ChainSpec::multinomial_rationals(n, resolved.p)
                     : ChainSpec::hypergeometric(n, resolved.m);
    return spec;
}

py::dict interval_dict(const Interval<double>& iv)
{
    py::dict out;
    out["lo"] = iv.lo;
    out["hi"] = iv.hi;
    out["lo_hex"] = fp::format_hex(iv.lo);
    out["hi_hex"] = fp::format_hex(iv.hi);
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Certified bounds for rectangle and scan probabilities of Markov increments";

    m.def("rounding_mode", [] {
        return fp::active_mode() == fp::Mode::strong ? "strong" : "fallback";
    });

    m.def("add_up", [](double a, double b) { return fp::add_up(a, b).value; });
    m.def("add_down", [](double a, double b) { return fp::add_down(a, b).value; });
    m.def("sub_up", [](double a, double b) { return fp::sub_up(a, b).value; });
    m.def("sub_down", [](double a, double b) { return fp::sub_down(a, b).value; });
    m.def("mul_up", [](double a, double b) { return fp::mul_up(a, b).value; });
    m.def("mul_down", [](double a, double b) { return fp::mul_down(a, b).value; });
    m.def("div_up", [](double a, double b) { return fp::div_up(a, b).value; });
    m.def("div_down", [](double a, double b) { return fp::div_down(a, b).value; });

    m.def("format_hex", [](double x) { return fp::format_hex(x); });
    m.def("parse_hex", [](const std::string& s) { return fp::parse_hex64(s); });

    m.def(
        "scan_cdf",
        [](const std::string& family, std::int64_t n, std::int64_t d, std::uint32_t ell,
           std::int64_t t, const std::string& params) {
            return interval_dict(scan_cdf(build_scan_spec(family, n, d, ell, params), t));
        },
        py::arg("family"), py::arg("n"), py::arg("d"), py::arg("ell"), py::arg("t"),
        py::arg("params") = "uniform",
        "Certified interval for P(max window sum <= t)");

    m.def(
        "scan_tail",
        [](const std::string& family, std::int64_t n, std::int64_t d, std::uint32_t ell,
           std::int64_t t, const std::string& params) {
            return interval_dict(scan_tail(build_scan_spec(family, n, d, ell, params), t));
        },
        py::arg("family"), py::arg("n"), py::arg("d"), py::arg("ell"), py::arg("t"),
        py::arg("params") = "uniform",
        "Certified interval for P(max window sum >= t)");

    m.def(
        "binom_density",
        [](std::int64_t n, std::int64_t k, double p_lo, double p_hi, double q_lo, double q_hi) {
            return interval_dict(binom_density<double>({n, k, p_lo, p_hi, q_lo, q_hi}));
        },
        py::arg("n"), py::arg("k"), py::arg("p_lo"), py::arg("p_hi"), py::arg("q_lo"),
        py::arg("q_hi"));

    m.def(
        "hyper_density",
        [](std::int64_t n, std::int64_t r, std::int64_t b, std::int64_t k) {
            return interval_dict(hyper_density({n, r, b, k}));
        },
        py::arg("n"), py::arg("r"), py::arg("b"), py::arg("k"));

    m.def(
        "error_report",
        [](double lo, double hi) {
            const ErrorReport rep = build_error_report(lo, hi);
            py::dict out;
            out["e_abs"] = rep.e_abs_opt;
            out["e_abs_approximator"] = rep.e_abs_approximator;
            out["e_abs_display"] = rep.e_abs_display;
            out["e_rel"] = rep.e_rel_opt;
            out["e_rel_approximator"] = rep.e_rel_approximator;
            out["e_rel_display"] = rep.e_rel_display;
            out["approx"] = rep.approx;
            return out;
        },
        py::arg("lo"), py::arg("hi"));

    m.def("format_T", [](double a, double b) { return format_T(a, b); }, py::arg("a"),
          py::arg("b"));
    m.def("display_bound_3sig", [](double x) { return display_bound_3sig(x); }, py::arg("x"));

    m.def(
        "exact_scan_probability",
        [](const std::string& family, std::int64_t n, std::int64_t d, std::uint32_t ell,
           std::int64_t t, const std::string& params, long budget) {
            return rational_to_string(
                exact_scan_probability(build_oracle_spec(family, n, d, params), ell, t,
                                       Int(budget)));
        },
        py::arg("family"), py::arg("n"), py::arg("d"), py::arg("ell"), py::arg("t"),
        py::arg("params") = "uniform", py::arg("budget") = kDefaultOracleBudget,
        "Exact scan CDF as a reduced fraction string");

    m.def(
        "table",
        [](const std::string& family, std::int64_t n, std::int64_t d, std::uint32_t ell,
           std::int64_t t_lo, std::int64_t t_hi, const std::string& params, bool tail,
           unsigned threads) {
            RunConfig config;
            config.command = "table";
            config.family = family == "hypergeometric" ? Family::hypergeometric
                                                       : Family::multinomial;
            config.n = n;
            config.d = d;
            config.ell = ell;
            config.t_lo = t_lo;
            config.t_hi = t_hi;
            config.tail = tail;
            config.params = params;
            config.threads = threads;
            const Report report = run_scan_report(config);
            py::list rows;
            for (const TableRow& row : report.rows) {
                py::dict r;
                r["t"] = row.t;
                r["lo"] = row.iv.lo;
                r["hi"] = row.iv.hi;
                r["lo_hex"] = row.lo_hex;
                r["hi_hex"] = row.hi_hex;
                r["e_abs"] = row.err.e_abs_display;
                r["e_rel"] = row.err.e_rel_display;
                r["approx"] = row.err.approx;
                rows.append(r);
            }
            return rows;
        },
        py::arg("family"), py::arg("n"), py::arg("d"), py::arg("ell"), py::arg("t_lo"),
        py::arg("t_hi"), py::arg("params") = "uniform", py::arg("tail") = false,
        py::arg("threads") = 0);
}
