"""Certified bounds for rectangle and scan probabilities of Markov increments."""

from ._core import (
    add_up,
    add_down,
    sub_up,
    sub_down,
    mul_up,
    mul_down,
    div_up,
    div_down,
    binom_density,
    hyper_density,
    display_bound_3sig,
    error_report,
    exact_scan_probability,
    format_T,
    format_hex,
    parse_hex,
    rounding_mode,
    scan_cdf,
    scan_tail,
    table,
)

__all__ = [
    "add_up", "add_down", "sub_up", "sub_down",
    "mul_up", "mul_down", "div_up", "div_down",
    "binom_density", "hyper_density",
    "display_bound_3sig", "error_report", "exact_scan_probability",
    "format_T", "format_hex", "parse_hex",
    "rounding_mode", "scan_cdf", "scan_tail", "table",
]
