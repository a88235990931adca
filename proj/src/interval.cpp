#include "rigscan/interval.hpp"

#include <charconv>

namespace rigscan {

namespace {

template <class T>
std::string shortest(T v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <class T>
std::string json_of(const Interval<T>& iv)
{
    std::string s = "{\"lo_hex\":\"";
    s += fp::format_hex(iv.lo);
    s += "\",\"hi_hex\":\"";
    s += fp::format_hex(iv.hi);
    s += "\",\"lo_dec\":";
    s += shortest(iv.lo);
    s += ",\"hi_dec\":";
    s += shortest(iv.hi);
    s += "}";
    return s;
}

} // namespace

std::string decimal_shortest(double v) { return shortest(v); }
std::string decimal_shortest(float v) { return shortest(v); }

std::string interval_json(const Interval<double>& iv) { return json_of(iv); }
std::string interval_json(const Interval<float>& iv) { return json_of(iv); }

} // namespace rigscan
