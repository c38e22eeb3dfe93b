#include "capplan/format.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "capplan/errors.hpp"

namespace capplan {

std::string group_thousands(std::uint64_t value) {
    std::string digits = std::to_string(value);
    std::string out;
    out.reserve(digits.size() + digits.size() / 3);
    const std::size_t lead = digits.size() % 3 == 0 ? 3 : digits.size() % 3;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i != 0 && (i - lead) % 3 == 0 && i >= lead)
            out.push_back(',');
        out.push_back(digits[i]);
    }
    return out;
}

std::string group_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, std::fabs(value));
    std::string text = buf;
    const std::size_t dot = text.find('.');
    const std::uint64_t whole = std::strtoull(text.substr(0, dot).c_str(), nullptr, 10);
    std::string out = value < 0 ? "-" : "";
    out += group_thousands(whole);
    if (dot != std::string::npos)
        out += text.substr(dot);
    return out;
}

std::string format_rate(double bps) {
    char buf[64];
    if (std::fabs(bps) >= 1e9) {
        std::snprintf(buf, sizeof(buf), "%.2f Gbit/s", bps / 1e9);
        return buf;
    }
    if (std::fabs(bps) >= 1e6) {
        std::snprintf(buf, sizeof(buf), "%.2f Mbit/s", bps / 1e6);
        return buf;
    }
    return group_fixed(bps, 2) + " bit/s";
}

double parse_number(const std::string& text) {
    if (text.empty())
        throw DomainError("number_empty", "expected a number");
    double scale = 1.0;
    std::string body = text;
    switch (std::tolower(static_cast<unsigned char>(body.back()))) {
    case 'k': scale = 1e3; body.pop_back(); break;
    case 'm': scale = 1e6; body.pop_back(); break;
    case 'g': scale = 1e9; body.pop_back(); break;
    case 't': scale = 1e12; body.pop_back(); break;
    default: break;
    }
    if (body.empty())
        throw DomainError("number_malformed", "no digits in \"" + text + "\"");
    char* end = nullptr;
    const double value = std::strtod(body.c_str(), &end);
    if (end != body.c_str() + body.size() || !std::isfinite(value))
        throw DomainError("number_malformed", "cannot parse \"" + text + "\" as a number");
    return value * scale;
}

std::uint64_t parse_count(const std::string& text) {
    const double v = parse_number(text);
    if (v < 0 || v > 9.007199254740992e15 || v != std::floor(v))
        throw DomainError("count_not_integral",
                          "\"" + text + "\" is not a non-negative integer");
    return static_cast<std::uint64_t>(v);
}

} // namespace capplan
