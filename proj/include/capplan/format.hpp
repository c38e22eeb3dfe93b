#ifndef CAPPLAN_FORMAT_HPP
#define CAPPLAN_FORMAT_HPP

#include <cstdint>
#include <string>

namespace capplan {

// "57.44 Mbit/s", "7.62 Gbit/s", "288,675.13 bit/s". Two decimals, unit
// picked by magnitude.
std::string format_rate(double bps);

// "1,488,095"
std::string group_thousands(std::uint64_t value);

// Fixed decimals with thousands grouping: "288,675.13".
std::string group_fixed(double value, int decimals);

// Parses "1e9", "1.5M", "100k", "10G", "2T" (suffixes are decimal,
// case-insensitive). Throws DomainError on malformed input.
double parse_number(const std::string& text);

// parse_number + integrality and range checks.
std::uint64_t parse_count(const std::string& text);

} // namespace capplan

#endif
