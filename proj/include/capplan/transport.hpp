#ifndef CAPPLAN_TRANSPORT_HPP
#define CAPPLAN_TRANSPORT_HPP

#include <cstdint>

#include "capplan/ether.hpp"

namespace capplan {

enum class Protocol { tcp, udp };

// Encapsulation overhead inside the Ethernet payload.
struct TransportSpec {
    Protocol protocol = Protocol::tcp;
    std::uint32_t tcp_options = 0; // 12 when timestamps are enabled

    static constexpr std::uint32_t ipv4_header = 20;
    static constexpr std::uint32_t tcp_header = 20;
    static constexpr std::uint32_t udp_header = 8;

    static TransportSpec tcp_plain() { return {Protocol::tcp, 0}; }
    static TransportSpec tcp_timestamps() { return {Protocol::tcp, 12}; }
    static TransportSpec udp() { return {Protocol::udp, 0}; }

    // Application bytes carried in an Ethernet payload of the given size.
    std::uint32_t application_bytes(std::uint32_t payload) const;
};

// Path characteristics for window- and loss-based throughput models.
struct PathModel {
    std::uint32_t mss = 1460;  // bytes, > 0
    double rtt_s = 0.1;        // > 0
    double loss_p = 0.01;      // in (0, 1)
    double window_bytes = 0.0; // >= 0
};

// Application-level goodput: frames/s (unfloored) * application bytes * 8.
double transport_goodput(const LinkRate& link, std::uint32_t payload,
                         const TransportSpec& spec, std::uint32_t vlan_tags = 0,
                         bool jumbo = false);

// Window-limited TCP throughput: 8 * window / RTT.
double window_throughput(double window_bytes, double rtt_s);

// Peak congestion window, in segments, sustainable at loss rate p:
// W = sqrt(8 / (3 p)).
double mathis_window(double loss_p);

// Loss-based steady-state throughput:
// 8 * MSS * sqrt(3/2) / (RTT * sqrt(p)), sqrt(3/2) at full precision.
double mathis_throughput(const PathModel& path);

} // namespace capplan

#endif
