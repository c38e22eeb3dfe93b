#include "capplan/transport.hpp"

#include <cmath>

#include "capplan/errors.hpp"

namespace capplan {

std::uint32_t TransportSpec::application_bytes(std::uint32_t payload) const {
    const std::uint32_t headers =
        protocol == Protocol::tcp ? ipv4_header + tcp_header + tcp_options
                                  : ipv4_header + udp_header;
    if (payload < headers)
        throw DomainError("headers_exceed_payload",
                          "transport headers do not fit in the Ethernet payload");
    return payload - headers;
}

double transport_goodput(const LinkRate& link, std::uint32_t payload,
                         const TransportSpec& spec, std::uint32_t vlan_tags,
                         bool jumbo) {
    const FrameRate fr = max_frames_per_second(link, payload, vlan_tags, jumbo);
    return fr.exact * spec.application_bytes(payload) * 8.0;
}

double window_throughput(double window_bytes, double rtt_s) {
    if (!(rtt_s > 0) || !std::isfinite(rtt_s))
        throw DomainError("rtt_nonpositive", "RTT must be > 0 s");
    if (window_bytes < 0 || !std::isfinite(window_bytes))
        throw DomainError("window_negative", "window must be >= 0 bytes");
    return 8.0 * window_bytes / rtt_s;
}

double mathis_window(double loss_p) {
    if (!(loss_p > 0) || !(loss_p < 1))
        throw DomainError("loss_range", "loss probability must lie in (0, 1)");
    return std::sqrt(8.0 / (3.0 * loss_p));
}

double mathis_throughput(const PathModel& path) {
    if (path.mss == 0)
        throw DomainError("mss_nonpositive", "MSS must be > 0 bytes");
    if (!(path.rtt_s > 0) || !std::isfinite(path.rtt_s))
        throw DomainError("rtt_nonpositive", "RTT must be > 0 s");
    if (!(path.loss_p > 0) || !(path.loss_p < 1))
        throw DomainError("loss_range", "loss probability must lie in (0, 1)");
    return 8.0 * path.mss * std::sqrt(1.5) / (path.rtt_s * std::sqrt(path.loss_p));
}

} // namespace capplan
