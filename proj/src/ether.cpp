#include "capplan/ether.hpp"

#include <cmath>

#include "capplan/errors.hpp"

namespace capplan {

void LinkRate::validate() const {
    if (!(bps > 0) || !std::isfinite(bps))
        throw DomainError("link_rate_nonpositive", "link rate must be > 0 bits/s");
}

std::uint32_t frame_physical_size(std::uint32_t payload, std::uint32_t vlan_tags,
                                  bool jumbo) {
    if (payload < frame::min_payload)
        throw DomainError("payload_undersized", "payload below 46 bytes");
    if (payload > frame::max_jumbo_payload)
        throw DomainError("payload_oversized", "payload above 9000 bytes");
    if (payload > frame::max_payload && !jumbo)
        throw DomainError("payload_jumbo", "payload above 1500 bytes requires the jumbo flag");
    if (vlan_tags > 2)
        throw DomainError("vlan_tags_range", "at most two 802.1Q tags");
    return payload + frame::overhead + frame::vlan_tag * vlan_tags;
}

FrameRate max_frames_per_second(const LinkRate& link, std::uint32_t payload,
                                std::uint32_t vlan_tags, bool jumbo) {
    link.validate();
    const std::uint32_t size = frame_physical_size(payload, vlan_tags, jumbo);
    FrameRate fr;
    fr.exact = link.bps / (8.0 * size);
    fr.per_second = static_cast<std::uint64_t>(fr.exact);
    return fr;
}

double ethernet_goodput(const LinkRate& link, std::uint32_t payload,
                        std::uint32_t vlan_tags, bool include_crc, bool jumbo) {
    const FrameRate fr = max_frames_per_second(link, payload, vlan_tags, jumbo);
    std::uint32_t counted = payload + frame::counted_header + frame::vlan_tag * vlan_tags;
    if (include_crc)
        counted += frame::crc;
    return fr.exact * 8.0 * counted;
}

} // namespace capplan
