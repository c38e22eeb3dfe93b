#ifndef CAPPLAN_ETHER_HPP
#define CAPPLAN_ETHER_HPP

#include <cstdint>

namespace capplan {

// Ethernet frame anatomy, in bytes on the wire.
namespace frame {
inline constexpr std::uint32_t ifg = 12;          // inter frame gap, counted as byte times
inline constexpr std::uint32_t preamble_sfd = 8;
inline constexpr std::uint32_t dst_mac = 6;
inline constexpr std::uint32_t src_mac = 6;
inline constexpr std::uint32_t ethertype = 2;
inline constexpr std::uint32_t crc = 4;
inline constexpr std::uint32_t vlan_tag = 4;      // one 802.1Q tag
inline constexpr std::uint32_t min_payload = 46;
inline constexpr std::uint32_t max_payload = 1500;
inline constexpr std::uint32_t max_jumbo_payload = 9000; // total 9038 untagged

// Everything around the payload: 12 + 8 + 6 + 6 + 2 + 4 = 38.
inline constexpr std::uint32_t overhead =
    ifg + preamble_sfd + dst_mac + src_mac + ethertype + crc;

// Header bytes that count toward goodput (addresses + ethertype): 14.
inline constexpr std::uint32_t counted_header = dst_mac + src_mac + ethertype;
} // namespace frame

struct LinkRate {
    double bps = 0.0;

    void validate() const;
};

struct FrameRate {
    std::uint64_t per_second = 0; // floored, as displayed
    double exact = 0.0;           // unfloored, feeds goodput chaining
};

// Wire footprint of one frame: payload + 38 + 4 per VLAN tag.
// Payloads in (1500, 9000] require the jumbo flag.
std::uint32_t frame_physical_size(std::uint32_t payload, std::uint32_t vlan_tags,
                                  bool jumbo = false);

// rate / (8 * physical size).
FrameRate max_frames_per_second(const LinkRate& link, std::uint32_t payload,
                                std::uint32_t vlan_tags, bool jumbo = false);

// Frame-level goodput: IFG and preamble never count; CRC is optional.
// Counted bytes per frame = payload + header (+ tags) [+ CRC].
double ethernet_goodput(const LinkRate& link, std::uint32_t payload,
                        std::uint32_t vlan_tags, bool include_crc, bool jumbo = false);

} // namespace capplan

#endif
