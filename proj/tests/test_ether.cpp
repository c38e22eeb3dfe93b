#include <doctest.h>

#include <cmath>

#include "capplan/errors.hpp"
#include "capplan/ether.hpp"

using namespace capplan;

namespace {
const LinkRate gig{1e9};
const LinkRate tengig{1e10};
} // namespace

TEST_CASE("frame physical size") {
    CHECK(frame_physical_size(46, 0) == 84);
    CHECK(frame_physical_size(1500, 0) == 1538);
    CHECK(frame_physical_size(9000, 0, true) == 9038);
    CHECK(frame_physical_size(1500, 1) == 1542); // one 802.1Q tag
    CHECK(frame_physical_size(46, 2) == 92);
}

TEST_CASE("frame physical size domain errors") {
    CHECK_THROWS_WITH_AS(frame_physical_size(45, 0), doctest::Contains("payload_undersized"),
                         DomainError);
    CHECK_THROWS_WITH_AS(frame_physical_size(1501, 0), doctest::Contains("payload_jumbo"),
                         DomainError);
    CHECK_THROWS_WITH_AS(frame_physical_size(9001, 0, true),
                         doctest::Contains("payload_oversized"), DomainError);
    CHECK_THROWS_AS(frame_physical_size(46, 3), DomainError);
    CHECK(frame_physical_size(1501, 0, true) == 1539);
}

TEST_CASE("max frame rates reproduce the Gigabit and 10 Gigabit tables") {
    CHECK(max_frames_per_second(gig, 46, 0).per_second == 1488095);
    CHECK(max_frames_per_second(gig, 1500, 0).per_second == 81274);
    CHECK(max_frames_per_second(tengig, 46, 0).per_second == 14880952);
    CHECK(max_frames_per_second(tengig, 1500, 0).per_second == 812743);
}

TEST_CASE("gigabit goodput, with and without CRC") {
    CHECK(std::fabs(ethernet_goodput(gig, 46, 0, true) - 762e6) < 1e6);
    CHECK(std::fabs(ethernet_goodput(gig, 46, 0, false) - 714e6) < 1e6);
    CHECK(std::fabs(ethernet_goodput(gig, 1500, 0, true) - 987e6) < 1e6);
    CHECK(std::fabs(ethernet_goodput(gig, 1500, 0, false) - 984e6) < 1e6);
}

TEST_CASE("10 gigabit goodput") {
    CHECK(std::fabs(ethernet_goodput(tengig, 46, 0, true) - 7.62e9) < 0.01e9);
    CHECK(std::fabs(ethernet_goodput(tengig, 46, 0, false) - 7.14e9) < 0.01e9);
    CHECK(std::fabs(ethernet_goodput(tengig, 1500, 0, true) - 9.87e9) < 0.01e9);
    CHECK(std::fabs(ethernet_goodput(tengig, 1500, 0, false) - 9.84e9) < 0.01e9);
}

TEST_CASE("frame rate is linear in the link rate, within flooring") {
    for (std::uint32_t payload : {46u, 100u, 512u, 1500u}) {
        const auto single = max_frames_per_second(LinkRate{5e8}, payload, 0);
        const auto doubled = max_frames_per_second(LinkRate{1e9}, payload, 0);
        CHECK(doubled.exact == doctest::Approx(2.0 * single.exact).epsilon(1e-12));
        CHECK(doubled.per_second >= 2 * single.per_second);
        CHECK(doubled.per_second <= 2 * single.per_second + 1);
    }
}

TEST_CASE("goodput is strictly below the link rate and matches the efficiency bound") {
    for (std::uint32_t payload = 46; payload <= 1500; payload += 31) {
        CHECK(ethernet_goodput(gig, payload, 0, true) < gig.bps);
        CHECK(ethernet_goodput(gig, payload, 0, false) < gig.bps);
        // Counting payload bytes only, efficiency is payload/(payload+38).
        const FrameRate fr = max_frames_per_second(gig, payload, 0);
        const double payload_ratio = fr.exact * 8.0 * payload / gig.bps;
        CHECK(payload_ratio ==
              doctest::Approx(payload / (payload + 38.0)).epsilon(1e-12));
    }
}

TEST_CASE("goodput increases with payload") {
    double prev = 0.0;
    for (std::uint32_t payload = 46; payload <= 1500; payload += 7) {
        const double g = ethernet_goodput(gig, payload, 0, true);
        CHECK(g > prev);
        prev = g;
    }
}

TEST_CASE("vlan tags count toward goodput bytes and frame size") {
    const FrameRate untagged = max_frames_per_second(gig, 1500, 0);
    const FrameRate tagged = max_frames_per_second(gig, 1500, 1);
    CHECK(tagged.exact < untagged.exact); // four extra bytes per frame
    CHECK(ethernet_goodput(gig, 1500, 1, true) ==
          doctest::Approx(tagged.exact * 8.0 * (1500 + 18 + 4)).epsilon(1e-12));
}

TEST_CASE("link rate must be positive") {
    CHECK_THROWS_AS(max_frames_per_second(LinkRate{0.0}, 46, 0), DomainError);
    CHECK_THROWS_AS(max_frames_per_second(LinkRate{-1e9}, 46, 0), DomainError);
}
