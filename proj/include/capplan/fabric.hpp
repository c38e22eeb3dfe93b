#ifndef CAPPLAN_FABRIC_HPP
#define CAPPLAN_FABRIC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "capplan/ratio.hpp"

namespace capplan {

// Tier taxonomy. `host` stands for endpoint-facing ports (servers, user
// devices) so edge switches can carry an auditable downstream side.
enum class Tier { host, access, server_access, leaf, distribution, spine, core };

const char* tier_name(Tier t);
std::optional<Tier> tier_from_name(const std::string& name);

// host < {access, server-access, leaf} < {distribution, spine} < core
int tier_rank(Tier t);

struct TopologyNode {
    std::string id;
    Tier tier = Tier::access;
};

struct TopologyLink {
    std::string from;
    std::string to;
    std::uint64_t bps = 0;   // per link
    std::uint64_t count = 1; // parallel links in the group
};

struct ClosParams {
    std::uint64_t inputs_per_ingress = 0; // n
    std::uint64_t edge_switches = 1;      // r
    std::uint64_t middle_switches = 0;    // k
    std::uint64_t uplink_bps = 1;         // i
    std::uint64_t downlink_bps = 1;       // j

    void validate() const;
};

struct Topology {
    std::vector<TopologyNode> nodes;
    std::vector<TopologyLink> links;
    std::optional<ClosParams> clos;

    void validate() const;
};

// Maximum allowed downstream:upstream ratio per tier pair.
struct FabricPolicy {
    Ratio access_distribution = Ratio::of(20, 1);
    Ratio distribution_core = Ratio::of(4, 1);
    Ratio server_core = Ratio::of(1, 1);
    Ratio leaf_spine = Ratio::of(3, 1);

    std::optional<Ratio> threshold(Tier lower, Tier upper) const;
};

// downstream / upstream aggregate capacity.
double oversubscription_ratio(double downstream_bps, double upstream_bps);

enum class GroupVerdict { ok, violation };

struct RatioCheck {
    std::string node;
    Tier node_tier = Tier::access;
    Tier upstream_tier = Tier::core;
    std::uint64_t downstream_bps = 0;
    std::uint64_t upstream_bps = 0;
    double ratio = 0.0;
    std::optional<Ratio> threshold; // absent when no policy covers the pair
    GroupVerdict verdict = GroupVerdict::ok;
};

enum class ClosVerdict { non_blocking, acceptable_oversubscribed, blocking };

const char* clos_verdict_name(ClosVerdict v);

struct ClosCheck {
    ClosVerdict verdict = ClosVerdict::blocking;
    bool strict_sense = false; // informational: k >= 2n - 1
};

struct AuditReport {
    std::vector<RatioCheck> groups;
    std::vector<std::string> flags; // non-fatal findings (orphaned tiers, ...)
    std::optional<ClosCheck> clos;
    std::uint64_t violations = 0;
};

// Checks every node's downstream:upstream aggregates against the policy.
// Links within a tier rank are ignored; a node with downstream capacity
// but no uplinks is flagged, not failed.
AuditReport audit(const Topology& topology, const FabricPolicy& policy);

// Non-blocking iff i*k >= j*n; acceptable iff i*k >= j*n / planning_ratio.
ClosCheck clos_nonblocking(const ClosParams& params,
                           const Ratio& planning_ratio = Ratio::of(3, 1));

struct RouteResult {
    bool feasible = false;
    std::vector<std::uint32_t> middle_for_connection; // set when feasible
    std::uint32_t blocked_connection = 0;             // witness when infeasible
};

// Assigns each input->output connection of a 3-stage Clos a middle switch
// such that no middle carries two connections sharing an ingress or an
// egress. Exhaustive backtracking; n*r is limited to 12.
RouteResult route_permutation(std::uint32_t inputs_per_ingress, std::uint32_t edge_switches,
                              std::uint32_t middle_switches,
                              const std::vector<std::uint32_t>& mapping);

// JSON file loaders for the CLI. Unknown keys are rejected.
Topology load_topology(const std::string& path);
FabricPolicy load_policy(const std::string& path);
Topology parse_topology(const std::string& json_text);
FabricPolicy parse_policy(const std::string& json_text);

} // namespace capplan

#endif
