#include "capplan/fabric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "capplan/errors.hpp"

namespace capplan {

const char* tier_name(Tier t) {
    switch (t) {
    case Tier::host: return "host";
    case Tier::access: return "access";
    case Tier::server_access: return "server-access";
    case Tier::leaf: return "leaf";
    case Tier::distribution: return "distribution";
    case Tier::spine: return "spine";
    case Tier::core: return "core";
    }
    return "?";
}

std::optional<Tier> tier_from_name(const std::string& name) {
    if (name == "host") return Tier::host;
    if (name == "access") return Tier::access;
    if (name == "server-access") return Tier::server_access;
    if (name == "leaf") return Tier::leaf;
    if (name == "distribution") return Tier::distribution;
    if (name == "spine") return Tier::spine;
    if (name == "core") return Tier::core;
    return std::nullopt;
}

int tier_rank(Tier t) {
    switch (t) {
    case Tier::host: return 0;
    case Tier::access:
    case Tier::server_access:
    case Tier::leaf: return 1;
    case Tier::distribution:
    case Tier::spine: return 2;
    case Tier::core: return 3;
    }
    return 0;
}

void ClosParams::validate() const {
    if (inputs_per_ingress == 0 || edge_switches == 0 || middle_switches == 0 ||
        uplink_bps == 0 || downlink_bps == 0)
        throw DomainError("clos_params", "all Clos parameters must be positive");
}

void Topology::validate() const {
    std::set<std::string> ids;
    for (const TopologyNode& n : nodes) {
        if (n.id.empty())
            throw DomainError("node_id_empty", "node id must be non-empty");
        if (!ids.insert(n.id).second)
            throw DomainError("node_id_duplicate", "duplicate node id: " + n.id);
    }
    for (const TopologyLink& l : links) {
        if (!ids.count(l.from))
            throw DomainError("link_endpoint", "unknown node id: " + l.from);
        if (!ids.count(l.to))
            throw DomainError("link_endpoint", "unknown node id: " + l.to);
        if (l.bps == 0)
            throw DomainError("link_bps", "link bps must be > 0");
        if (l.count == 0)
            throw DomainError("link_count", "link count must be >= 1");
    }
    if (clos)
        clos->validate();
}

std::optional<Ratio> FabricPolicy::threshold(Tier lower, Tier upper) const {
    if (lower == Tier::access && upper == Tier::distribution) return access_distribution;
    if (lower == Tier::distribution && upper == Tier::core) return distribution_core;
    if (lower == Tier::server_access && upper == Tier::core) return server_core;
    if (lower == Tier::leaf && upper == Tier::spine) return leaf_spine;
    return std::nullopt;
}

double oversubscription_ratio(double downstream_bps, double upstream_bps) {
    if (!(upstream_bps > 0))
        throw DomainError("upstream_zero", "upstream aggregate must be > 0 (orphaned tier)");
    if (downstream_bps < 0 || !std::isfinite(downstream_bps))
        throw DomainError("downstream_negative", "downstream aggregate must be >= 0");
    return downstream_bps / upstream_bps;
}

namespace {

std::uint64_t group_capacity(std::uint64_t bps, std::uint64_t count) {
    const unsigned __int128 total = static_cast<unsigned __int128>(bps) * count;
    if (total > UINT64_MAX)
        throw DomainError("capacity_overflow", "aggregate link capacity exceeds 2^64-1 bits/s");
    return static_cast<std::uint64_t>(total);
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > UINT64_MAX - b)
        throw DomainError("capacity_overflow", "aggregate link capacity exceeds 2^64-1 bits/s");
    return a + b;
}

} // namespace

AuditReport audit(const Topology& topology, const FabricPolicy& policy) {
    topology.validate();

    std::map<std::string, Tier> tier_of;
    for (const TopologyNode& n : topology.nodes)
        tier_of[n.id] = n.tier;

    // Per node: total capacity toward lower ranks, and per-tier capacity
    // toward higher ranks. Same-rank links are outside the audit.
    std::map<std::string, std::uint64_t> down;
    std::map<std::string, std::map<Tier, std::uint64_t>> up;
    for (const TopologyLink& l : topology.links) {
        const Tier ft = tier_of[l.from];
        const Tier tt = tier_of[l.to];
        if (tier_rank(ft) == tier_rank(tt))
            continue;
        const std::string& lower = tier_rank(ft) < tier_rank(tt) ? l.from : l.to;
        const std::string& upper = tier_rank(ft) < tier_rank(tt) ? l.to : l.from;
        const std::uint64_t cap = group_capacity(l.bps, l.count);
        down[upper] = checked_add(down[upper], cap);
        auto& per_tier = up[lower][tier_of[upper]];
        per_tier = checked_add(per_tier, cap);
    }

    AuditReport report;
    for (const TopologyNode& n : topology.nodes) {
        const auto d = down.find(n.id);
        const auto u = up.find(n.id);
        const std::uint64_t down_bps = d == down.end() ? 0 : d->second;
        if (u == up.end() || u->second.empty()) {
            if (down_bps > 0 && tier_rank(n.tier) < tier_rank(Tier::core) &&
                n.tier != Tier::spine)
                report.flags.push_back("node " + n.id +
                                       " has downstream capacity but no uplinks");
            continue;
        }
        if (down_bps == 0)
            continue; // leaf-most node of its branch; audited from above
        for (const auto& [up_tier, up_bps] : u->second) {
            RatioCheck check;
            check.node = n.id;
            check.node_tier = n.tier;
            check.upstream_tier = up_tier;
            check.downstream_bps = down_bps;
            check.upstream_bps = up_bps;
            check.ratio = oversubscription_ratio(static_cast<double>(down_bps),
                                                 static_cast<double>(up_bps));
            check.threshold = policy.threshold(n.tier, up_tier);
            if (!check.threshold) {
                report.flags.push_back("no policy threshold for " +
                                       std::string(tier_name(n.tier)) + "->" +
                                       tier_name(up_tier) + " at node " + n.id);
                check.verdict = GroupVerdict::ok;
            } else if (ratio_le(down_bps, up_bps, *check.threshold)) {
                check.verdict = GroupVerdict::ok;
            } else {
                check.verdict = GroupVerdict::violation;
                ++report.violations;
            }
            report.groups.push_back(std::move(check));
        }
    }

    if (topology.clos)
        report.clos = clos_nonblocking(*topology.clos, policy.leaf_spine);
    return report;
}

const char* clos_verdict_name(ClosVerdict v) {
    switch (v) {
    case ClosVerdict::non_blocking: return "non-blocking";
    case ClosVerdict::acceptable_oversubscribed: return "acceptable-oversubscribed";
    case ClosVerdict::blocking: return "blocking";
    }
    return "?";
}

ClosCheck clos_nonblocking(const ClosParams& params, const Ratio& planning_ratio) {
    params.validate();
    const unsigned __int128 up =
        static_cast<unsigned __int128>(params.uplink_bps) * params.middle_switches;
    const unsigned __int128 dn =
        static_cast<unsigned __int128>(params.downlink_bps) * params.inputs_per_ingress;

    ClosCheck check;
    check.strict_sense = params.middle_switches >= 2 * params.inputs_per_ingress - 1;
    if (up >= dn)
        check.verdict = ClosVerdict::non_blocking;
    else if (up * planning_ratio.num >= dn * planning_ratio.den)
        check.verdict = ClosVerdict::acceptable_oversubscribed;
    else
        check.verdict = ClosVerdict::blocking;
    return check;
}

namespace {

// n*r <= 12 connections, k <= 31 middles: per-switch middle usage fits a
// 32-bit mask and everything lives on the stack.
struct RouteSearch {
    std::uint32_t total = 0;
    std::uint32_t middles = 0;
    std::uint8_t ingress_of[12] = {};
    std::uint8_t egress_of[12] = {};
    std::uint32_t in_used[12] = {};
    std::uint32_t out_used[12] = {};
    std::uint32_t assignment[12] = {};
    std::uint32_t deepest = 0;

    bool assign(std::uint32_t c) {
        if (c == total)
            return true;
        deepest = std::max(deepest, c);
        for (std::uint32_t m = 0; m < middles; ++m) {
            const std::uint32_t bit = 1u << m;
            if ((in_used[ingress_of[c]] & bit) || (out_used[egress_of[c]] & bit))
                continue;
            in_used[ingress_of[c]] |= bit;
            out_used[egress_of[c]] |= bit;
            assignment[c] = m;
            if (assign(c + 1))
                return true;
            in_used[ingress_of[c]] &= ~bit;
            out_used[egress_of[c]] &= ~bit;
        }
        return false;
    }
};

} // namespace

RouteResult route_permutation(std::uint32_t inputs_per_ingress, std::uint32_t edge_switches,
                              std::uint32_t middle_switches,
                              const std::vector<std::uint32_t>& mapping) {
    if (inputs_per_ingress == 0 || edge_switches == 0 || middle_switches == 0)
        throw DomainError("clos_params", "all Clos parameters must be positive");
    const std::uint64_t total =
        static_cast<std::uint64_t>(inputs_per_ingress) * edge_switches;
    if (total > 12)
        throw DomainError("clos_oracle_scale", "exhaustive search is limited to n*r <= 12");
    if (middle_switches > 31)
        throw DomainError("clos_oracle_scale", "middle stage limited to 31 switches");
    if (mapping.size() != total)
        throw DomainError("mapping_not_bijective", "mapping size must equal n*r");
    std::vector<bool> seen(total, false);
    for (std::uint32_t out : mapping) {
        if (out >= total || seen[out])
            throw DomainError("mapping_not_bijective",
                              "mapping must be a permutation of the n*r outputs");
        seen[out] = true;
    }

    RouteSearch search;
    search.total = static_cast<std::uint32_t>(total);
    search.middles = middle_switches;
    for (std::uint32_t c = 0; c < total; ++c) {
        search.ingress_of[c] = static_cast<std::uint8_t>(c / inputs_per_ingress);
        search.egress_of[c] = static_cast<std::uint8_t>(mapping[c] / inputs_per_ingress);
    }

    RouteResult result;
    if (search.assign(0)) {
        result.feasible = true;
        result.middle_for_connection.assign(search.assignment, search.assignment + total);
    } else {
        result.feasible = false;
        result.blocked_connection = search.deepest;
    }
    return result;
}

namespace {

using json = nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key))
            throw DomainError("unknown_key", "unexpected key \"" + key + "\" in " + where);
    }
}

std::uint64_t integral_u64(const json& v, const std::string& where) {
    if (v.is_number_unsigned())
        return v.get<std::uint64_t>();
    if (v.is_number_integer()) {
        const std::int64_t s = v.get<std::int64_t>();
        if (s < 0)
            throw DomainError("value_negative", where + " must be >= 0");
        return static_cast<std::uint64_t>(s);
    }
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d < 0 || d > 9.007199254740992e15 || d != std::floor(d))
            throw DomainError("value_not_integral", where + " must be a non-negative integer");
        return static_cast<std::uint64_t>(d);
    }
    throw DomainError("value_not_numeric", where + " must be a number");
}

json parse_json(const std::string& text, const char* what) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded())
        throw DomainError("bad_json", std::string("cannot parse ") + what);
    if (!doc.is_object())
        throw DomainError("bad_json", std::string(what) + " must be a JSON object");
    return doc;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DomainError("file_open", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

Topology parse_topology(const std::string& json_text) {
    const json doc = parse_json(json_text, "topology");
    reject_unknown_keys(doc, {"nodes", "links", "clos"}, "topology");

    Topology topo;
    if (!doc.contains("nodes") || !doc["nodes"].is_array())
        throw DomainError("bad_topology", "topology requires a \"nodes\" array");
    for (const json& jn : doc["nodes"]) {
        if (!jn.is_object())
            throw DomainError("bad_topology", "node entries must be objects");
        reject_unknown_keys(jn, {"id", "tier"}, "node");
        if (!jn.contains("id") || !jn["id"].is_string())
            throw DomainError("bad_topology", "node requires a string \"id\"");
        if (!jn.contains("tier") || !jn["tier"].is_string())
            throw DomainError("bad_topology", "node requires a string \"tier\"");
        const auto tier = tier_from_name(jn["tier"].get<std::string>());
        if (!tier)
            throw DomainError("unknown_tier",
                              "unknown tier \"" + jn["tier"].get<std::string>() + "\"");
        topo.nodes.push_back({jn["id"].get<std::string>(), *tier});
    }

    if (doc.contains("links")) {
        if (!doc["links"].is_array())
            throw DomainError("bad_topology", "\"links\" must be an array");
        for (const json& jl : doc["links"]) {
            if (!jl.is_object())
                throw DomainError("bad_topology", "link entries must be objects");
            reject_unknown_keys(jl, {"from", "to", "bps", "count"}, "link");
            if (!jl.contains("from") || !jl["from"].is_string() || !jl.contains("to") ||
                !jl["to"].is_string())
                throw DomainError("bad_topology", "link requires string \"from\" and \"to\"");
            if (!jl.contains("bps"))
                throw DomainError("bad_topology", "link requires \"bps\"");
            TopologyLink link;
            link.from = jl["from"].get<std::string>();
            link.to = jl["to"].get<std::string>();
            link.bps = integral_u64(jl["bps"], "link bps");
            link.count = jl.contains("count") ? integral_u64(jl["count"], "link count") : 1;
            topo.links.push_back(std::move(link));
        }
    }

    if (doc.contains("clos")) {
        const json& jc = doc["clos"];
        if (!jc.is_object())
            throw DomainError("bad_topology", "\"clos\" must be an object");
        reject_unknown_keys(jc, {"n", "r", "k", "uplink_bps", "downlink_bps"}, "clos");
        if (!jc.contains("n") || !jc.contains("k"))
            throw DomainError("bad_topology", "clos requires \"n\" and \"k\"");
        ClosParams params;
        params.inputs_per_ingress = integral_u64(jc["n"], "clos n");
        params.middle_switches = integral_u64(jc["k"], "clos k");
        params.edge_switches = jc.contains("r") ? integral_u64(jc["r"], "clos r") : 1;
        params.uplink_bps =
            jc.contains("uplink_bps") ? integral_u64(jc["uplink_bps"], "clos uplink_bps") : 1;
        params.downlink_bps = jc.contains("downlink_bps")
                                  ? integral_u64(jc["downlink_bps"], "clos downlink_bps")
                                  : 1;
        topo.clos = params;
    }

    topo.validate();
    return topo;
}

FabricPolicy parse_policy(const std::string& json_text) {
    const json doc = parse_json(json_text, "policy");
    reject_unknown_keys(
        doc, {"access_distribution", "distribution_core", "server_core", "leaf_spine"},
        "policy");

    FabricPolicy policy;
    auto load = [&doc](const char* key, Ratio& slot) {
        if (!doc.contains(key))
            return;
        const json& v = doc[key];
        if (!v.is_number())
            throw DomainError("bad_policy", std::string(key) + " must be a number");
        const double d = v.get<double>();
        if (!(d > 0))
            throw DomainError("bad_policy", std::string(key) + " must be > 0");
        slot = Ratio::from_double(d);
    };
    load("access_distribution", policy.access_distribution);
    load("distribution_core", policy.distribution_core);
    load("server_core", policy.server_core);
    load("leaf_spine", policy.leaf_spine);
    return policy;
}

Topology load_topology(const std::string& path) { return parse_topology(read_file(path)); }

FabricPolicy load_policy(const std::string& path) { return parse_policy(read_file(path)); }

} // namespace capplan
