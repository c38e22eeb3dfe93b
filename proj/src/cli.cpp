#include "capplan/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "capplan/errors.hpp"
#include "capplan/ether.hpp"
#include "capplan/fabric.hpp"
#include "capplan/format.hpp"
#include "capplan/reno.hpp"
#include "capplan/stat_mux.hpp"
#include "capplan/traffic_sim.hpp"
#include "capplan/transport.hpp"

namespace capplan::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Figure {
    std::string key;
    ordered_json value; // unrounded
    std::string display;
};

Figure rate_figure(const std::string& key, double bps) {
    return {key, bps, format_rate(bps)};
}

Figure count_figure(const std::string& key, std::uint64_t v, const std::string& unit = "") {
    return {key, v, group_thousands(v) + unit};
}

Figure plain_figure(const std::string& key, double v, const char* fmt = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return {key, v, buf};
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += "\"\"";
        else
            out.push_back(c);
    }
    out += "\"";
    return out;
}

void render_figures(const std::string& command, const std::vector<Figure>& figures,
                    const ordered_json& inputs, const std::string& format,
                    std::ostream& out) {
    if (format == "json") {
        ordered_json doc;
        doc["command"] = command;
        doc["inputs"] = inputs;
        ordered_json results;
        for (const Figure& f : figures)
            results[f.key] = {{"value", f.value}, {"display", f.display}};
        doc["results"] = results;
        out << doc.dump(2) << '\n';
        return;
    }
    if (format == "csv") {
        out << "figure,value,display\n";
        for (const Figure& f : figures)
            out << f.key << ',' << f.value.dump() << ',' << csv_quote(f.display) << '\n';
        return;
    }
    std::size_t width = 0;
    for (const Figure& f : figures)
        width = std::max(width, f.key.size());
    for (const Figure& f : figures)
        out << std::left << std::setw(static_cast<int>(width) + 2) << f.key << f.display
            << '\n';
}

std::string add_format_option(CLI::App* cmd, std::string& slot) {
    cmd->add_option("--format", slot, "Output format: table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    return slot;
}

Sidedness sidedness_of(bool one_sided) {
    return one_sided ? Sidedness::one_sided : Sidedness::two_sided;
}

// ---- stat ------------------------------------------------------------

struct StatArgs {
    std::string sources, rate, epsilon = "0.01", trials, seed = "1";
    bool one_sided = false;
    std::string format = "table";
};

int run_stat(const StatArgs& a, std::ostream& out) {
    SourceModel model;
    model.sources = parse_count(a.sources);
    model.peak_rate_bps = parse_number(a.rate);
    const double eps = parse_number(a.epsilon);
    const QosSpec qos = QosSpec::make(eps, sidedness_of(a.one_sided));
    const CapacityEstimate est = stat_capacity(model, qos);

    ordered_json inputs;
    inputs["sources"] = model.sources;
    inputs["rate_bps"] = model.peak_rate_bps;
    inputs["epsilon"] = eps;
    inputs["convention"] = a.one_sided ? "one-sided" : "two-sided";

    std::vector<Figure> figures;
    figures.push_back(plain_figure("c_epsilon", qos.c_epsilon, "%.12g"));
    figures.push_back(rate_figure("c_max", est.c_max_bps));
    figures.push_back(rate_figure("c_mean", est.c_mean_bps));
    figures.push_back(rate_figure("s_max", est.s_max_bps));
    figures.push_back(rate_figure("c_stat", est.c_stat_bps));

    if (!a.trials.empty()) {
        SimRun sim;
        sim.model = model;
        sim.trials = parse_count(a.trials);
        sim.seed = parse_count(a.seed);
        sim.capacity_bps = est.c_stat_bps;
        const SimSummary s = run(sim);
        inputs["trials"] = sim.trials;
        inputs["seed"] = sim.seed;
        figures.push_back(plain_figure("exceedance_rate", s.exceedance_rate, "%.6g"));
        figures.push_back(rate_figure("sim_mean", s.mean_bps));
        figures.push_back(rate_figure("sim_stddev", s.stddev_bps));
        figures.push_back(rate_figure("sim_max", s.max_observed_bps));
    }
    render_figures("stat", figures, inputs, a.format, out);
    return 0;
}

// ---- frames ----------------------------------------------------------

struct FramesArgs {
    std::string link, payload, vlan = "0";
    bool jumbo = false;
    std::string format = "table";
};

int run_frames(const FramesArgs& a, std::ostream& out) {
    const LinkRate link{parse_number(a.link)};
    const std::uint32_t payload = static_cast<std::uint32_t>(parse_count(a.payload));
    const std::uint32_t vlan = static_cast<std::uint32_t>(parse_count(a.vlan));
    const std::uint32_t size = frame_physical_size(payload, vlan, a.jumbo);
    const FrameRate fr = max_frames_per_second(link, payload, vlan, a.jumbo);

    ordered_json inputs;
    inputs["link_bps"] = link.bps;
    inputs["payload_bytes"] = payload;
    inputs["vlan_tags"] = vlan;
    inputs["jumbo"] = a.jumbo;

    std::vector<Figure> figures;
    figures.push_back(count_figure("physical_size", size, " bytes"));
    figures.push_back(count_figure("frames_per_second", fr.per_second, " f/s"));
    figures.push_back({"frames_per_second_exact", fr.exact, group_fixed(fr.exact, 2) + " f/s"});
    render_figures("frames", figures, inputs, a.format, out);
    return 0;
}

// ---- goodput ---------------------------------------------------------

struct GoodputArgs {
    std::string link, payload, proto = "ethernet", tcp_options = "none", vlan = "0";
    bool no_crc = false;
    bool jumbo = false;
    std::string format = "table";
};

int run_goodput(const GoodputArgs& a, std::ostream& out) {
    const LinkRate link{parse_number(a.link)};
    const std::uint32_t payload = static_cast<std::uint32_t>(parse_count(a.payload));
    const std::uint32_t vlan = static_cast<std::uint32_t>(parse_count(a.vlan));

    ordered_json inputs;
    inputs["link_bps"] = link.bps;
    inputs["payload_bytes"] = payload;
    inputs["protocol"] = a.proto;
    inputs["vlan_tags"] = vlan;
    inputs["jumbo"] = a.jumbo;

    std::vector<Figure> figures;
    const FrameRate fr = max_frames_per_second(link, payload, vlan, a.jumbo);
    figures.push_back(count_figure("frames_per_second", fr.per_second, " f/s"));
    if (a.proto == "ethernet") {
        inputs["include_crc"] = !a.no_crc;
        figures.push_back(
            rate_figure("goodput", ethernet_goodput(link, payload, vlan, !a.no_crc, a.jumbo)));
    } else {
        TransportSpec spec;
        if (a.proto == "tcp") {
            if (a.tcp_options == "timestamps")
                spec = TransportSpec::tcp_timestamps();
            else if (a.tcp_options == "none")
                spec = TransportSpec::tcp_plain();
            else
                throw DomainError("tcp_options", "tcp options preset must be none or timestamps");
        } else {
            spec = TransportSpec::udp();
        }
        inputs["tcp_options_bytes"] = spec.protocol == Protocol::tcp ? spec.tcp_options : 0;
        figures.push_back(
            count_figure("application_bytes", spec.application_bytes(payload), " bytes"));
        figures.push_back(
            rate_figure("goodput", transport_goodput(link, payload, spec, vlan, a.jumbo)));
    }
    render_figures("goodput", figures, inputs, a.format, out);
    return 0;
}

// ---- mathis ----------------------------------------------------------

struct MathisArgs {
    std::string mss, rtt, loss;
    std::string format = "table";
};

int run_mathis(const MathisArgs& a, std::ostream& out) {
    PathModel path;
    path.mss = static_cast<std::uint32_t>(parse_count(a.mss));
    path.rtt_s = parse_number(a.rtt);
    path.loss_p = parse_number(a.loss);

    ordered_json inputs;
    inputs["mss_bytes"] = path.mss;
    inputs["rtt_s"] = path.rtt_s;
    inputs["loss_p"] = path.loss_p;

    std::vector<Figure> figures;
    figures.push_back(plain_figure("peak_window_segments", mathis_window(path.loss_p), "%.2f"));
    figures.push_back(rate_figure("throughput", mathis_throughput(path)));
    render_figures("mathis", figures, inputs, a.format, out);
    return 0;
}

// ---- tcp-sim ---------------------------------------------------------

struct TcpSimArgs {
    std::string smss = "1460", rtt = "0.1", loss = "0", rounds = "1000", seed = "1";
    std::string rwnd, bottleneck, trace_path;
    std::string format = "table";
};

int run_tcp_sim(const TcpSimArgs& a, std::ostream& out) {
    PathConfig config;
    config.smss = static_cast<double>(parse_count(a.smss));
    config.rtt_s = parse_number(a.rtt);
    config.loss_p = parse_number(a.loss);
    config.duration_rounds = parse_count(a.rounds);
    config.seed = parse_count(a.seed);
    if (!a.rwnd.empty())
        config.rwnd = parse_number(a.rwnd);
    if (!a.bottleneck.empty())
        config.bottleneck_bps = parse_number(a.bottleneck);

    const TraceSummary s = run(config);

    if (!a.trace_path.empty()) {
        std::ofstream f(a.trace_path);
        if (!f)
            throw DomainError("file_open", "cannot write " + a.trace_path);
        write_trace_csv(s, f);
    }

    ordered_json inputs;
    inputs["smss_bytes"] = config.smss;
    inputs["rtt_s"] = config.rtt_s;
    inputs["loss_p"] = config.loss_p;
    inputs["rounds"] = config.duration_rounds;
    inputs["seed"] = config.seed;
    inputs["rwnd_bytes"] = config.rwnd;
    inputs["bottleneck_bps"] = config.bottleneck_bps;

    std::vector<Figure> figures;
    figures.push_back(plain_figure("delivered_bytes", s.delivered_bytes, "%.10g"));
    figures.push_back(rate_figure("throughput", s.throughput_bps));
    figures.push_back(count_figure("segments_sent", s.segments_sent));
    figures.push_back(count_figure("segments_lost", s.segments_lost));
    figures.push_back(count_figure("retransmits", s.retransmits));
    figures.push_back(count_figure("timeouts", s.timeouts));
    render_figures("tcp-sim", figures, inputs, a.format, out);
    return 0;
}

// ---- fabric ----------------------------------------------------------

struct FabricArgs {
    std::string topology_path, policy_path;
    std::string format = "table";
};

std::string pair_name(const RatioCheck& c) {
    return std::string(tier_name(c.node_tier)) + "->" + tier_name(c.upstream_tier);
}

std::string ratio_display(double ratio) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f:1", ratio);
    return buf;
}

int run_fabric(const FabricArgs& a, std::ostream& out) {
    const Topology topo = load_topology(a.topology_path);
    const FabricPolicy policy =
        a.policy_path.empty() ? FabricPolicy{} : load_policy(a.policy_path);
    const AuditReport report = audit(topo, policy);

    if (a.format == "json") {
        ordered_json doc;
        doc["command"] = "fabric";
        ordered_json groups = ordered_json::array();
        for (const RatioCheck& c : report.groups) {
            ordered_json g;
            g["node"] = c.node;
            g["pair"] = pair_name(c);
            g["downstream"] = {{"value", c.downstream_bps},
                               {"display", format_rate(double(c.downstream_bps))}};
            g["upstream"] = {{"value", c.upstream_bps},
                             {"display", format_rate(double(c.upstream_bps))}};
            g["ratio"] = {{"value", c.ratio}, {"display", ratio_display(c.ratio)}};
            if (c.threshold)
                g["threshold"] = {{"value", c.threshold->as_double()},
                                  {"display", ratio_display(c.threshold->as_double())}};
            else
                g["threshold"] = nullptr;
            g["verdict"] = c.verdict == GroupVerdict::ok ? "ok" : "violation";
            groups.push_back(std::move(g));
        }
        doc["groups"] = groups;
        doc["flags"] = report.flags;
        if (report.clos) {
            doc["clos"] = {{"verdict", clos_verdict_name(report.clos->verdict)},
                           {"strict_sense", report.clos->strict_sense}};
        }
        doc["violations"] = report.violations;
        out << doc.dump(2) << '\n';
    } else if (a.format == "csv") {
        out << "node,pair,downstream,upstream,ratio,threshold,verdict\n";
        for (const RatioCheck& c : report.groups) {
            out << c.node << ',' << pair_name(c) << ',' << c.downstream_bps << ','
                << c.upstream_bps << ',' << ordered_json(c.ratio).dump() << ','
                << (c.threshold ? ordered_json(c.threshold->as_double()).dump() : "")
                << ',' << (c.verdict == GroupVerdict::ok ? "ok" : "violation") << '\n';
        }
    } else {
        for (const RatioCheck& c : report.groups) {
            out << c.node << "  " << pair_name(c) << "  " << format_rate(double(c.downstream_bps))
                << " : " << format_rate(double(c.upstream_bps)) << "  "
                << ratio_display(c.ratio) << "  (limit "
                << (c.threshold ? ratio_display(c.threshold->as_double()) : std::string("none"))
                << ")  " << (c.verdict == GroupVerdict::ok ? "ok" : "VIOLATION") << '\n';
        }
        for (const std::string& flag : report.flags)
            out << "note: " << flag << '\n';
        if (report.clos) {
            out << "clos: " << clos_verdict_name(report.clos->verdict)
                << (report.clos->strict_sense ? " (strict-sense)" : "") << '\n';
        }
        out << "violations: " << report.violations << '\n';
    }
    return report.violations > 0 ? 1 : 0;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Network capacity planning toolkit"};
    app.name("capplan");
    app.require_subcommand(1);

    StatArgs stat_args;
    CLI::App* stat_cmd =
        app.add_subcommand("stat", "Statistical over-subscription capacity of n on/off sources");
    stat_cmd->add_option("--sources,-n", stat_args.sources, "Number of sources")->required();
    stat_cmd->add_option("--rate,-r", stat_args.rate, "Peak rate per source, bits/s")->required();
    stat_cmd->add_option("--epsilon,-e", stat_args.epsilon, "Exceedance budget in (0,1]");
    stat_cmd->add_flag("--one-sided", stat_args.one_sided, "One-sided quantile convention");
    stat_cmd->add_option("--validate", stat_args.trials,
                         "Run the Monte Carlo validator with this many slots");
    stat_cmd->add_option("--seed", stat_args.seed, "Validator seed");
    add_format_option(stat_cmd, stat_args.format);

    FramesArgs frames_args;
    CLI::App* frames_cmd = app.add_subcommand("frames", "Ethernet frame rate arithmetic");
    frames_cmd->add_option("--link,-l", frames_args.link, "Link rate, bits/s")->required();
    frames_cmd->add_option("--payload,-p", frames_args.payload, "Payload bytes")->required();
    frames_cmd->add_option("--vlan", frames_args.vlan, "802.1Q tag count (0-2)");
    frames_cmd->add_flag("--jumbo", frames_args.jumbo, "Allow payloads up to 9000 bytes");
    add_format_option(frames_cmd, frames_args.format);

    GoodputArgs goodput_args;
    CLI::App* goodput_cmd =
        app.add_subcommand("goodput", "Ethernet / TCP / UDP goodput for a payload size");
    goodput_cmd->add_option("--link,-l", goodput_args.link, "Link rate, bits/s")->required();
    goodput_cmd->add_option("--payload,-p", goodput_args.payload, "Payload bytes")->required();
    goodput_cmd->add_option("--proto", goodput_args.proto, "ethernet, tcp or udp")
        ->check(CLI::IsMember({"ethernet", "tcp", "udp"}));
    goodput_cmd->add_option("--tcp-options", goodput_args.tcp_options,
                            "TCP options preset: none or timestamps");
    goodput_cmd->add_flag("--no-crc", goodput_args.no_crc,
                          "Exclude the CRC from Ethernet goodput");
    goodput_cmd->add_option("--vlan", goodput_args.vlan, "802.1Q tag count (0-2)");
    goodput_cmd->add_flag("--jumbo", goodput_args.jumbo, "Allow payloads up to 9000 bytes");
    add_format_option(goodput_cmd, goodput_args.format);

    MathisArgs mathis_args;
    CLI::App* mathis_cmd =
        app.add_subcommand("mathis", "Loss-based steady-state TCP throughput");
    mathis_cmd->add_option("--mss", mathis_args.mss, "Segment size, bytes")->required();
    mathis_cmd->add_option("--rtt", mathis_args.rtt, "Round-trip time, seconds")->required();
    mathis_cmd->add_option("--loss", mathis_args.loss, "Packet loss probability")->required();
    add_format_option(mathis_cmd, mathis_args.format);

    TcpSimArgs tcp_args;
    CLI::App* tcp_cmd = app.add_subcommand("tcp-sim", "Round-based Reno congestion simulator");
    tcp_cmd->add_option("--smss", tcp_args.smss, "Sender MSS, bytes");
    tcp_cmd->add_option("--rtt", tcp_args.rtt, "Round-trip time, seconds");
    tcp_cmd->add_option("--loss", tcp_args.loss, "Per-segment loss probability");
    tcp_cmd->add_option("--rounds", tcp_args.rounds, "RTT rounds to simulate");
    tcp_cmd->add_option("--seed", tcp_args.seed, "PRNG seed");
    tcp_cmd->add_option("--rwnd", tcp_args.rwnd, "Receiver window, bytes");
    tcp_cmd->add_option("--bottleneck", tcp_args.bottleneck, "Bottleneck rate cap, bits/s");
    tcp_cmd->add_option("--trace", tcp_args.trace_path, "Write the cwnd trace CSV here");
    add_format_option(tcp_cmd, tcp_args.format);

    FabricArgs fabric_args;
    CLI::App* fabric_cmd =
        app.add_subcommand("fabric", "Audit a topology file against over-subscription policy");
    fabric_cmd->add_option("--topology,-t", fabric_args.topology_path, "Topology JSON file")
        ->required();
    fabric_cmd->add_option("--policy", fabric_args.policy_path, "Policy JSON file");
    add_format_option(fabric_cmd, fabric_args.format);

    std::vector<const char*> argv;
    argv.push_back("capplan");
    for (const std::string& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (stat_cmd->parsed())
            return run_stat(stat_args, out);
        if (frames_cmd->parsed())
            return run_frames(frames_args, out);
        if (goodput_cmd->parsed())
            return run_goodput(goodput_args, out);
        if (mathis_cmd->parsed())
            return run_mathis(mathis_args, out);
        if (tcp_cmd->parsed())
            return run_tcp_sim(tcp_args, out);
        if (fabric_cmd->parsed())
            return run_fabric(fabric_args, out);
        err << "error: usage: no subcommand given\n";
        return 2;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << '\n';
        return 2;
    }
}

} // namespace capplan::cli
