#include "capplan/reno.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "capplan/errors.hpp"
#include "capplan/rng.hpp"

namespace capplan {

const char* round_event_name(RoundEvent e) {
    switch (e) {
    case RoundEvent::fast_retransmit: return "fast-retransmit";
    case RoundEvent::timeout: return "timeout";
    case RoundEvent::recovery: return "recovery";
    case RoundEvent::silent: return "silent";
    case RoundEvent::none: break;
    }
    return "";
}

double initial_window(double smss) {
    if (!(smss > 0) || !std::isfinite(smss))
        throw DomainError("smss_nonpositive", "SMSS must be > 0 bytes");
    if (smss > 2190.0)
        return 2.0 * smss;
    if (smss > 1095.0)
        return 3.0 * smss;
    return 4.0 * smss;
}

namespace {

double loss_threshold(const RenoState& s) {
    return std::max(s.flight_size / 2.0, 2.0 * s.smss);
}

void reevaluate_phase(RenoState& s) {
    if (s.phase == RenoPhase::fast_recovery)
        return;
    // cwnd == ssthresh resolves to congestion avoidance.
    s.phase = s.cwnd < s.ssthresh ? RenoPhase::slow_start : RenoPhase::congestion_avoidance;
}

} // namespace

RenoState on_ack(const RenoState& state, double newly_acked) {
    if (newly_acked < 0)
        throw DomainError("ack_negative", "acknowledged byte count must be >= 0");
    RenoState s = state;
    s.dup_acks = 0;
    s.flight_size = std::max(0.0, s.flight_size - newly_acked);
    if (s.phase == RenoPhase::fast_recovery) {
        // The first non-duplicate ACK ends recovery: deflate and resume
        // congestion avoidance.
        s.cwnd = s.ssthresh;
        s.phase = RenoPhase::congestion_avoidance;
        return s;
    }
    if (s.phase == RenoPhase::slow_start)
        s.cwnd += std::min(newly_acked, s.smss);
    else
        s.cwnd += s.smss * s.smss / s.cwnd;
    reevaluate_phase(s);
    return s;
}

RenoState on_dup_ack(const RenoState& state) {
    RenoState s = state;
    if (s.phase == RenoPhase::fast_recovery) {
        s.cwnd += s.smss; // window inflation per additional duplicate
        return s;
    }
    s.dup_acks += 1;
    if (s.dup_acks == 3) {
        s.ssthresh = loss_threshold(s);
        s.cwnd = s.ssthresh + 3.0 * s.smss;
        s.phase = RenoPhase::fast_recovery;
    }
    return s;
}

RenoState on_timeout(const RenoState& state) {
    RenoState s = state;
    s.ssthresh = loss_threshold(s);
    s.cwnd = s.smss;
    s.phase = RenoPhase::slow_start;
    s.dup_acks = 0;
    s.timeouts += 1;
    return s;
}

namespace {

// Per-round segment cap above which ACK processing switches from the
// per-ACK recurrence to closed forms. Slow-start aggregation is exact;
// the congestion-avoidance form sqrt(cwnd^2 + 2 m SMSS^2) is an
// approximation only reachable in degenerate huge-window configurations.
constexpr std::uint64_t kAggregateAckThreshold = 4096;

void apply_round_acks(RenoState& s, std::uint64_t acks) {
    if (acks <= kAggregateAckThreshold) {
        for (std::uint64_t i = 0; i < acks; ++i)
            s = on_ack(s, s.smss);
        return;
    }
    std::uint64_t m = acks;
    s.dup_acks = 0;
    s.flight_size = std::max(0.0, s.flight_size - static_cast<double>(acks) * s.smss);
    while (m > 0) {
        if (s.phase == RenoPhase::slow_start) {
            const double gap = s.ssthresh - s.cwnd;
            std::uint64_t k = m;
            if (gap > 0 && gap < static_cast<double>(m) * s.smss)
                k = static_cast<std::uint64_t>(std::ceil(gap / s.smss));
            s.cwnd += static_cast<double>(k) * s.smss;
            m -= k;
            reevaluate_phase(s);
        } else {
            s.cwnd = std::sqrt(s.cwnd * s.cwnd +
                               2.0 * static_cast<double>(m) * s.smss * s.smss);
            m = 0;
        }
    }
}

} // namespace

TraceSummary run(const PathConfig& config) {
    if (!(config.rtt_s > 0) || !std::isfinite(config.rtt_s))
        throw DomainError("rtt_nonpositive", "RTT must be > 0 s");
    if (config.loss_p < 0 || config.loss_p >= 1)
        throw DomainError("loss_range", "loss probability must lie in [0, 1)");
    if (config.duration_rounds < 1)
        throw DomainError("duration_range", "duration must be >= 1 round");
    if (config.rwnd < 0)
        throw DomainError("rwnd_negative", "receiver window must be >= 0 bytes");

    RenoState st;
    st.smss = config.smss;
    st.rwnd = config.rwnd;
    st.cwnd = initial_window(config.smss);
    st.ssthresh = config.rwnd; // largest possible window
    reevaluate_phase(st);

    SplitMix64 rng{substream_seed(config.seed, 0)};
    TraceSummary sum;
    sum.cwnd_trace.reserve(config.duration_rounds);

    std::uint64_t pending_retx = 0; // segments awaiting retransmission
    std::uint64_t silence = 0;      // RTO: two RTT-rounds of nothing

    const double round_cap =
        config.bottleneck_bps > 0 ? config.bottleneck_bps * config.rtt_s / 8.0
                                  : std::numeric_limits<double>::infinity();

    for (std::uint64_t round = 0; round < config.duration_rounds; ++round) {
        RoundRecord rec;
        rec.round = round;

        if (silence > 0) {
            --silence;
            rec.event = RoundEvent::silent;
            rec.cwnd_bytes = st.cwnd;
            rec.ssthresh_after = st.ssthresh;
            sum.cwnd_trace.push_back(rec);
            continue;
        }

        if (st.phase == RenoPhase::fast_recovery) {
            // Recovery round: the retransmissions go out and one RTT later
            // the cumulative ACK for the whole window arrives.
            sum.retransmits += pending_retx;
            sum.delivered_bytes += static_cast<double>(pending_retx) * st.smss;
            pending_retx = 0;
            st = on_ack(st, st.flight_size);
            rec.event = RoundEvent::recovery;
            rec.cwnd_bytes = st.cwnd;
            rec.ssthresh_after = st.ssthresh;
            sum.cwnd_trace.push_back(rec);
            continue;
        }

        const double window = std::min(st.send_window(), round_cap);
        std::uint64_t segs = static_cast<std::uint64_t>(window / st.smss);

        // Segments lost to an earlier timeout are resent ahead of new data.
        const std::uint64_t retx = std::min(pending_retx, segs);
        sum.retransmits += retx;
        sum.delivered_bytes += static_cast<double>(retx) * st.smss;
        pending_retx -= retx;
        const std::uint64_t new_segs = segs - retx;

        if (new_segs == 0) {
            apply_round_acks(st, retx); // retransmissions are acknowledged too
            rec.cwnd_bytes = st.cwnd;
            rec.ssthresh_after = st.ssthresh;
            sum.cwnd_trace.push_back(rec);
            continue;
        }

        sum.segments_sent += new_segs;
        st.flight_size = static_cast<double>(new_segs) * st.smss;

        // Per-segment Bernoulli losses; only the positions relative to the
        // first loss matter for event classification.
        std::uint64_t lost = 0;
        std::uint64_t first_loss = new_segs;
        std::uint64_t survivors_after = 0;
        if (config.loss_p > 0) {
            for (std::uint64_t i = 0; i < new_segs; ++i) {
                if (rng.next_unit() < config.loss_p) {
                    ++lost;
                    if (first_loss == new_segs)
                        first_loss = i;
                } else if (first_loss != new_segs) {
                    ++survivors_after;
                }
            }
        }

        if (lost == 0) {
            sum.delivered_bytes += static_cast<double>(new_segs) * st.smss;
            apply_round_acks(st, retx + new_segs);
            rec.cwnd_bytes = st.cwnd;
            rec.ssthresh_after = st.ssthresh;
            sum.cwnd_trace.push_back(rec);
            continue;
        }

        // Everything that arrived is eventually delivered; the lost
        // segments go through the retransmit queue.
        sum.delivered_bytes += static_cast<double>(new_segs - lost) * st.smss;
        sum.segments_lost += lost;
        pending_retx += lost;
        rec.flight_at_event = st.flight_size;

        if (survivors_after >= 3) {
            for (std::uint64_t i = 0; i < survivors_after; ++i)
                st = on_dup_ack(st);
            rec.event = RoundEvent::fast_retransmit;
        } else {
            for (std::uint64_t i = 0; i < survivors_after; ++i)
                st = on_dup_ack(st);
            st = on_timeout(st);
            silence = 2;
            rec.event = RoundEvent::timeout;
        }
        rec.cwnd_bytes = st.cwnd;
        rec.ssthresh_after = st.ssthresh;
        sum.cwnd_trace.push_back(rec);
    }

    sum.timeouts = st.timeouts;
    sum.throughput_bps = 8.0 * sum.delivered_bytes /
                         (static_cast<double>(config.duration_rounds) * config.rtt_s);
    return sum;
}

void write_trace_csv(const TraceSummary& summary, std::ostream& out) {
    out << "round,cwnd_bytes,event\n";
    char buf[64];
    for (const RoundRecord& r : summary.cwnd_trace) {
        std::snprintf(buf, sizeof(buf), "%.10g", r.cwnd_bytes);
        out << r.round << ',' << buf << ',' << round_event_name(r.event) << '\n';
    }
}

} // namespace capplan
