#ifndef CAPPLAN_RENO_HPP
#define CAPPLAN_RENO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace capplan {

enum class RenoPhase { slow_start, congestion_avoidance, fast_recovery };

// Sender congestion state. Byte quantities are real-valued so the
// congestion-avoidance increment SMSS^2/cwnd accumulates without
// truncation and "one segment per RTT" holds exactly.
struct RenoState {
    double cwnd = 0.0;
    double ssthresh = 0.0;
    double smss = 1460.0;
    double rwnd = 65535.0;
    double flight_size = 0.0;
    std::uint32_t dup_acks = 0;
    RenoPhase phase = RenoPhase::slow_start;
    std::uint64_t timeouts = 0;

    double send_window() const { return cwnd < rwnd ? cwnd : rwnd; }
};

struct PathConfig {
    double smss = 1460.0;          // bytes
    double rtt_s = 0.1;
    double loss_p = 0.0;           // per-segment independent loss probability
    double bottleneck_bps = 0.0;   // 0 = uncapped
    std::uint64_t duration_rounds = 1000;
    std::uint64_t seed = 1;
    double rwnd = 1073741824.0;    // bytes
};

enum class RoundEvent { none, fast_retransmit, timeout, recovery, silent };

const char* round_event_name(RoundEvent e);

struct RoundRecord {
    std::uint64_t round = 0;
    double cwnd_bytes = 0.0;        // at round end
    RoundEvent event = RoundEvent::none;
    double flight_at_event = 0.0;   // bytes outstanding when a loss was detected
    double ssthresh_after = 0.0;
};

struct TraceSummary {
    double delivered_bytes = 0.0;
    double throughput_bps = 0.0;    // 8 * delivered / (duration * rtt)
    std::uint64_t retransmits = 0;  // segments retransmitted
    std::uint64_t timeouts = 0;     // retransmission-timer events
    std::uint64_t segments_sent = 0; // original transmissions only
    std::uint64_t segments_lost = 0;
    std::vector<RoundRecord> cwnd_trace;
};

// Initial congestion window from the sender MSS:
//   SMSS > 2190          -> 2 * SMSS
//   1095 < SMSS <= 2190  -> 3 * SMSS
//   SMSS <= 1095         -> 4 * SMSS
double initial_window(double smss);

// Cumulative ACK for newly_acked bytes, one per received segment.
// Slow start: cwnd += min(N, SMSS). Congestion avoidance:
// cwnd += SMSS * SMSS / cwnd. Resets the dup-ACK counter and
// re-evaluates the phase against ssthresh (tie -> congestion avoidance).
RenoState on_ack(const RenoState& state, double newly_acked);

// Duplicate ACK. The third one triggers fast retransmit:
// ssthresh = max(FlightSize/2, 2*SMSS), cwnd = ssthresh + 3*SMSS,
// phase = fast recovery. Further duplicates inflate cwnd by SMSS each.
RenoState on_dup_ack(const RenoState& state);

// Retransmission-timer expiry: ssthresh = max(FlightSize/2, 2*SMSS),
// cwnd = 1 segment, back to slow start.
RenoState on_timeout(const RenoState& state);

// Round-based simulation over a lossy path. Each round transmits
// min(cwnd, rwnd) worth of segments (capped by the bottleneck when set);
// per-segment Bernoulli losses drive the four algorithms. Deterministic
// under the seed.
TraceSummary run(const PathConfig& config);

// cwnd trace as CSV: round, cwnd_bytes, event.
void write_trace_csv(const TraceSummary& summary, std::ostream& out);

} // namespace capplan

#endif
