#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "jrc/bitcore.hpp"
#include "jrc/channel.hpp"
#include "jrc/codec.hpp"

namespace jrc {

// Everything a decoder sees from one phase: the received packet positions,
// their a-posteriori noise levels and the per-step column view.
struct ReceivedPhase {
    PacketIndexSet which;
    std::vector<double> eps;              // aligned with which; empty means all zero
    std::vector<std::uint64_t> columns;   // [step], bit j = packet which[j]

    int packet_count() const { return which.size(); }
    double eps_at(int j) const { return eps.empty() ? 0.0 : eps[j]; }
};

struct Received {
    std::vector<ReceivedPhase> phases;
    std::size_t steps = 0;
    std::optional<std::uint64_t> final_state;

    int total_packets() const {
        int m = 0;
        for (const auto& p : phases) m += p.packet_count();
        return m;
    }

    std::vector<double> flat_eps() const {
        std::vector<double> all;
        for (const auto& p : phases)
            for (int j = 0; j < p.packet_count(); ++j) all.push_back(p.eps_at(j));
        return all;
    }

    void validate(const CodecParams& params) const {
        if (static_cast<int>(phases.size()) != params.phases)
            throw std::invalid_argument("Received: phase count mismatch");
        for (const auto& p : phases) {
            if (p.packet_count() == 0)
                throw std::invalid_argument("Received: a phase has no packets");
            if (p.which.which.back() >= params.state_width)
                throw std::invalid_argument("Received: packet position beyond state width");
            if (!p.eps.empty() && p.eps.size() != static_cast<std::size_t>(p.packet_count()))
                throw std::invalid_argument("Received: eps size mismatch");
            if (p.columns.size() != steps)
                throw std::invalid_argument("Received: column count must equal steps");
        }
        if (steps != params.steps)
            throw std::invalid_argument("Received: steps mismatch with params");
    }
};

// Convenience for tests and the experiment harness: select a subset per phase,
// push each packet through its BSC with an independent stream and assemble the
// decoder view. eps entries align with the (ascending) positions in which.
inline Received make_received(const EncodedPacketSet& set,
                              const std::vector<PacketIndexSet>& which_per_phase,
                              const std::vector<std::vector<double>>& eps_per_phase,
                              std::uint64_t channel_seed, std::uint64_t channel_stream_base,
                              bool with_final_state) {
    Received r;
    r.steps = set.steps;
    std::uint64_t stream = channel_stream_base;
    for (int s = 0; s < set.phases; ++s) {
        PacketSubset sub = emit_packet_subset(set, s, which_per_phase[s]);
        ReceivedPhase phase;
        phase.which = sub.which;
        phase.eps = eps_per_phase.empty() ? std::vector<double>{} : eps_per_phase[s];
        std::vector<BitSeq> noisy;
        for (std::size_t j = 0; j < sub.packets.size(); ++j) {
            RngStream rng(channel_seed, stream++);
            noisy.push_back(apply_bsc(sub.packets[j], phase.eps_at(static_cast<int>(j)), rng));
        }
        phase.columns = pack_columns(noisy);
        r.phases.push_back(std::move(phase));
    }
    if (with_final_state) r.final_state = set.final_state.value;
    return r;
}

}  // namespace jrc
