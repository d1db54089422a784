#include "jrc/codec.hpp"

#include <numeric>
#include <stdexcept>

#include "jrc/rng.hpp"

namespace jrc {

std::vector<int> CodecParams::resolved_phase_bits() const {
    if (!phase_bits.empty()) {
        if (static_cast<int>(phase_bits.size()) != phases)
            throw std::invalid_argument("CodecParams: phase_bits size must equal phases");
        if (std::accumulate(phase_bits.begin(), phase_bits.end(), 0) != block_bits)
            throw std::invalid_argument("CodecParams: phase_bits must sum to block_bits");
        return phase_bits;
    }
    if (block_bits % phases != 0)
        throw std::invalid_argument("CodecParams: equal split requires phases to divide block_bits");
    return std::vector<int>(phases, block_bits / phases);
}

void CodecParams::validate() const {
    if (state_width < 4 || state_width > 64)
        throw std::invalid_argument("CodecParams: state_width must be in [4,64]");
    if (phases < 1) throw std::invalid_argument("CodecParams: phases must be >= 1");
    if (block_bits < 1) throw std::invalid_argument("CodecParams: block_bits must be >= 1");
    for (int n : resolved_phase_bits())
        if (n < 1 || n > 16)
            throw std::invalid_argument("CodecParams: per-phase block size must be in [1,16]");
    if ((initial_state & ~width_mask(state_width)) != 0)
        throw std::invalid_argument("CodecParams: initial_state has bits beyond state_width");
}

std::uint64_t CodecParams::fingerprint() const {
    std::uint64_t h = mix64(seed + kGolden);
    auto absorb = [&h](std::uint64_t v) { h = mix64(h ^ (v + kGolden)); };
    absorb(static_cast<std::uint64_t>(block_bits));
    absorb(static_cast<std::uint64_t>(state_width));
    absorb(static_cast<std::uint64_t>(phases));
    for (int n : resolved_phase_bits()) absorb(static_cast<std::uint64_t>(n));
    absorb(initial_state);
    absorb(steps);
    return h;
}

namespace {

// Scatters bit j of `value` to position subset[j].
std::uint64_t scatter_bits(std::uint64_t value, const std::vector<int>& subset) {
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < subset.size(); ++j)
        out |= ((value >> j) & 1) << subset[j];
    return out;
}

}  // namespace

TransitionTable build_transition_table(const CodecParams& params, TableMode mode,
                                       const PacketIndexSet* subset) {
    params.validate();
    const auto phase_bits = params.resolved_phase_bits();
    const std::uint64_t mask = width_mask(params.state_width);

    TransitionTable table;
    table.mode = mode;
    if (mode == TableMode::permutation) {
        if (subset == nullptr)
            throw std::invalid_argument("build_transition_table: permutation mode needs a subset");
        for (int pos : subset->which)
            if (pos >= params.state_width)
                throw std::invalid_argument("build_transition_table: subset position beyond state width");
        table.permutation_subset = *subset;
    }

    table.f.resize(params.phases);
    for (int s = 0; s < params.phases; ++s) {
        const std::size_t entries = std::size_t{1} << phase_bits[s];
        auto& f = table.f[s];
        f.resize(entries);
        for (std::size_t x = 0; x < entries; ++x)
            f[x] = table_word(params.seed, static_cast<std::uint32_t>(s), x) & mask;

        if (mode == TableMode::permutation) {
            if (subset->size() != phase_bits[s])
                throw std::invalid_argument(
                    "build_transition_table: permutation subset size must equal the phase block size");
            // Seeded Fisher-Yates permutation of the block values; subset bits
            // of f[x] carry perm[x], the remaining bits stay pseudorandom.
            std::vector<std::uint32_t> perm(entries);
            for (std::size_t x = 0; x < entries; ++x) perm[x] = static_cast<std::uint32_t>(x);
            RngStream rng(params.seed, 0x7065726Dull + static_cast<std::uint64_t>(s));
            for (std::size_t x = entries - 1; x > 0; --x) {
                const std::size_t r = rng.next_below(x + 1);
                std::swap(perm[x], perm[r]);
            }
            const std::uint64_t subset_mask = scatter_bits(width_mask(phase_bits[s]), subset->which);
            for (std::size_t x = 0; x < entries; ++x)
                f[x] = (f[x] & ~subset_mask) | scatter_bits(perm[x], subset->which);
        }
    }
    return table;
}

EncodedPacketSet encode(const BitSeq& message, const CodecParams& params, const TransitionTable& table) {
    params.validate();
    const auto phase_bits = params.resolved_phase_bits();
    if (message.size() != params.message_bits())
        throw std::invalid_argument("encode: message length must equal block_bits*steps");
    if (table.phase_count() != params.phases)
        throw std::invalid_argument("encode: table phase count mismatch");

    EncodedPacketSet out;
    out.state_width = params.state_width;
    out.phases = params.phases;
    out.steps = params.steps;
    out.params_fingerprint = params.fingerprint();
    out.packets.resize(params.phases);
    for (auto& group : out.packets)
        group.assign(params.state_width, BitSeq(params.steps));

    StateWord state(params.initial_state, params.state_width);
    std::size_t bit_pos = 0;
    for (std::size_t k = 0; k < params.steps; ++k) {
        for (int s = 0; s < params.phases; ++s) {
            const std::uint64_t x = message.slice_bits(bit_pos, phase_bits[s]);
            bit_pos += phase_bits[s];
            state.value ^= table.f[s][x];
            for (int i = 0; i < params.state_width; ++i)
                out.packets[s][i].set(k, state.bit(i));
            state = cyclic_shift_right(state);
        }
    }
    out.final_state = state;
    return out;
}

PacketSubset emit_packet_subset(const EncodedPacketSet& set, int phase, const PacketIndexSet& which) {
    if (phase < 0 || phase >= set.phases)
        throw std::invalid_argument("emit_packet_subset: unknown phase");
    PacketSubset sub;
    sub.which = which;
    for (int pos : which.which) {
        if (pos >= set.state_width)
            throw std::invalid_argument("emit_packet_subset: unknown packet id");
        sub.packets.push_back(set.packets[phase][pos]);
    }
    sub.columns = pack_columns(sub.packets);
    return sub;
}

std::vector<std::uint64_t> pack_columns(const std::vector<BitSeq>& packets) {
    if (packets.empty()) return {};
    const std::size_t steps = packets.front().size();
    for (const auto& p : packets)
        if (p.size() != steps)
            throw std::invalid_argument("pack_columns: packets must share one length");
    std::vector<std::uint64_t> columns(steps, 0);
    for (std::size_t j = 0; j < packets.size(); ++j)
        for (std::size_t k = 0; k < steps; ++k)
            columns[k] |= static_cast<std::uint64_t>(packets[j].get(k)) << j;
    return columns;
}

}  // namespace jrc
