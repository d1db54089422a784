#include "jrc/decode_list.hpp"

#include <stdexcept>

namespace jrc {

bool PartitionTable::injective() const {
    for (const auto& phase : phases)
        for (std::size_t z = 0; z + 1 < phase.offset.size(); ++z)
            if (phase.list_size(z) > 1) return false;
    return true;
}

PartitionTable build_partition_table(const TransitionTable& table,
                                     const std::vector<PacketIndexSet>& which_per_phase,
                                     int m_cap) {
    if (which_per_phase.size() != table.f.size())
        throw std::invalid_argument("build_partition_table: one index set per phase required");

    PartitionTable out;
    for (std::size_t s = 0; s < table.f.size(); ++s) {
        const auto& f = table.f[s];
        const auto& which = which_per_phase[s];
        const int m = which.size();
        if (m > m_cap)
            throw std::invalid_argument(
                "build_partition_table: M exceeds the memory cap; use interleaving or the "
                "sequential decoder's capped candidate table");

        PartitionTable::Phase phase;
        phase.m = m;
        int nbits = 0;
        while ((std::size_t{1} << nbits) < f.size()) ++nbits;
        phase.block_bits = nbits;

        const std::size_t syndromes = std::size_t{1} << m;
        std::vector<std::uint32_t> counts(syndromes, 0);
        std::vector<std::uint64_t> ext(f.size());
        for (std::size_t x = 0; x < f.size(); ++x) {
            ext[x] = gather_bits(f[x], which.which);
            ++counts[ext[x]];
        }
        phase.offset.assign(syndromes + 1, 0);
        for (std::size_t z = 0; z < syndromes; ++z) phase.offset[z + 1] = phase.offset[z] + counts[z];
        phase.xs.resize(f.size());
        std::vector<std::uint32_t> cursor(phase.offset.begin(), phase.offset.end() - 1);
        for (std::size_t x = 0; x < f.size(); ++x) phase.xs[cursor[ext[x]]++] = static_cast<std::uint32_t>(x);
        out.phases.push_back(std::move(phase));
    }
    return out;
}

namespace {

// Message bit offset of the block consumed at substep t.
std::size_t substep_bit_offset(std::size_t t, const std::vector<int>& phase_bits, int phases, int block_bits) {
    const std::size_t step = t / phases;
    const int s = static_cast<int>(t % phases);
    std::size_t off = static_cast<std::size_t>(block_bits) * step;
    for (int q = 0; q < s; ++q) off += phase_bits[q];
    return off;
}

}  // namespace

StraightforwardResult decode_straightforward(const Received& received, const CodecParams& params,
                                             const TransitionTable& table, const PartitionTable& ptable) {
    params.validate();
    received.validate(params);
    const auto phase_bits = params.resolved_phase_bits();
    const std::size_t total = params.total_substeps();

    StraightforwardResult res;
    res.message = BitSeq(params.message_bits());
    StateWord state(params.initial_state, params.state_width);

    for (std::size_t t = 0; t < total; ++t) {
        const int s = static_cast<int>(t % params.phases);
        const std::size_t step = t / params.phases;
        const auto& phase = ptable.phases[s];
        const std::uint64_t z =
            gather_bits(state.value, received.phases[s].which.which) ^ received.phases[s].columns[step];
        const std::uint32_t len = phase.list_size(z);
        if (len == 0) {
            res.status = DecodeStatus::inconsistent;
            res.position = t;
            return res;
        }
        if (len > 1) {
            res.status = DecodeStatus::ambiguous;
            res.position = t;
            return res;
        }
        const std::uint32_t x = phase.xs[phase.list_begin(z)];
        const std::size_t off = substep_bit_offset(t, phase_bits, params.phases, params.block_bits);
        for (int j = 0; j < phase_bits[s]; ++j) res.message.set(off + j, (x >> j) & 1);
        state.value ^= table.f[s][x];
        state = cyclic_shift_right(state);
    }
    if (received.final_state && state.value != *received.final_state) {
        res.status = DecodeStatus::final_state_mismatch;
        res.position = total;
        return res;
    }
    res.position = total;
    return res;
}

ListDecodeResult decode_list(const Received& received, const CodecParams& params,
                             const TransitionTable& table, const PartitionTable& ptable,
                             std::size_t max_list_per_position, std::size_t max_total_nodes) {
    params.validate();
    received.validate(params);
    const auto phase_bits = params.resolved_phase_bits();
    const std::size_t total = params.total_substeps();

    struct Node {
        std::uint64_t state;
        std::uint32_t parent;
        std::uint32_t x;
    };
    constexpr std::uint32_t kNoParent = ~std::uint32_t{0};

    std::vector<Node> arena;
    arena.push_back({params.initial_state, kNoParent, 0});
    std::vector<std::uint32_t> current{0};

    ListDecodeResult res;
    for (std::size_t t = 0; t < total; ++t) {
        const int s = static_cast<int>(t % params.phases);
        const std::size_t step = t / params.phases;
        const auto& phase = ptable.phases[s];
        const auto& which = received.phases[s].which.which;
        const std::uint64_t data_k = received.phases[s].columns[step];

        std::vector<std::uint32_t> next;
        for (std::uint32_t id : current) {
            const std::uint64_t z = gather_bits(arena[id].state, which) ^ data_k;
            const std::uint32_t begin = phase.list_begin(z);
            const std::uint32_t len = phase.list_size(z);
            for (std::uint32_t r = 0; r < len; ++r) {
                const std::uint32_t x = phase.xs[begin + r];
                StateWord ns(arena[id].state ^ table.f[s][x], params.state_width);
                ns = cyclic_shift_right(ns);
                if (next.size() >= max_list_per_position || arena.size() >= max_total_nodes) {
                    res.status = DecodeStatus::budget_exhausted;
                    res.nodes += next.size();
                    res.position = t;
                    res.width = total ? static_cast<double>(res.nodes) / static_cast<double>(total) : 0.0;
                    return res;
                }
                arena.push_back({ns.value, id, x});
                next.push_back(static_cast<std::uint32_t>(arena.size() - 1));
            }
        }
        res.nodes += next.size();
        if (next.empty()) {
            res.status = DecodeStatus::inconsistent;
            res.position = t;
            res.width = total ? static_cast<double>(res.nodes) / static_cast<double>(total) : 0.0;
            return res;
        }
        current = std::move(next);
    }

    // Trace back the survivors, preferring final-state agreement when known.
    for (std::uint32_t id : current) {
        if (received.final_state && arena[id].state != *received.final_state) continue;
        BitSeq msg(params.message_bits());
        std::uint32_t cur = id;
        for (std::size_t t = total; t-- > 0;) {
            const int s = static_cast<int>(t % params.phases);
            const std::size_t off = substep_bit_offset(t, phase_bits, params.phases, params.block_bits);
            for (int j = 0; j < phase_bits[s]; ++j) msg.set(off + j, (arena[cur].x >> j) & 1);
            cur = arena[cur].parent;
        }
        res.messages.push_back(std::move(msg));
    }
    res.position = total;
    res.width = total ? static_cast<double>(res.nodes) / static_cast<double>(total) : 0.0;
    if (res.messages.empty()) res.status = DecodeStatus::final_state_mismatch;
    return res;
}

}  // namespace jrc
