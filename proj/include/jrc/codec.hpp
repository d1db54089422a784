#pragma once

#include <cstdint>
#include <vector>

#include "jrc/bitcore.hpp"

namespace jrc {

// Parameters of one encoding. A message of block_bits*steps bits is consumed
// in `steps` steps; with phases > 1 each step is split into that many substeps
// using disjoint packet groups and per-phase block sizes summing to block_bits.
struct CodecParams {
    int block_bits = 8;              // N: message bits per step
    int state_width = 64;            // W_s in [4, 64]
    int phases = 1;                  // S
    std::vector<int> phase_bits;     // N_s per phase; empty means equal split
    std::uint64_t seed = 0;
    std::uint64_t initial_state = 0;
    std::size_t steps = 0;           // L: bits produced per packet

    std::size_t message_bits() const { return static_cast<std::size_t>(block_bits) * steps; }
    std::size_t total_substeps() const { return steps * static_cast<std::size_t>(phases); }

    // N_s list after applying the default equal split; validates invariants.
    std::vector<int> resolved_phase_bits() const;
    void validate() const;
    std::uint64_t fingerprint() const;
};

enum class TableMode { random, permutation };

// Per-phase map from message blocks to state-width words. Deterministic
// function of (seed, phase bits, state width, mode): entry x of phase s is
// table_word(seed, s, x) masked to the state width; permutation mode overrides
// the designated subset bits with a seeded permutation of the block values.
struct TransitionTable {
    std::vector<std::vector<std::uint64_t>> f;  // [phase][x]
    TableMode mode = TableMode::random;
    PacketIndexSet permutation_subset;          // meaningful in permutation mode

    int phase_count() const { return static_cast<int>(f.size()); }
};

TransitionTable build_transition_table(const CodecParams& params, TableMode mode = TableMode::random,
                                       const PacketIndexSet* subset = nullptr);

// All state_width packets of every phase, each `steps` bits long.
struct EncodedPacketSet {
    int state_width = 0;
    int phases = 1;
    std::size_t steps = 0;
    std::vector<std::vector<BitSeq>> packets;  // [phase][bit position]
    StateWord final_state;
    std::uint64_t params_fingerprint = 0;
};

EncodedPacketSet encode(const BitSeq& message, const CodecParams& params, const TransitionTable& table);

// A received subset of one phase's packets plus the column view data[k]:
// bit j of columns[k] is bit k of packet which[j].
struct PacketSubset {
    PacketIndexSet which;
    std::vector<BitSeq> packets;
    std::vector<std::uint64_t> columns;
};

PacketSubset emit_packet_subset(const EncodedPacketSet& set, int phase, const PacketIndexSet& which);

// Rebuilds the column view from (possibly modified) packet payloads.
std::vector<std::uint64_t> pack_columns(const std::vector<BitSeq>& packets);

}  // namespace jrc
