#pragma once

#include <cstdint>
#include <vector>

#include "jrc/bitcore.hpp"
#include "jrc/codec.hpp"
#include "jrc/received.hpp"

namespace jrc {

// For each syndrome z, the blocks x with extract(f[x]) = z. Stored as one
// contiguous x array per phase plus offsets, keeping the O(2^N + 2^M)
// footprint.
struct PartitionTable {
    struct Phase {
        int block_bits = 0;   // N_s
        int m = 0;            // M_s
        std::vector<std::uint32_t> xs;
        std::vector<std::uint32_t> offset;  // size 2^m + 1

        std::uint32_t list_begin(std::uint64_t z) const { return offset[z]; }
        std::uint32_t list_size(std::uint64_t z) const { return offset[z + 1] - offset[z]; }
    };
    std::vector<Phase> phases;

    // True when every syndrome list has at most one candidate in every phase,
    // i.e. x -> extract(f[x]) is injective and straightforward decoding applies.
    bool injective() const;
};

// Default cap keeps the offset array within a quarter-gigabyte; callers that
// really need more packets should interleave instead.
PartitionTable build_partition_table(const TransitionTable& table,
                                     const std::vector<PacketIndexSet>& which_per_phase,
                                     int m_cap = 24);

enum class DecodeStatus {
    ok,
    ambiguous,            // a syndrome admitted several blocks (straightforward only)
    inconsistent,         // no block agrees with the received bits
    budget_exhausted,
    final_state_mismatch, // data consistent but final state check failed
    no_candidates,        // search space exhausted without reaching the end
};

struct StraightforwardResult {
    DecodeStatus status = DecodeStatus::ok;
    BitSeq message;
    std::size_t position = 0;  // substeps completed
};

// One table lookup per substep; requires unique candidates along the way.
StraightforwardResult decode_straightforward(const Received& received, const CodecParams& params,
                                             const TransitionTable& table, const PartitionTable& ptable);

struct ListDecodeResult {
    DecodeStatus status = DecodeStatus::ok;
    std::vector<BitSeq> messages;  // all survivors, final-state filtered when available
    std::size_t nodes = 0;         // candidates considered across all positions
    double width = 0.0;            // nodes / total substeps
    std::size_t position = 0;      // substeps completed
};

// Breadth-style exhaustive decoder: keeps every prefix consistent with all
// received packets. The per-position list is capped, as is the node arena kept
// for traceback; overflow reports failure with the position reached.
ListDecodeResult decode_list(const Received& received, const CodecParams& params,
                             const TransitionTable& table, const PartitionTable& ptable,
                             std::size_t max_list_per_position = std::size_t{1} << 20,
                             std::size_t max_total_nodes = std::size_t{1} << 24);

}  // namespace jrc
