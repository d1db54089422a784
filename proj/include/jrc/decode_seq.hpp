#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "jrc/bitcore.hpp"
#include "jrc/channel.hpp"
#include "jrc/codec.hpp"
#include "jrc/decode_list.hpp"
#include "jrc/received.hpp"

namespace jrc {

// Bayesian log-probability weight of a block whose disagreement pattern with
// the M received packets is `error_bits`:
//   W(E) = M - N + sum_i lg P_{eps_i}(E_i),  P_eps(0) = 1-eps, P_eps(1) = eps.
// Returns -infinity when a set bit meets eps = 0 (hard disagreement).
double block_weight(std::uint64_t error_bits, const NoiseProfile& profile, int block_bits);

// E = extract(state XOR f[x], which) XOR data_k; zero iff full agreement.
std::uint64_t error_vector(const StateWord& state, std::uint32_t x, std::uint64_t data_k,
                           const TransitionTable& table, int phase, const PacketIndexSet& which);

// For every syndrome over the ordering subset, all 2^N blocks sorted by
// descending weight of the error pattern they would imply. When the received
// packet count exceeds the cap, ordering uses the least-damaged packets only;
// decode-time weights always use all packets.
struct SortedCandidateTable {
    struct Phase {
        int block_bits = 0;    // N_s
        int m_full = 0;        // received packets in this phase
        int m_table = 0;       // packets used for ordering
        std::vector<int> sub_positions;        // indices into `which` of the ordering subset
        std::vector<std::uint16_t> order;      // (1<<m_table) lists of (1<<block_bits) blocks
        std::vector<std::uint32_t> finite_len; // per syndrome: entries with finite ordering weight
        std::vector<std::uint64_t> ext_full;   // extract(f[x], which) per block
        double base = 0.0;                     // (m_full - block_bits) + sum lg(1-eps_i)
        std::vector<double> delta;             // per packet: lg(eps) - lg(1-eps), -inf at eps=0

        const std::uint16_t* list(std::uint64_t z_sub) const {
            return order.data() + (z_sub << block_bits);
        }
        std::uint64_t project_sub(std::uint64_t z_full) const {
            if (m_table == m_full) return z_full;
            std::uint64_t out = 0;
            for (std::size_t j = 0; j < sub_positions.size(); ++j)
                out |= ((z_full >> sub_positions[j]) & 1) << j;
            return out;
        }
        // Weight increment for a full error vector; -inf prunes the candidate.
        double weight_of(std::uint64_t error_bits) const {
            double w = base;
            while (error_bits) {
                const int j = std::countr_zero(error_bits);
                w += delta[j];
                error_bits &= error_bits - 1;
            }
            return w;
        }
    };
    std::vector<Phase> phases;
};

SortedCandidateTable build_sorted_table(const TransitionTable& table,
                                        const std::vector<PacketIndexSet>& which_per_phase,
                                        const std::vector<std::vector<double>>& eps_per_phase,
                                        int m_table_cap = 20);

struct DecodeBudget {
    std::size_t max_nodes = 0;  // cap on expanded (considered) nodes; >= total substeps
};

struct SeqDecodeResult {
    DecodeStatus status = DecodeStatus::ok;
    bool success = false;
    BitSeq message;                   // full message on success, best prefix otherwise
    std::size_t nodes_expanded = 0;   // heap retrievals, root excluded
    double width = 0.0;               // nodes_expanded / total substeps
    std::size_t deepest_position = 0; // substeps, over considered nodes
    double final_weight = 0.0;
};

// Best-first search over message prefixes: repeatedly expands the maximum
// weight node, pushing its first candidate child and its parent's next
// candidate. Terminates on a node at the final position (matching the final
// state when one is known).
SeqDecodeResult decode_sequential(const Received& received, const CodecParams& params,
                                  const TransitionTable& table, const SortedCandidateTable& stable,
                                  DecodeBudget budget);

}  // namespace jrc
