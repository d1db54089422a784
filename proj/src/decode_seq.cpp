#include "jrc/decode_seq.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace jrc {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double block_weight(std::uint64_t error_bits, const NoiseProfile& profile, int block_bits) {
    profile.validate();
    const int m = static_cast<int>(profile.size());
    double w = m - block_bits;
    for (int i = 0; i < m; ++i) {
        const double e = profile.eps[i];
        if ((error_bits >> i) & 1) {
            if (e == 0.0) return kNegInf;
            w += std::log2(e);
        } else {
            w += std::log2(1.0 - e);
        }
    }
    return w;
}

std::uint64_t error_vector(const StateWord& state, std::uint32_t x, std::uint64_t data_k,
                           const TransitionTable& table, int phase, const PacketIndexSet& which) {
    if (phase < 0 || phase >= table.phase_count())
        throw std::invalid_argument("error_vector: unknown phase");
    if (x >= table.f[phase].size())
        throw std::invalid_argument("error_vector: block out of range");
    return gather_bits(state.value ^ table.f[phase][x], which.which) ^ data_k;
}

SortedCandidateTable build_sorted_table(const TransitionTable& table,
                                        const std::vector<PacketIndexSet>& which_per_phase,
                                        const std::vector<std::vector<double>>& eps_per_phase,
                                        int m_table_cap) {
    if (which_per_phase.size() != table.f.size())
        throw std::invalid_argument("build_sorted_table: one index set per phase required");
    if (!eps_per_phase.empty() && eps_per_phase.size() != table.f.size())
        throw std::invalid_argument("build_sorted_table: one eps list per phase required");

    SortedCandidateTable out;
    for (std::size_t s = 0; s < table.f.size(); ++s) {
        const auto& f = table.f[s];
        const auto& which = which_per_phase[s];
        std::vector<double> eps =
            eps_per_phase.empty() ? std::vector<double>(which.size(), 0.0) : eps_per_phase[s];
        if (eps.empty()) eps.assign(which.size(), 0.0);
        NoiseProfile(eps).validate();
        if (eps.size() != static_cast<std::size_t>(which.size()))
            throw std::invalid_argument("build_sorted_table: eps size mismatch");

        SortedCandidateTable::Phase phase;
        phase.m_full = which.size();
        int nbits = 0;
        while ((std::size_t{1} << nbits) < f.size()) ++nbits;
        phase.block_bits = nbits;
        phase.m_table = std::min(phase.m_full, m_table_cap);
        if (phase.m_table < 1)
            throw std::invalid_argument("build_sorted_table: ordering subset must keep a packet");

        // Ordering subset: the least damaged packets, ties to lower positions.
        std::vector<int> idx(phase.m_full);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&eps](int a, int b) { return eps[a] < eps[b]; });
        idx.resize(phase.m_table);
        std::sort(idx.begin(), idx.end());
        phase.sub_positions = idx;

        phase.base = phase.m_full - phase.block_bits;
        phase.delta.resize(phase.m_full);
        for (int j = 0; j < phase.m_full; ++j) {
            phase.base += std::log2(1.0 - eps[j]);
            phase.delta[j] = eps[j] == 0.0 ? kNegInf : std::log2(eps[j]) - std::log2(1.0 - eps[j]);
        }

        phase.ext_full.resize(f.size());
        for (std::size_t x = 0; x < f.size(); ++x)
            phase.ext_full[x] = gather_bits(f[x], which.which);

        // Ordering weight over the subset only; the additive constant is
        // irrelevant to the order, so the lookup table keeps the delta sums.
        std::vector<double> sub_delta(phase.m_table);
        for (int j = 0; j < phase.m_table; ++j) sub_delta[j] = phase.delta[idx[j]];
        const std::size_t sub_syndromes = std::size_t{1} << phase.m_table;
        std::vector<double> wlut(sub_syndromes);
        for (std::size_t e = 0; e < sub_syndromes; ++e) {
            double w = 0.0;
            std::uint64_t bits = e;
            while (bits) {
                w += sub_delta[std::countr_zero(bits)];
                bits &= bits - 1;
            }
            wlut[e] = w;
        }
        std::vector<std::uint64_t> ext_sub(f.size());
        for (std::size_t x = 0; x < f.size(); ++x)
            ext_sub[x] = phase.project_sub(phase.ext_full[x]);

        const std::size_t entries = f.size();
        phase.order.resize(sub_syndromes << phase.block_bits);
        phase.finite_len.resize(sub_syndromes);
        std::vector<std::uint16_t> perm(entries);
        std::vector<double> key(entries);
        for (std::size_t z = 0; z < sub_syndromes; ++z) {
            for (std::size_t x = 0; x < entries; ++x) {
                perm[x] = static_cast<std::uint16_t>(x);
                key[x] = wlut[z ^ ext_sub[x]];
            }
            std::stable_sort(perm.begin(), perm.end(),
                             [&key](std::uint16_t a, std::uint16_t b) { return key[a] > key[b]; });
            std::uint32_t finite = 0;
            while (finite < entries && key[perm[finite]] != kNegInf) ++finite;
            phase.finite_len[z] = finite;
            std::copy(perm.begin(), perm.end(), phase.order.begin() + (z << phase.block_bits));
        }
        out.phases.push_back(std::move(phase));
    }
    return out;
}

namespace {

struct Node {
    std::uint64_t state;   // state entering substep t
    std::uint64_t z_full;  // extract(state) XOR data at substep t (valid for t < total)
    double weight;
    std::uint32_t parent;
    std::uint32_t t;
    std::uint16_t x;     // block applied at substep t-1
    std::uint16_t rank;  // position in parent's candidate list
};

constexpr std::uint32_t kNoNode = ~std::uint32_t{0};

struct HeapEntry {
    double weight;
    std::uint32_t t;
    std::uint64_t seq;
    std::uint32_t node;

    // Max-heap: weight, then deeper position, then earlier insertion.
    friend bool operator<(const HeapEntry& a, const HeapEntry& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        if (a.t != b.t) return a.t < b.t;
        return a.seq > b.seq;
    }
};

}  // namespace

SeqDecodeResult decode_sequential(const Received& received, const CodecParams& params,
                                  const TransitionTable& table, const SortedCandidateTable& stable,
                                  DecodeBudget budget) {
    params.validate();
    received.validate(params);
    const auto phase_bits = params.resolved_phase_bits();
    const std::size_t total = params.total_substeps();
    if (budget.max_nodes < total)
        throw std::invalid_argument("decode_sequential: budget below the substep count");
    for (int s = 0; s < params.phases; ++s) {
        if (stable.phases[s].m_full != received.phases[s].which.size())
            throw std::invalid_argument("decode_sequential: sorted table does not match received packets");
        if (stable.phases[s].block_bits != phase_bits[s])
            throw std::invalid_argument("decode_sequential: sorted table block size mismatch");
    }

    std::vector<Node> arena;
    std::priority_queue<HeapEntry> heap;
    std::uint64_t seq = 0;

    auto syndrome_at = [&](std::uint64_t state, std::size_t t) {
        const int s = static_cast<int>(t % params.phases);
        return gather_bits(state, received.phases[s].which.which) ^
               received.phases[s].columns[t / params.phases];
    };

    // Pushes the first candidate of `parent_id` at rank >= from_rank whose full
    // weight is finite. The list is sorted by ordering weight, so ranks past
    // finite_len can never yield a usable candidate.
    auto push_candidate = [&](std::uint32_t parent_id, std::uint32_t from_rank) {
        const Node parent = arena[parent_id];
        const int s = static_cast<int>(parent.t % params.phases);
        const auto& phase = stable.phases[s];
        const std::uint64_t z_sub = phase.project_sub(parent.z_full);
        const std::uint16_t* list = phase.list(z_sub);
        const std::uint32_t finite = phase.finite_len[z_sub];
        for (std::uint32_t r = from_rank; r < finite; ++r) {
            const std::uint16_t x = list[r];
            const double dw = phase.weight_of(parent.z_full ^ phase.ext_full[x]);
            if (dw == kNegInf) continue;
            StateWord ns(parent.state ^ table.f[s][x], params.state_width);
            ns = cyclic_shift_right(ns);
            Node child;
            child.state = ns.value;
            child.weight = parent.weight + dw;
            child.parent = parent_id;
            child.t = parent.t + 1;
            child.x = x;
            child.rank = static_cast<std::uint16_t>(r);
            child.z_full = child.t < total ? syndrome_at(child.state, child.t) : 0;
            arena.push_back(child);
            heap.push({child.weight, child.t, seq++, static_cast<std::uint32_t>(arena.size() - 1)});
            return;
        }
    };

    Node root;
    root.state = params.initial_state;
    root.weight = 0.0;
    root.parent = kNoNode;
    root.t = 0;
    root.x = 0;
    root.rank = 0;
    root.z_full = total > 0 ? syndrome_at(root.state, 0) : 0;
    arena.push_back(root);
    heap.push({0.0, 0, seq++, 0});

    SeqDecodeResult res;
    std::uint32_t deepest = 0;

    auto trace_message = [&](std::uint32_t id, std::uint32_t depth) {
        std::size_t bits = static_cast<std::size_t>(params.block_bits) * (depth / params.phases);
        for (std::uint32_t q = 0; q < depth % params.phases; ++q) bits += phase_bits[q];
        BitSeq msg(bits);
        std::uint32_t cur = id;
        for (std::uint32_t d = depth; d-- > 0;) {
            const int s = static_cast<int>(d % params.phases);
            std::size_t off = static_cast<std::size_t>(params.block_bits) * (d / params.phases);
            for (int q = 0; q < s; ++q) off += phase_bits[q];
            for (int j = 0; j < phase_bits[s]; ++j)
                if ((arena[cur].x >> j) & 1) msg.set(off + j, true);
            cur = arena[cur].parent;
        }
        return msg;
    };

    while (!heap.empty()) {
        const HeapEntry top = heap.top();
        heap.pop();
        const std::uint32_t id = top.node;
        const bool is_root = arena[id].parent == kNoNode && arena[id].t == 0;
        if (!is_root) ++res.nodes_expanded;

        if (arena[id].t > arena[deepest].t ||
            (arena[id].t == arena[deepest].t && arena[id].weight > arena[deepest].weight))
            deepest = id;

        if (!is_root) push_candidate(arena[id].parent, arena[id].rank + 1u);

        if (arena[id].t == total) {
            if (!received.final_state || arena[id].state == *received.final_state) {
                res.status = DecodeStatus::ok;
                res.success = true;
                res.message = trace_message(id, static_cast<std::uint32_t>(total));
                res.final_weight = arena[id].weight;
                res.deepest_position = total;
                res.width = total ? static_cast<double>(res.nodes_expanded) / static_cast<double>(total) : 0.0;
                return res;
            }
        } else {
            push_candidate(id, 0);
        }

        if (res.nodes_expanded >= budget.max_nodes) {
            res.status = DecodeStatus::budget_exhausted;
            break;
        }
    }
    if (res.status != DecodeStatus::budget_exhausted) res.status = DecodeStatus::no_candidates;

    res.success = false;
    res.deepest_position = arena[deepest].t;
    res.message = trace_message(deepest, arena[deepest].t);
    res.final_weight = arena[deepest].weight;
    res.width = total ? static_cast<double>(res.nodes_expanded) / static_cast<double>(total) : 0.0;
    return res;
}

}  // namespace jrc
