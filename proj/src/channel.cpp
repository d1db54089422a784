#include "jrc/channel.hpp"

#include <algorithm>
#include <stdexcept>

namespace jrc {

BitSeq apply_bsc(const BitSeq& bits, double eps, RngStream& rng) {
    if (!(eps >= 0.0 && eps <= 0.5))
        throw std::invalid_argument("apply_bsc: eps must be in [0, 0.5]");
    BitSeq out = bits;
    if (eps == 0.0) return out;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (rng.bernoulli(eps)) out.set(i, !out.get(i));
    return out;
}

PacketSubset drop_packets(const PacketSubset& sub, const PacketIndexSet& keep) {
    PacketSubset out;
    out.which = keep;
    for (int pos : keep.which) {
        const auto it = std::find(sub.which.which.begin(), sub.which.which.end(), pos);
        if (it == sub.which.which.end())
            throw std::invalid_argument("drop_packets: unknown packet id");
        out.packets.push_back(sub.packets[it - sub.which.which.begin()]);
    }
    out.columns = pack_columns(out.packets);
    return out;
}

}  // namespace jrc
