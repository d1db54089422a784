#pragma once

#include <vector>

#include "jrc/bitcore.hpp"
#include "jrc/codec.hpp"
#include "jrc/rng.hpp"

namespace jrc {

// Per-packet bit-flip probabilities, each in [0, 0.5].
struct NoiseProfile {
    std::vector<double> eps;

    NoiseProfile() = default;
    explicit NoiseProfile(std::vector<double> e) : eps(std::move(e)) { validate(); }

    void validate() const {
        for (double e : eps)
            if (!(e >= 0.0 && e <= 0.5))
                throw std::invalid_argument("NoiseProfile: eps must be in [0, 0.5]");
    }

    std::size_t size() const { return eps.size(); }
};

// Flips each bit independently with probability eps, reproducibly per stream.
BitSeq apply_bsc(const BitSeq& bits, double eps, RngStream& rng);

// Keeps only the packets listed in `keep` (positions within the state word).
PacketSubset drop_packets(const PacketSubset& sub, const PacketIndexSet& keep);

}  // namespace jrc
