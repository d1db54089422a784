#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jrc/bitcore.hpp"
#include "jrc/codec.hpp"
#include "jrc/received.hpp"

namespace jrc {

// Binary packet container, little-endian throughout:
//   magic "JRC1" | version u8 | flags u8 | N u8 | W_s u8 | S u8 | phase u8 |
//   packet id u8 | seed u64 | L u32 | message_bits u64 |
//   [final_state u64 when flag set] | payload ceil(L/8) bytes, LSB-first.
inline constexpr char kPacketMagic[4] = {'J', 'R', 'C', '1'};
inline constexpr std::uint8_t kPacketVersion = 1;
inline constexpr std::uint8_t kFlagFinalState = 1u << 0;
// Keyed deployments zero the seed field and pass the seed out of band.
inline constexpr std::uint8_t kFlagSeedOmitted = 1u << 1;
// The transition table was built in permutation mode; the subset is supplied
// out of band at decode time.
inline constexpr std::uint8_t kFlagPermutationTable = 1u << 2;

struct PacketHeader {
    std::uint8_t version = kPacketVersion;
    std::uint8_t flags = 0;
    std::uint8_t block_bits = 0;   // N
    std::uint8_t state_width = 0;  // W_s
    std::uint8_t phases = 1;       // S
    std::uint8_t phase = 0;
    std::uint8_t packet_id = 0;
    std::uint64_t seed = 0;
    std::uint32_t steps = 0;       // L
    std::uint64_t message_bits = 0;
    std::uint64_t final_state = 0; // meaningful when kFlagFinalState set

    bool has_final_state() const { return flags & kFlagFinalState; }
    bool seed_omitted() const { return flags & kFlagSeedOmitted; }
    bool permutation_table() const { return flags & kFlagPermutationTable; }
};

struct PacketFile {
    PacketHeader header;
    BitSeq payload;  // steps bits
};

std::vector<std::uint8_t> serialize_packet(const PacketFile& packet);
PacketFile parse_packet(const std::vector<std::uint8_t>& bytes);

void write_packet_file(const std::string& path, const PacketFile& packet);
PacketFile read_packet_file(const std::string& path);

// Plain-text manifest: one "<packet path> <eps>" line each; '#' comments and
// blank lines skipped. Relative paths resolve against the manifest directory.
struct ManifestEntry {
    std::string path;
    double eps = 0.0;
};

std::vector<ManifestEntry> read_manifest(const std::string& path);
void write_manifest(const std::string& path, const std::vector<ManifestEntry>& entries);

// A manifest's packets checked for mutual consistency and regrouped into the
// decoder view plus the codec parameters they describe.
struct LoadedPackets {
    CodecParams params;
    Received received;
    PacketHeader header;  // shared fields of the group
};

LoadedPackets load_packets(const std::vector<ManifestEntry>& entries,
                           std::optional<std::uint64_t> seed_override = std::nullopt);

// Shared zero-padding rule: pads to a whole number of N-bit blocks.
inline std::size_t padded_steps(std::uint64_t message_bits, int block_bits) {
    return static_cast<std::size_t>((message_bits + block_bits - 1) / static_cast<std::uint64_t>(block_bits));
}

}  // namespace jrc
