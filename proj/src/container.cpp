#include "jrc/container.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace jrc {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

[[noreturn]] void format_error(const std::string& what) {
    throw std::runtime_error("packet file: " + what);
}

}  // namespace

std::vector<std::uint8_t> serialize_packet(const PacketFile& packet) {
    const auto& h = packet.header;
    if (packet.payload.size() != h.steps) format_error("payload length inconsistent with L");
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kPacketMagic, kPacketMagic + 4);
    out.push_back(h.version);
    out.push_back(h.flags);
    out.push_back(h.block_bits);
    out.push_back(h.state_width);
    out.push_back(h.phases);
    out.push_back(h.phase);
    out.push_back(h.packet_id);
    put_u64(out, h.seed);
    put_u32(out, h.steps);
    put_u64(out, h.message_bits);
    if (h.has_final_state()) put_u64(out, h.final_state);
    const auto& bytes = packet.payload.bytes();
    out.insert(out.end(), bytes.begin(), bytes.end());
    return out;
}

PacketFile parse_packet(const std::vector<std::uint8_t>& bytes) {
    constexpr std::size_t kFixed = 4 + 7 + 8 + 4 + 8;
    if (bytes.size() < kFixed) format_error("truncated header");
    if (std::memcmp(bytes.data(), kPacketMagic, 4) != 0) format_error("bad magic");

    PacketFile p;
    auto& h = p.header;
    h.version = bytes[4];
    if (h.version != kPacketVersion) format_error("unsupported version");
    h.flags = bytes[5];
    h.block_bits = bytes[6];
    h.state_width = bytes[7];
    h.phases = bytes[8];
    h.phase = bytes[9];
    h.packet_id = bytes[10];
    h.seed = get_u64(&bytes[11]);
    h.steps = get_u32(&bytes[19]);
    h.message_bits = get_u64(&bytes[23]);
    std::size_t off = kFixed;
    if (h.has_final_state()) {
        if (bytes.size() < off + 8) format_error("truncated final state");
        h.final_state = get_u64(&bytes[off]);
        off += 8;
    }
    const std::size_t payload_bytes = (static_cast<std::size_t>(h.steps) + 7) / 8;
    if (bytes.size() != off + payload_bytes) format_error("payload length inconsistent with L");
    p.payload = BitSeq::from_bytes(std::vector<std::uint8_t>(bytes.begin() + off, bytes.end()),
                                   h.steps);
    return p;
}

void write_packet_file(const std::string& path, const PacketFile& packet) {
    const auto bytes = serialize_packet(packet);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + path);
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

PacketFile read_packet_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)),
                                    std::istreambuf_iterator<char>());
    return parse_packet(bytes);
}

std::vector<ManifestEntry> read_manifest(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read manifest " + path);
    const auto dir = std::filesystem::path(path).parent_path();

    std::vector<ManifestEntry> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string file, epstok;
        if (!(ls >> file)) continue;  // blank
        if (!(ls >> epstok))
            throw std::runtime_error("manifest line " + std::to_string(lineno) + ": missing eps");
        double eps;
        try {
            std::size_t used = 0;
            eps = std::stod(epstok, &used);
            if (used != epstok.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw std::runtime_error("manifest line " + std::to_string(lineno) + ": bad eps");
        }
        if (!(eps >= 0.0 && eps <= 0.5))
            throw std::runtime_error("manifest line " + std::to_string(lineno) +
                                     ": eps must be in [0, 0.5]");
        auto resolved = std::filesystem::path(file);
        if (resolved.is_relative()) resolved = dir / resolved;
        entries.push_back({resolved.string(), eps});
    }
    return entries;
}

void write_manifest(const std::string& path, const std::vector<ManifestEntry>& entries) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write manifest " + path);
    for (const auto& e : entries) os << e.path << ' ' << e.eps << '\n';
}

LoadedPackets load_packets(const std::vector<ManifestEntry>& entries,
                           std::optional<std::uint64_t> seed_override) {
    if (entries.empty()) throw std::runtime_error("decode: no packets listed");

    std::vector<PacketFile> packets;
    std::vector<double> eps;
    for (const auto& e : entries) {
        packets.push_back(read_packet_file(e.path));
        eps.push_back(e.eps);
    }

    const PacketHeader& first = packets.front().header;
    for (const auto& p : packets) {
        const auto& h = p.header;
        if (h.block_bits != first.block_bits || h.state_width != first.state_width ||
            h.phases != first.phases || h.steps != first.steps ||
            h.message_bits != first.message_bits || h.flags != first.flags ||
            h.seed != first.seed ||
            (h.has_final_state() && h.final_state != first.final_state))
            throw std::runtime_error("decode: packets disagree on shared header fields");
    }
    if (first.phases == 0 || first.block_bits == 0) throw std::runtime_error("decode: bad header");
    if (first.block_bits % first.phases != 0)
        throw std::runtime_error("decode: phases must divide N for the equal split");

    LoadedPackets out;
    out.header = first;
    out.params.block_bits = first.block_bits;
    out.params.state_width = first.state_width;
    out.params.phases = first.phases;
    out.params.steps = first.steps;
    out.params.initial_state = 0;
    if (first.seed_omitted()) {
        if (!seed_override) throw std::runtime_error("decode: seed omitted from headers; pass --seed");
        out.params.seed = *seed_override;
    } else {
        out.params.seed = seed_override.value_or(first.seed);
    }

    // Group by phase, ascending packet position.
    struct Slot {
        int id;
        std::size_t index;
    };
    std::vector<std::vector<Slot>> groups(first.phases);
    for (std::size_t i = 0; i < packets.size(); ++i) {
        const auto& h = packets[i].header;
        if (h.phase >= first.phases) throw std::runtime_error("decode: phase out of range");
        if (h.packet_id >= first.state_width)
            throw std::runtime_error("decode: packet id beyond state width");
        groups[h.phase].push_back({h.packet_id, i});
    }
    out.received.steps = first.steps;
    for (int s = 0; s < first.phases; ++s) {
        auto& g = groups[s];
        if (g.empty())
            throw std::runtime_error("decode: phase " + std::to_string(s) + " has no packets");
        std::sort(g.begin(), g.end(), [](const Slot& a, const Slot& b) { return a.id < b.id; });
        for (std::size_t i = 1; i < g.size(); ++i)
            if (g[i].id == g[i - 1].id) throw std::runtime_error("decode: duplicate packet id");

        ReceivedPhase phase;
        std::vector<int> positions;
        std::vector<BitSeq> payloads;
        for (const auto& slot : g) {
            positions.push_back(slot.id);
            payloads.push_back(packets[slot.index].payload);
            phase.eps.push_back(eps[slot.index]);
        }
        phase.which = PacketIndexSet{positions};
        phase.columns = pack_columns(payloads);
        out.received.phases.push_back(std::move(phase));
    }
    if (first.has_final_state()) out.received.final_state = first.final_state;
    return out;
}

}  // namespace jrc
