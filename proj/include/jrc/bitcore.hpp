#pragma once

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jrc {

// Bit conventions used throughout:
//  - bit i of an integer word is its i-th least significant bit (0-based)
//  - packed byte streams store bit i in byte i/8 at byte-bit i%8 (LSB first)
// All integer words holding state/syndromes follow the same numbering.

inline constexpr std::uint64_t width_mask(int width) {
    return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
}

// Variable-length bit sequence packed LSB-first into bytes.
class BitSeq {
public:
    BitSeq() = default;
    explicit BitSeq(std::size_t length) : length_(length), bytes_((length + 7) / 8, 0) {}

    // Reinterprets a packed byte buffer; `length` may leave zero padding in the
    // final byte but must not exceed the buffer.
    static BitSeq from_bytes(std::vector<std::uint8_t> bytes, std::size_t length) {
        if (length > bytes.size() * 8)
            throw std::invalid_argument("BitSeq: declared length exceeds payload");
        BitSeq s;
        s.length_ = length;
        s.bytes_ = std::move(bytes);
        s.bytes_.resize((length + 7) / 8);
        if (length % 8 != 0 && !s.bytes_.empty())
            s.bytes_.back() &= static_cast<std::uint8_t>((1u << (length % 8)) - 1);
        return s;
    }

    // "10110" gives bits 1,0,1,1,0 at indices 0..4 (index order, not place value).
    static BitSeq from_string(std::string_view bits) {
        BitSeq s(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] != '0' && bits[i] != '1')
                throw std::invalid_argument("BitSeq: bit string must be 0/1");
            s.set(i, bits[i] == '1');
        }
        return s;
    }

    std::size_t size() const { return length_; }
    bool empty() const { return length_ == 0; }

    bool get(std::size_t i) const {
        check(i);
        return (bytes_[i >> 3] >> (i & 7)) & 1;
    }

    void set(std::size_t i, bool v) {
        check(i);
        const std::uint8_t m = static_cast<std::uint8_t>(1u << (i & 7));
        if (v)
            bytes_[i >> 3] |= m;
        else
            bytes_[i >> 3] &= static_cast<std::uint8_t>(~m);
    }

    void push_back(bool v) {
        if (length_ % 8 == 0) bytes_.push_back(0);
        ++length_;
        set(length_ - 1, v);
    }

    // Low `count` bits of `value`, appended in index order (LSB of value first).
    void append_bits(std::uint64_t value, int count) {
        for (int j = 0; j < count; ++j) push_back((value >> j) & 1);
    }

    // Reads `count` bits starting at `pos` into an integer (bit j of result =
    // bit pos+j of the sequence).
    std::uint64_t slice_bits(std::size_t pos, int count) const {
        std::uint64_t v = 0;
        for (int j = 0; j < count; ++j)
            if (get(pos + j)) v |= std::uint64_t{1} << j;
        return v;
    }

    BitSeq prefix(std::size_t n) const {
        if (n > length_) throw std::invalid_argument("BitSeq: prefix longer than sequence");
        return from_bytes(bytes_, n);
    }

    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

    std::string to_string() const {
        std::string s(length_, '0');
        for (std::size_t i = 0; i < length_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    friend bool operator==(const BitSeq& a, const BitSeq& b) {
        return a.length_ == b.length_ && a.bytes_ == b.bytes_;
    }

private:
    void check(std::size_t i) const {
        if (i >= length_) throw std::out_of_range("BitSeq: index " + std::to_string(i) +
                                                  " out of range " + std::to_string(length_));
    }

    std::size_t length_ = 0;
    std::vector<std::uint8_t> bytes_;
};

// Fixed-width state register, 4..64 bits in the codec (1..64 accepted here so
// tiny cases stay testable). Bits at positions >= width are always zero.
struct StateWord {
    std::uint64_t value = 0;
    int width = 64;

    StateWord() = default;
    StateWord(std::uint64_t v, int w) : value(v & width_mask(w)), width(w) {
        if (w < 1 || w > 64) throw std::invalid_argument("StateWord: width must be in [1,64]");
    }

    bool bit(int i) const { return (value >> i) & 1; }

    friend bool operator==(const StateWord& a, const StateWord& b) {
        return a.value == b.value && a.width == b.width;
    }
};

// Bit i of the result is bit (i+1 mod width) of the input.
inline StateWord cyclic_shift_right(StateWord s) {
    const std::uint64_t lsb = s.value & 1;
    s.value = (s.value >> 1) | (lsb << (s.width - 1));
    return s;
}

// Strictly increasing set of packet bit positions within the state word.
struct PacketIndexSet {
    std::vector<int> which;

    PacketIndexSet() = default;
    explicit PacketIndexSet(std::vector<int> positions) : which(std::move(positions)) {
        for (std::size_t j = 0; j < which.size(); ++j) {
            if (which[j] < 0 || which[j] >= 64)
                throw std::invalid_argument("PacketIndexSet: position out of [0,64)");
            if (j > 0 && which[j] <= which[j - 1])
                throw std::invalid_argument("PacketIndexSet: positions must be strictly increasing");
        }
    }

    int size() const { return static_cast<int>(which.size()); }
    int operator[](int j) const { return which[j]; }

    friend bool operator==(const PacketIndexSet& a, const PacketIndexSet& b) = default;
};

// M-bit integer; bit j corresponds to the j-th entry of the index set.
struct Syndrome {
    std::uint64_t value = 0;
    int width = 0;

    friend bool operator==(const Syndrome& a, const Syndrome& b) = default;
};

// Gathers state bits at the given positions: bit j of the result is bit
// positions[j] of value. Positions must already be valid for the word.
inline std::uint64_t gather_bits(std::uint64_t value, const std::vector<int>& positions) {
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < positions.size(); ++j)
        out |= ((value >> positions[j]) & 1) << j;
    return out;
}

inline Syndrome extract(const StateWord& state, const PacketIndexSet& which) {
    if (which.size() > 0 && which.which.back() >= state.width)
        throw std::invalid_argument("extract: packet position beyond state width");
    return Syndrome{gather_bits(state.value, which.which), which.size()};
}

}  // namespace jrc
