#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lzrl/errors.hpp"

namespace lzrl {

/// Append-only bit sequence. Bit 0 is the first bit on the wire; within a
/// byte, earlier bits sit in higher (more significant) positions, so the
/// byte vector can be persisted as-is with zero padding at the tail.
class BitString {
public:
    BitString() = default;

    std::size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    void push_back(bool bit) {
        if ((nbits_ & 7) == 0) bytes_.push_back(0);
        if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (nbits_ & 7));
        ++nbits_;
    }

    bool operator[](std::size_t i) const {
        return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u;
    }

    void append(const BitString& other) {
        for (std::size_t i = 0; i < other.nbits_; ++i) push_back(other[i]);
    }

    /// Append the low `width` bits of `value`, most significant first.
    void append_bits(std::uint64_t value, unsigned width) {
        for (unsigned i = width; i-- > 0;) push_back((value >> i) & 1u);
    }

    bool operator==(const BitString& other) const {
        if (nbits_ != other.nbits_) return false;
        return bytes_ == other.bytes_;
    }
    bool operator!=(const BitString& other) const { return !(*this == other); }

    /// Zero-padded byte image, suitable for direct file output.
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

    static BitString from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t nbits) {
        if (nbits > bytes.size() * 8) throw InvalidParams("bit count exceeds byte payload");
        BitString b;
        b.bytes_ = bytes;
        b.nbits_ = nbits;
        b.bytes_.resize((nbits + 7) / 8);
        // re-zero any padding bits so equality stays structural
        if (nbits & 7) {
            std::uint8_t mask = static_cast<std::uint8_t>(0xFFu << (8 - (nbits & 7)));
            b.bytes_.back() &= mask;
        }
        return b;
    }

    std::string to_string() const {
        std::string s;
        s.reserve(nbits_);
        for (std::size_t i = 0; i < nbits_; ++i) s.push_back((*this)[i] ? '1' : '0');
        return s;
    }

    static BitString from_string(const std::string& s) {
        BitString b;
        for (char ch : s) {
            if (ch != '0' && ch != '1') throw InvalidParams("bit string literal must be 0/1");
            b.push_back(ch == '1');
        }
        return b;
    }

    bool is_prefix_of(const BitString& other) const {
        if (nbits_ > other.nbits_) return false;
        for (std::size_t i = 0; i < nbits_; ++i)
            if ((*this)[i] != other[i]) return false;
        return true;
    }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t nbits_ = 0;
};

/// Cursor over a BitString. Throws TruncatedCodeword on reads past the end.
class BitReader {
public:
    explicit BitReader(const BitString& bits, std::size_t offset = 0)
        : bits_(&bits), pos_(offset) {}

    std::size_t tell() const { return pos_; }
    std::size_t remaining() const { return bits_->size() - pos_; }
    bool eof() const { return pos_ >= bits_->size(); }

    bool read_bit() {
        if (pos_ >= bits_->size()) throw TruncatedCodeword();
        return (*bits_)[pos_++];
    }

    std::uint64_t read_bits(unsigned width) {
        std::uint64_t v = 0;
        for (unsigned i = 0; i < width; ++i) v = (v << 1) | (read_bit() ? 1u : 0u);
        return v;
    }

private:
    const BitString* bits_;
    std::size_t pos_;
};

}  // namespace lzrl
