#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "npf/error.hpp"

namespace npf {

/// Packed bits, most significant bit first within each byte.
struct BitBuffer {
    std::vector<std::uint8_t> bytes;
    std::uint64_t bit_count = 0;
};

class BitWriter {
public:
    void reserve_bits(std::uint64_t bits) { buf_.bytes.reserve(std::size_t((bits + 7) / 8)); }

    // width <= 32
    void put(std::uint32_t value, int width) {
        acc_ = (acc_ << width) | (value & ((std::uint64_t(1) << width) - 1));
        fill_ += width;
        buf_.bit_count += std::uint64_t(width);
        while (fill_ >= 8) {
            fill_ -= 8;
            buf_.bytes.push_back(std::uint8_t(acc_ >> fill_));
        }
    }

    BitBuffer finish() && {
        if (fill_ > 0) buf_.bytes.push_back(std::uint8_t(acc_ << (8 - fill_)));
        fill_ = 0;
        return std::move(buf_);
    }

private:
    BitBuffer buf_;
    std::uint64_t acc_ = 0;
    int fill_ = 0;
};

class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> bytes, std::uint64_t start_bit = 0)
        : bytes_(bytes), pos_(start_bit), limit_(std::uint64_t(bytes.size()) * 8) {}

    std::uint64_t position() const noexcept { return pos_; }
    std::uint64_t remaining() const noexcept { return pos_ < limit_ ? limit_ - pos_ : 0; }

    // width in [1..24]
    std::uint32_t get(int width) {
        if (remaining() < std::uint64_t(width)) fail(Errc::truncated_stream, "codeword stream exhausted");
        std::uint32_t out = 0;
        std::uint64_t byte = pos_ >> 3;
        int avail = 8 - int(pos_ & 7);
        int need = width;
        while (need > 0) {
            const int take = need < avail ? need : avail;
            const std::uint32_t chunk = (bytes_[std::size_t(byte)] >> (avail - take)) & ((1u << take) - 1);
            out = (out << take) | chunk;
            need -= take;
            ++byte;
            avail = 8;
        }
        pos_ += std::uint64_t(width);
        return out;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::uint64_t pos_;
    std::uint64_t limit_;
};

} // namespace npf
