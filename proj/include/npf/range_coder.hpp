#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "npf/error.hpp"

namespace npf {

/// Adaptive frequency model with a Fenwick index over the counts, so both
/// cumulative lookup and symbol search stay O(log n) for the large rank
/// alphabets used as block contexts.
class AdaptiveModel {
public:
    static constexpr std::uint32_t kMaxTotal = 1u << 16;
    static constexpr std::uint32_t kMaxAlphabet = 1u << 15;
    static constexpr std::uint32_t kDefaultIncrement = 16;

    explicit AdaptiveModel(std::uint32_t alphabet_size, std::uint32_t increment = kDefaultIncrement);

    std::uint32_t size() const noexcept { return size_; }
    std::uint32_t total() const noexcept { return total_; }
    std::uint32_t freq(std::uint32_t sym) const noexcept { return freq_[sym]; }

    /// Sum of freq over symbols below sym.
    std::uint32_t cumulative(std::uint32_t sym) const noexcept {
        std::uint32_t sum = 0;
        for (std::uint32_t i = sym; i > 0; i &= i - 1) sum += tree_[i];
        return sum;
    }

    /// Symbol whose interval [cum, cum + freq) contains target; target < total.
    std::uint32_t find(std::uint32_t target, std::uint32_t& cum) const noexcept {
        std::uint32_t pos = 0;
        std::uint32_t acc = 0;
        for (std::uint32_t step = top_bit_; step != 0; step >>= 1) {
            const std::uint32_t next = pos + step;
            if (next <= size_ && acc + tree_[next] <= target) {
                pos = next;
                acc += tree_[next];
            }
        }
        cum = acc;
        return pos;
    }

    void update(std::uint32_t sym) {
        freq_[sym] += increment_;
        total_ += increment_;
        for (std::uint32_t i = sym + 1; i <= size_; i += i & (0u - i)) tree_[i] += increment_;
        if (total_ > kMaxTotal) rescale();
    }

private:
    void rescale();
    void rebuild();

    std::uint32_t size_;
    std::uint32_t increment_;
    std::uint32_t total_ = 0;
    std::uint32_t top_bit_ = 1;
    std::vector<std::uint32_t> freq_;
    std::vector<std::uint32_t> tree_;
};

/// Byte-oriented range coder with carry propagation (32-bit range, 64-bit
/// low register). The decoder consumes exactly the bytes the encoder wrote.
class RangeEncoder {
public:
    void encode(std::uint32_t cum, std::uint32_t freq, std::uint32_t total) {
        const std::uint32_t r = range_ / total;
        low_ += std::uint64_t(r) * cum;
        range_ = r * freq;
        normalize();
    }

    void encode(AdaptiveModel& model, std::uint32_t sym) {
        encode(model.cumulative(sym), model.freq(sym), model.total());
        model.update(sym);
    }

    /// Equiprobable bits, width in [1..16].
    void encode_bits(std::uint32_t value, int width) {
        range_ >>= width;
        low_ += std::uint64_t(range_) * value;
        normalize();
    }

    std::vector<std::uint8_t> finish() && {
        for (int i = 0; i < 5; ++i) shift_low();
        return std::move(out_);
    }

    std::size_t bytes_so_far() const noexcept { return out_.size() + std::size_t(cache_size_); }

private:
    static constexpr std::uint32_t kTop = 1u << 24;

    void normalize() {
        while (range_ < kTop) {
            range_ <<= 8;
            shift_low();
        }
    }

    void shift_low() {
        if (std::uint32_t(low_) < 0xFF000000u || (low_ >> 32) != 0) {
            const std::uint8_t carry = std::uint8_t(low_ >> 32);
            std::uint8_t pending = cache_;
            do {
                out_.push_back(std::uint8_t(pending + carry));
                pending = 0xFF;
            } while (--cache_size_ != 0);
            cache_ = std::uint8_t(low_ >> 24);
        }
        ++cache_size_;
        low_ = (low_ & 0x00FFFFFFu) << 8;
    }

    std::uint64_t low_ = 0;
    std::uint32_t range_ = 0xFFFFFFFFu;
    std::uint8_t cache_ = 0;
    std::uint64_t cache_size_ = 1;
    std::vector<std::uint8_t> out_;
};

class RangeDecoder {
public:
    /// Throws truncated_stream if fewer than 5 bytes are available.
    explicit RangeDecoder(std::span<const std::uint8_t> in);

    std::uint32_t decode(AdaptiveModel& model) {
        const std::uint32_t total = model.total();
        const std::uint32_t r = range_ / total;
        const std::uint32_t target = code_ / r;
        if (target >= total) fail(Errc::corrupt_stream, "range decoder target outside model interval");
        std::uint32_t cum;
        const std::uint32_t sym = model.find(target, cum);
        code_ -= r * cum;
        range_ = r * model.freq(sym);
        normalize();
        model.update(sym);
        return sym;
    }

    std::uint32_t decode_bits(int width) {
        range_ >>= width;
        const std::uint32_t value = code_ / range_;
        if (value >> width) fail(Errc::corrupt_stream, "range decoder raw bits out of range");
        code_ -= value * range_;
        normalize();
        return value;
    }

    /// True when every input byte has been consumed, as for a stream this
    /// decoder's symbol sequence actually produced.
    bool at_end() const noexcept { return pos_ == in_.size(); }

private:
    static constexpr std::uint32_t kTop = 1u << 24;

    std::uint8_t next() {
        if (pos_ >= in_.size()) fail(Errc::truncated_stream, "range coded stream exhausted");
        return in_[pos_++];
    }

    void normalize() {
        while (range_ < kTop) {
            code_ = (code_ << 8) | next();
            range_ <<= 8;
        }
    }

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
    std::uint32_t code_ = 0;
    std::uint32_t range_ = 0xFFFFFFFFu;
};

} // namespace npf
