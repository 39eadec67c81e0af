#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "npf/bitstream.hpp"

namespace npf {

using ByteCounts = std::array<std::uint64_t, 256>;

struct Codeword {
    std::uint32_t bits = 0;
    int length = 0;
    friend bool operator==(Codeword, Codeword) = default;
};

/// Minimal binary representation: i >= 2 written in binary without its
/// leading 1 bit.
Codeword mbr(std::uint64_t i);

/// Frequency-ordered mapping from bytes to non-prefix-free codewords. The
/// symbol at 0-based rank j gets mbr(j + 2), so the two most frequent symbols
/// share the 1-bit codewords, the next four the 2-bit ones, and so on.
class Codebook {
public:
    /// Alphabet listed most frequent first. Must be non-empty with distinct bytes.
    explicit Codebook(std::vector<std::uint8_t> alphabet);

    int sigma() const noexcept { return int(alphabet_.size()); }
    /// Maximum codeword length, floor(log2(sigma + 1)).
    int k() const noexcept { return k_; }
    const std::vector<std::uint8_t>& alphabet() const noexcept { return alphabet_; }

    bool contains(std::uint8_t sym) const noexcept { return rank_[sym] >= 0; }
    /// 0-based rank of a symbol, -1 if absent.
    int rank_of(std::uint8_t sym) const noexcept { return rank_[sym]; }
    Codeword codeword(std::uint8_t sym) const noexcept { return by_symbol_[sym]; }
    int length_of(std::uint8_t sym) const noexcept { return by_symbol_[sym].length; }
    Codeword codeword_at(int rank) const noexcept { return by_rank_[std::size_t(rank)]; }
    std::uint8_t symbol_at(int rank) const noexcept { return alphabet_[std::size_t(rank)]; }
    /// The pad symbol: rank 0, codeword "0".
    std::uint8_t most_frequent() const noexcept { return alphabet_.front(); }

private:
    std::vector<std::uint8_t> alphabet_;
    std::vector<Codeword> by_rank_;
    std::array<Codeword, 256> by_symbol_{};
    std::array<std::int16_t, 256> rank_{};
    int k_ = 0;
};

ByteCounts count_bytes(std::span<const std::uint8_t> data);

/// Symbols with positive count, by descending count then ascending byte value.
Codebook build_codebook(const ByteCounts& counts);

struct EncodedSymbols {
    BitBuffer bits;
    std::vector<std::uint8_t> lengths;
};

EncodedSymbols encode_symbols(std::span<const std::uint8_t> text, const Codebook& cb);

/// Reads `length` bits and maps them back through the codebook.
std::uint8_t decode_next(BitReader& reader, int length, const Codebook& cb);

/// Size of the codeword stream for the given counts: sum of length * count.
std::uint64_t npf_size_bits(const ByteCounts& counts, const Codebook& cb);

} // namespace npf
