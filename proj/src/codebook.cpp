#include "npf/codebook.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "npf/error.hpp"

namespace npf {

Codeword mbr(std::uint64_t i) {
    require(i >= 2, "mbr requires i >= 2");
    const int length = std::bit_width(i) - 1;
    return Codeword{std::uint32_t(i - (std::uint64_t(1) << length)), length};
}

Codebook::Codebook(std::vector<std::uint8_t> alphabet) : alphabet_(std::move(alphabet)) {
    require(!alphabet_.empty() && alphabet_.size() <= 256, "codebook alphabet size out of [1..256]");
    rank_.fill(-1);
    k_ = std::bit_width(alphabet_.size() + 1) - 1;
    by_rank_.reserve(alphabet_.size());
    for (std::size_t j = 0; j < alphabet_.size(); ++j) {
        const std::uint8_t sym = alphabet_[j];
        require(rank_[sym] < 0, "codebook alphabet has a repeated symbol");
        rank_[sym] = std::int16_t(j);
        by_rank_.push_back(mbr(j + 2));
        by_symbol_[sym] = by_rank_.back();
    }
}

ByteCounts count_bytes(std::span<const std::uint8_t> data) {
    ByteCounts counts{};
    for (std::uint8_t b : data) ++counts[b];
    return counts;
}

Codebook build_codebook(const ByteCounts& counts) {
    std::vector<std::uint8_t> alphabet;
    for (int b = 0; b < 256; ++b)
        if (counts[std::size_t(b)] > 0) alphabet.push_back(std::uint8_t(b));
    if (alphabet.empty()) fail(Errc::empty_input, "cannot build a codebook from empty input");
    std::stable_sort(alphabet.begin(), alphabet.end(),
                     [&](std::uint8_t a, std::uint8_t b) { return counts[a] > counts[b]; });
    return Codebook(std::move(alphabet));
}

EncodedSymbols encode_symbols(std::span<const std::uint8_t> text, const Codebook& cb) {
    EncodedSymbols out;
    out.lengths.reserve(text.size());
    BitWriter writer;
    writer.reserve_bits(std::uint64_t(text.size()) * std::uint64_t(cb.k()));
    for (std::uint8_t sym : text) {
        require(cb.contains(sym), "symbol not in codebook");
        const Codeword cw = cb.codeword(sym);
        writer.put(cw.bits, cw.length);
        out.lengths.push_back(std::uint8_t(cw.length));
    }
    out.bits = std::move(writer).finish();
    return out;
}

std::uint8_t decode_next(BitReader& reader, int length, const Codebook& cb) {
    require(length >= 1 && length <= 24, "codeword length out of range");
    const std::uint32_t value = reader.get(length);
    const std::uint64_t rank = (std::uint64_t(1) << length) + value - 2;
    if (rank >= std::uint64_t(cb.sigma()))
        fail(Errc::corrupt_stream, "codeword rank " + std::to_string(rank + 1) + " exceeds alphabet size");
    return cb.symbol_at(int(rank));
}

std::uint64_t npf_size_bits(const ByteCounts& counts, const Codebook& cb) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 256; ++b) {
        if (counts[std::size_t(b)] == 0) continue;
        require(cb.contains(std::uint8_t(b)), "counts include a symbol absent from the codebook");
        bits += counts[std::size_t(b)] * std::uint64_t(cb.length_of(std::uint8_t(b)));
    }
    return bits;
}

} // namespace npf
