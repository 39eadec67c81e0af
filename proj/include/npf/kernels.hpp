#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "npf/bitstream.hpp"
#include "npf/codebook.hpp"
#include "npf/enumeration.hpp"

// Data-parallel stages of the codec. Each stage has a serial reference
// version and an OpenMP version that must produce identical output; the
// adaptive entropy coding between them stays sequential.
namespace npf::kernels {

enum class Backend { serial, parallel };

/// Boundary description of one block: inner sum p and rank q.
struct BlockTuple {
    std::uint16_t p = 0;
    Rank q;
    friend bool operator==(const BlockTuple&, const BlockTuple&) = default;
};

/// Input of the block stages: the text, virtually padded with the codebook's
/// most frequent symbol up to a whole number of blocks.
struct BlockedText {
    std::span<const std::uint8_t> text;
    int d = 1;

    std::uint64_t blocks() const noexcept { return (text.size() + std::size_t(d) - 1) / std::size_t(d); }
    std::uint64_t padded_size() const noexcept { return blocks() * std::uint64_t(d); }
};

ByteCounts histogram_serial(std::span<const std::uint8_t> data);
ByteCounts histogram_omp(std::span<const std::uint8_t> data);

std::vector<BlockTuple> block_tuples_serial(BlockedText in, const Codebook& cb, const PsiTable& table);
std::vector<BlockTuple> block_tuples_omp(BlockedText in, const Codebook& cb, const PsiTable& table);

/// Concatenated codewords of the padded text.
BitBuffer pack_codewords_serial(BlockedText in, const Codebook& cb);
BitBuffer pack_codewords_omp(BlockedText in, const Codebook& cb);

/// Inverse of the block stages: unranks every tuple and reads its codewords
/// from the bitstream, writing the first out.size() symbols (padding is
/// dropped). Returns the number of codeword bits consumed.
std::uint64_t expand_blocks_serial(std::span<const BlockTuple> tuples, const PsiTable& table,
                                   std::span<const std::uint8_t> bits, const Codebook& cb,
                                   std::span<std::uint8_t> out);
std::uint64_t expand_blocks_omp(std::span<const BlockTuple> tuples, const PsiTable& table,
                                std::span<const std::uint8_t> bits, const Codebook& cb,
                                std::span<std::uint8_t> out);

inline ByteCounts histogram(std::span<const std::uint8_t> data, Backend b) {
    return b == Backend::serial ? histogram_serial(data) : histogram_omp(data);
}
inline std::vector<BlockTuple> block_tuples(BlockedText in, const Codebook& cb, const PsiTable& table, Backend b) {
    return b == Backend::serial ? block_tuples_serial(in, cb, table) : block_tuples_omp(in, cb, table);
}
inline BitBuffer pack_codewords(BlockedText in, const Codebook& cb, Backend b) {
    return b == Backend::serial ? pack_codewords_serial(in, cb) : pack_codewords_omp(in, cb);
}
inline std::uint64_t expand_blocks(std::span<const BlockTuple> tuples, const PsiTable& table,
                                   std::span<const std::uint8_t> bits, const Codebook& cb,
                                   std::span<std::uint8_t> out, Backend b) {
    return b == Backend::serial ? expand_blocks_serial(tuples, table, bits, cb, out)
                                : expand_blocks_omp(tuples, table, bits, cb, out);
}

} // namespace npf::kernels
