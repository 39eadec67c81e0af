#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "npf/codebook.hpp"
#include "npf/container.hpp"
#include "npf/kernels.hpp"

namespace npf {

using kernels::Backend;
using kernels::BlockTuple;

struct EncodeParams {
    int d = 6; ///< block size in symbols, [1..16]
    Backend backend = Backend::parallel;
};

/// Rank alphabets up to this size get one adaptive model per inner sum.
/// Larger ones code the high part of the rank adaptively and the low bits raw.
inline constexpr std::uint64_t kDirectRankLimit = std::uint64_t(1) << 14;

Container encode(std::span<const std::uint8_t> text, const EncodeParams& params = {});
std::vector<std::uint8_t> decode(const Container& c, Backend backend = Backend::parallel);

/// Per-stream cost in bits per input symbol.
struct StreamBreakdown {
    std::uint64_t n = 0;
    std::uint64_t codeword_bits = 0; ///< codeword stream without block padding
    std::uint64_t padding_bits = 0;
    double codeword_stream_bps = 0;
    double pstream_bps = 0;
    double qstream_bps = 0;
    double header_bps = 0;
    double total_bps = 0; ///< serialized single-file size
};

StreamBreakdown stream_breakdown(const Container& c);

/// Codebook and block tuples of a text, without entropy coding.
struct BlockAnalysis {
    Codebook codebook;
    int d;
    std::vector<BlockTuple> tuples;
};

BlockAnalysis analyze_blocks(std::span<const std::uint8_t> text, int d, Backend backend = Backend::parallel);

} // namespace npf
