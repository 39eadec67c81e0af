#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "npf/codebook.hpp"

// Reference compressors for the benchmark: order-0 entropy, static Huffman
// and order-0 adaptive arithmetic coding.
namespace npf::baselines {

struct CompressionReport {
    std::string method;
    std::uint64_t input_size = 0;
    std::uint64_t payload_bits = 0;
    std::uint64_t model_bytes = 0; ///< side information (code lengths, ...)
    std::uint64_t compressed_size = 0; ///< bytes, payload rounded up plus model

    double bits_per_symbol() const noexcept {
        return input_size ? 8.0 * double(compressed_size) / double(input_size) : 0.0;
    }
    double payload_bps() const noexcept {
        return input_size ? double(payload_bits) / double(input_size) : 0.0;
    }
};

double order0_entropy(const ByteCounts& counts);
double order0_entropy(std::span<const std::uint8_t> text);

/// Huffman code lengths for the given counts (0 for absent bytes). A lone
/// symbol gets length 1.
std::array<std::uint8_t, 256> huffman_code_lengths(const ByteCounts& counts);

CompressionReport huffman_static_size(std::span<const std::uint8_t> text);

/// Order-0 adaptive arithmetic coding over the byte alphabet.
std::vector<std::uint8_t> adaptive_ac_encode(std::span<const std::uint8_t> text);
std::vector<std::uint8_t> adaptive_ac_decode(std::span<const std::uint8_t> payload, std::uint64_t n);
CompressionReport adaptive_ac_size(std::span<const std::uint8_t> text);

} // namespace npf::baselines
