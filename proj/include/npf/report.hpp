#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "npf/pipeline.hpp"

// Benchmark rows and block statistics behind the `bench` and `stats` commands.
namespace npf::report {

struct BlockSizeResult {
    int d = 0;
    double total_bps = 0;
    double codeword_bps = 0;
    double pstream_bps = 0;
    double qstream_bps = 0;
    double header_bps = 0;
};

struct BenchRow {
    std::string file;
    std::uint64_t size = 0;
    int sigma = 0;
    int k = 0;
    double entropy = 0;
    double huffman_bps = 0;         ///< payload plus one byte per code length
    double huffman_payload_bps = 0;
    double adaptive_ac_bps = 0;
    std::vector<BlockSizeResult> per_d;
};

/// Runs every method on one buffer. Each NPF encoding is decoded again and
/// checked before its row is reported.
BenchRow bench_bytes(std::string name, std::span<const std::uint8_t> data, std::span<const int> block_sizes);

std::string bench_csv_header(std::span<const int> block_sizes);
std::string bench_csv_row(const BenchRow& row);

/// One histogram bin. kind is "p" (inner sums, all of [d, k*d]) or "q"
/// (observed ranks within one inner sum). domain is psi(k, d, p) for the bin's
/// inner sum.
struct HistogramRow {
    char kind = 'p';
    std::uint64_t value = 0;
    std::uint64_t count = 0;
    std::uint64_t domain = 0;
};

/// Throws Errc::contract when context lies outside [d, k*d].
std::vector<HistogramRow> block_histograms(const BlockAnalysis& blocks, std::optional<int> context);
std::string histogram_csv(std::span<const HistogramRow> rows);

/// Locale-independent fixed-point formatting.
std::string fixed(double v, int precision = 6);

} // namespace npf::report
