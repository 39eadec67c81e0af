#include "npf/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <cstring>
#include <exception>
#include <limits>

#include "npf/error.hpp"

namespace npf::kernels {

namespace {

using LengthTable = std::array<std::uint8_t, 256>;

LengthTable length_table(const Codebook& cb) {
    LengthTable t{};
    for (int b = 0; b < 256; ++b)
        if (cb.contains(std::uint8_t(b))) t[std::size_t(b)] = std::uint8_t(cb.length_of(std::uint8_t(b)));
    return t;
}

void check_alphabet(std::span<const std::uint8_t> text, const LengthTable& lengths) {
    for (std::uint8_t b : text) require(lengths[b] != 0, "symbol not in codebook");
}

BlockTuple make_tuple(BlockedText in, std::uint64_t block, const LengthTable& lengths, std::uint8_t pad,
                      const PsiTable& table) {
    LengthVector vec(in.d);
    const std::uint64_t base = block * std::uint64_t(in.d);
    for (int j = 0; j < in.d; ++j) {
        const std::uint64_t idx = base + std::uint64_t(j);
        vec[j] = lengths[idx < in.text.size() ? in.text[std::size_t(idx)] : pad];
    }
    return BlockTuple{std::uint16_t(vec.inner_sum()), vector_to_index(vec, table)};
}

LengthVector block_vector(const BlockTuple& t, const PsiTable& table) {
    return index_to_vector(table, t.p, t.q);
}

// Reads one block's codewords starting at reader's position.
void expand_one(std::uint64_t block, const BlockTuple& t, const PsiTable& table, BitReader& reader,
                const Codebook& cb, std::span<std::uint8_t> out) {
    const LengthVector vec = block_vector(t, table);
    const int d = table.dims();
    const std::uint64_t base = block * std::uint64_t(d);
    for (int j = 0; j < d; ++j) {
        const std::uint8_t sym = decode_next(reader, vec[j], cb);
        if (base + std::uint64_t(j) < out.size()) out[std::size_t(base) + std::size_t(j)] = sym;
    }
}

void check_output_size(std::span<const BlockTuple> tuples, const PsiTable& table, std::size_t n) {
    const std::uint64_t cap = std::uint64_t(tuples.size()) * std::uint64_t(table.dims());
    if (n > cap || (!tuples.empty() && cap - n >= std::uint64_t(table.dims())))
        fail(Errc::length_mismatch, "block count does not match the symbol count");
}

} // namespace

ByteCounts histogram_serial(std::span<const std::uint8_t> data) { return count_bytes(data); }

ByteCounts histogram_omp(std::span<const std::uint8_t> data) {
    ByteCounts total{};
    const std::int64_t n = std::int64_t(data.size());
#pragma omp parallel
    {
        ByteCounts local{};
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < n; ++i) ++local[data[std::size_t(i)]];
#pragma omp critical(npf_histogram_merge)
        for (std::size_t b = 0; b < 256; ++b) total[b] += local[b];
    }
    return total;
}

std::vector<BlockTuple> block_tuples_serial(BlockedText in, const Codebook& cb, const PsiTable& table) {
    const LengthTable lengths = length_table(cb);
    check_alphabet(in.text, lengths);
    std::vector<BlockTuple> out(std::size_t(in.blocks()));
    for (std::uint64_t i = 0; i < out.size(); ++i) out[i] = make_tuple(in, i, lengths, cb.most_frequent(), table);
    return out;
}

std::vector<BlockTuple> block_tuples_omp(BlockedText in, const Codebook& cb, const PsiTable& table) {
    const LengthTable lengths = length_table(cb);
    check_alphabet(in.text, lengths);
    std::vector<BlockTuple> out(std::size_t(in.blocks()));
    const std::int64_t r = std::int64_t(out.size());
    const std::uint8_t pad = cb.most_frequent();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < r; ++i) out[std::size_t(i)] = make_tuple(in, std::uint64_t(i), lengths, pad, table);
    return out;
}

BitBuffer pack_codewords_serial(BlockedText in, const Codebook& cb) {
    BitWriter writer;
    writer.reserve_bits(in.padded_size() * std::uint64_t(cb.k()));
    for (std::uint8_t sym : in.text) {
        require(cb.contains(sym), "symbol not in codebook");
        const Codeword cw = cb.codeword(sym);
        writer.put(cw.bits, cw.length);
    }
    const Codeword pad = cb.codeword(cb.most_frequent());
    for (std::uint64_t i = in.text.size(); i < in.padded_size(); ++i) writer.put(pad.bits, pad.length);
    return std::move(writer).finish();
}

BitBuffer pack_codewords_omp(BlockedText in, const Codebook& cb) {
    const LengthTable lengths = length_table(cb);
    check_alphabet(in.text, lengths);
    const std::uint64_t n = in.text.size();
    const std::uint64_t padded = in.padded_size();
    const Codeword pad = cb.codeword(cb.most_frequent());

    const int chunks = std::max(1, omp_get_max_threads());
    std::vector<std::uint64_t> chunk_bits(std::size_t(chunks) + 1, 0);
    std::vector<BitBuffer> parts(static_cast<std::size_t>(chunks));
    auto chunk_begin = [&](int c) { return padded * std::uint64_t(c) / std::uint64_t(chunks); };

#pragma omp parallel for schedule(static)
    for (int c = 0; c < chunks; ++c) {
        std::uint64_t bits = 0;
        for (std::uint64_t i = chunk_begin(c); i < chunk_begin(c + 1); ++i)
            bits += i < n ? lengths[in.text[std::size_t(i)]] : std::uint64_t(pad.length);
        chunk_bits[std::size_t(c) + 1] = bits;
    }
    for (int c = 0; c < chunks; ++c) chunk_bits[std::size_t(c) + 1] += chunk_bits[std::size_t(c)];

#pragma omp parallel for schedule(static)
    for (int c = 0; c < chunks; ++c) {
        BitWriter writer;
        // leading zeros align the local buffer with the global byte grid
        const int phase = int(chunk_bits[std::size_t(c)] & 7);
        if (phase) writer.put(0, phase);
        for (std::uint64_t i = chunk_begin(c); i < chunk_begin(c + 1); ++i) {
            const Codeword cw = i < n ? cb.codeword(in.text[std::size_t(i)]) : pad;
            writer.put(cw.bits, cw.length);
        }
        parts[std::size_t(c)] = std::move(writer).finish();
    }

    BitBuffer out;
    out.bit_count = chunk_bits.back();
    out.bytes.assign(std::size_t((out.bit_count + 7) / 8), 0);
    for (int c = 0; c < chunks; ++c) {
        const auto& part = parts[std::size_t(c)].bytes;
        if (part.empty()) continue;
        const std::size_t start = std::size_t(chunk_bits[std::size_t(c)] >> 3);
        out.bytes[start] |= part[0];
        if (part.size() > 1) std::memcpy(out.bytes.data() + start + 1, part.data() + 1, part.size() - 1);
    }
    return out;
}

std::uint64_t expand_blocks_serial(std::span<const BlockTuple> tuples, const PsiTable& table,
                                   std::span<const std::uint8_t> bits, const Codebook& cb,
                                   std::span<std::uint8_t> out) {
    check_output_size(tuples, table, out.size());
    BitReader reader(bits);
    for (std::size_t i = 0; i < tuples.size(); ++i) expand_one(i, tuples[i], table, reader, cb, out);
    return reader.position();
}

std::uint64_t expand_blocks_omp(std::span<const BlockTuple> tuples, const PsiTable& table,
                                std::span<const std::uint8_t> bits, const Codebook& cb,
                                std::span<std::uint8_t> out) {
    check_output_size(tuples, table, out.size());
    const std::int64_t r = std::int64_t(tuples.size());
    if (r == 0) return 0;

    // exclusive scan of block bit lengths, two passes over per-thread partials
    std::vector<std::uint64_t> offsets(std::size_t(r) + 1, 0);
    std::vector<std::uint64_t> partial;
#pragma omp parallel
    {
        const int tid = omp_get_thread_num();
        const int nthreads = omp_get_num_threads();
#pragma omp single
        partial.assign(std::size_t(nthreads) + 1, 0);
        std::uint64_t sum = 0;
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < r; ++i) {
            sum += tuples[std::size_t(i)].p;
            offsets[std::size_t(i) + 1] = sum;
        }
        partial[std::size_t(tid) + 1] = sum;
#pragma omp barrier
#pragma omp single
        for (int t = 1; t <= nthreads; ++t) partial[std::size_t(t)] += partial[std::size_t(t) - 1];
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < r; ++i) offsets[std::size_t(i) + 1] += partial[std::size_t(tid)];
    }

    // first failing block wins, matching the serial error
    std::atomic<std::int64_t> first_bad{std::numeric_limits<std::int64_t>::max()};
    std::exception_ptr error;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < r; ++i) {
        if (i > first_bad.load(std::memory_order_relaxed)) continue;
        try {
            BitReader reader(bits, offsets[std::size_t(i)]);
            expand_one(std::uint64_t(i), tuples[std::size_t(i)], table, reader, cb, out);
        } catch (...) {
#pragma omp critical(npf_expand_error)
            if (i < first_bad.load()) {
                first_bad.store(i);
                error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);
    return offsets.back();
}

} // namespace npf::kernels
