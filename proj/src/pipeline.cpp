#include "npf/pipeline.hpp"

#include <bit>
#include <memory>
#include <optional>
#include <string>

#include "npf/enumeration.hpp"
#include "npf/error.hpp"
#include "npf/range_coder.hpp"

namespace npf {

namespace {

void check_block_size(int d) {
    if (d < 1 || d > kMaxDims) fail(Errc::contract, "block size " + std::to_string(d) + " out of [1..16]");
}

// One adaptive rank model per inner sum, created on first use.
class RankContexts {
public:
    explicit RankContexts(const PsiTable& table) : table_(table), slots_(std::size_t(table.bound() * table.dims()) + 1) {}

    void encode(RangeEncoder& enc, int p, Rank q) {
        Slot& s = slot(p);
        enc.encode(*s.model, std::uint32_t(q.value >> s.shift));
        put_raw(enc, q.value, s.shift);
    }

    Rank decode(RangeDecoder& dec, int p) {
        Slot& s = slot(p);
        std::uint64_t q = std::uint64_t(dec.decode(*s.model)) << s.shift;
        for (int left = s.shift; left > 0;) {
            const int w = left > 16 ? 16 : left;
            left -= w;
            q |= std::uint64_t(dec.decode_bits(w)) << left;
        }
        return Rank{q};
    }

private:
    struct Slot {
        std::unique_ptr<AdaptiveModel> model;
        int shift = 0;
    };

    static void put_raw(RangeEncoder& enc, std::uint64_t value, int width) {
        for (int left = width; left > 0;) {
            const int w = left > 16 ? 16 : left;
            left -= w;
            enc.encode_bits(std::uint32_t((value >> left) & ((1u << w) - 1)), w);
        }
    }

    Slot& slot(int p) {
        Slot& s = slots_[std::size_t(p)];
        if (!s.model) {
            const std::uint64_t count = table_.count(p);
            int shift = 0;
            while (((count - 1) >> shift) + 1 > kDirectRankLimit) ++shift;
            s.shift = shift;
            s.model = std::make_unique<AdaptiveModel>(std::uint32_t(((count - 1) >> shift) + 1));
        }
        return s;
    }

    const PsiTable& table_;
    std::vector<Slot> slots_;
};

bool rank_coded(int p, int d, int k) { return p != d && p != k * d; }

} // namespace

Container encode(std::span<const std::uint8_t> text, const EncodeParams& params) {
    check_block_size(params.d);
    Container c;
    c.d = params.d;
    c.n = text.size();
    c.checksum = crc32_of(text);
    if (text.empty()) {
        c.pstream = RangeEncoder{}.finish();
        c.qstream = RangeEncoder{}.finish();
        return c;
    }

    const BlockAnalysis blocks = analyze_blocks(text, params.d, params.backend);
    const Codebook& cb = blocks.codebook;
    const int d = params.d;
    const int k = cb.k();
    c.alphabet = cb.alphabet();
    c.codewords = kernels::pack_codewords({text, d}, cb, params.backend).bytes;

    const PsiTable table(k, d);
    AdaptiveModel pmodel(std::uint32_t(k * d - d + 1));
    RankContexts contexts(table);
    RangeEncoder penc, qenc;
    for (const BlockTuple& t : blocks.tuples) {
        penc.encode(pmodel, std::uint32_t(t.p - d));
        if (rank_coded(t.p, d, k)) contexts.encode(qenc, t.p, t.q);
    }
    c.pstream = std::move(penc).finish();
    c.qstream = std::move(qenc).finish();
    return c;
}

std::vector<std::uint8_t> decode(const Container& c, Backend backend) {
    if (!c.has_codewords()) fail(Errc::missing_codeword_stream, "container holds no codeword stream (.npfb)");
    if (!c.has_boundaries()) fail(Errc::missing_boundary_stream, "container holds no boundary streams (.npfk)");
    if (c.d < 1 || c.d > kMaxDims) fail(Errc::header_malformed, "block size out of [1..16]");

    std::vector<std::uint8_t> out;
    if (c.n == 0) {
        if (!c.codewords.empty()) fail(Errc::length_mismatch, "empty input with a non-empty codeword stream");
        RangeDecoder pdec(c.pstream), qdec(c.qstream);
        if (!pdec.at_end() || !qdec.at_end()) fail(Errc::length_mismatch, "trailing bytes in boundary streams");
    } else {
        if (c.alphabet.empty()) fail(Errc::header_malformed, "non-empty input with an empty alphabet");
        const Codebook cb(c.alphabet);
        const int d = c.d;
        const int k = cb.k();
        const std::uint64_t r = (c.n + std::uint64_t(d) - 1) / std::uint64_t(d);
        // every codeword holds at least one bit
        if (r > std::uint64_t(c.codewords.size()) * 8 / std::uint64_t(d))
            fail(Errc::truncated_stream, "codeword stream too short for " + std::to_string(c.n) + " symbols");

        const PsiTable table(k, d);
        AdaptiveModel pmodel(std::uint32_t(k * d - d + 1));
        RankContexts contexts(table);
        RangeDecoder pdec(c.pstream), qdec(c.qstream);
        std::vector<BlockTuple> tuples(static_cast<std::size_t>(r));
        for (auto& t : tuples) {
            t.p = std::uint16_t(pdec.decode(pmodel) + std::uint32_t(d));
            if (rank_coded(t.p, d, k)) t.q = contexts.decode(qdec, t.p);
        }
        if (!pdec.at_end()) fail(Errc::length_mismatch, "trailing bytes in Pstream");
        if (!qdec.at_end()) fail(Errc::length_mismatch, "trailing bytes in Qstream");

        out.resize(std::size_t(c.n));
        const std::uint64_t used = kernels::expand_blocks(tuples, table, c.codewords, cb, out, backend);
        if ((used + 7) / 8 != c.codewords.size()) fail(Errc::length_mismatch, "codeword stream has unused bytes");
        if ((used & 7) != 0 && (c.codewords.back() & ((1u << (8 - (used & 7))) - 1)) != 0)
            fail(Errc::corrupt_stream, "non-zero padding after the last codeword");
    }
    if (crc32_of(out) != c.checksum) fail(Errc::checksum_mismatch, "decoded bytes do not match the stored CRC-32");
    return out;
}

StreamBreakdown stream_breakdown(const Container& c) {
    StreamBreakdown s;
    s.n = c.n;
    if (c.n == 0) return s;
    if (!c.has_codewords() || !c.has_boundaries()) fail(Errc::contract, "stream breakdown needs a full container");
    const int d = c.d;
    const int k = c.k();
    const std::uint64_t r = (c.n + std::uint64_t(d) - 1) / std::uint64_t(d);

    AdaptiveModel pmodel(std::uint32_t(k * d - d + 1));
    RangeDecoder pdec(c.pstream);
    std::uint64_t bits = 0;
    for (std::uint64_t i = 0; i < r; ++i) bits += pdec.decode(pmodel) + std::uint64_t(d);
    // pad symbols are the rank-0 symbol, whose codeword is one bit
    s.padding_bits = r * std::uint64_t(d) - c.n;
    s.codeword_bits = bits - s.padding_bits;

    const double n = double(c.n);
    s.codeword_stream_bps = double(s.codeword_bits) / n;
    s.pstream_bps = 8.0 * double(c.pstream.size()) / n;
    s.qstream_bps = 8.0 * double(c.qstream.size()) / n;
    s.header_bps = 8.0 * double(c.header_size()) / n;
    s.total_bps = 8.0 * double(c.header_size() + c.codewords.size() + c.pstream.size() + c.qstream.size()) / n;
    return s;
}

BlockAnalysis analyze_blocks(std::span<const std::uint8_t> text, int d, Backend backend) {
    check_block_size(d);
    Codebook cb = build_codebook(kernels::histogram(text, backend));
    const PsiTable table(cb.k(), d);
    auto tuples = kernels::block_tuples({text, d}, cb, table, backend);
    return BlockAnalysis{std::move(cb), d, std::move(tuples)};
}

} // namespace npf
