#include "npf/report.hpp"

#include <charconv>
#include <map>

#include "npf/baselines.hpp"
#include "npf/enumeration.hpp"
#include "npf/error.hpp"

namespace npf::report {

std::string fixed(double v, int precision) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
    return std::string(buf, res.ptr);
}

BenchRow bench_bytes(std::string name, std::span<const std::uint8_t> data, std::span<const int> block_sizes) {
    BenchRow row;
    row.file = std::move(name);
    row.size = data.size();
    if (!data.empty()) {
        const ByteCounts counts = count_bytes(data);
        const Codebook cb = build_codebook(counts);
        row.sigma = cb.sigma();
        row.k = cb.k();
        row.entropy = baselines::order0_entropy(counts);
        const auto huff = baselines::huffman_static_size(data);
        row.huffman_bps = huff.bits_per_symbol();
        row.huffman_payload_bps = huff.payload_bps();
        row.adaptive_ac_bps = baselines::adaptive_ac_size(data).bits_per_symbol();
    }
    for (int d : block_sizes) {
        const Container c = encode(data, {.d = d});
        if (decode(c) != std::vector<std::uint8_t>(data.begin(), data.end()))
            fail(Errc::corrupt_stream, "round trip mismatch at d=" + std::to_string(d));
        const StreamBreakdown s = stream_breakdown(c);
        row.per_d.push_back({d, s.total_bps, s.codeword_stream_bps, s.pstream_bps, s.qstream_bps, s.header_bps});
    }
    return row;
}

std::string bench_csv_header(std::span<const int> block_sizes) {
    std::string h = "file,size,sigma,k,entropy,huffman_bps,huffman_payload_bps,adaptive_ac_bps";
    for (int d : block_sizes) {
        const std::string s = std::to_string(d);
        h += ",npf_bps_d" + s + ",codeword_bps_d" + s + ",pstream_bps_d" + s + ",qstream_bps_d" + s + ",header_bps_d" + s;
    }
    return h;
}

std::string bench_csv_row(const BenchRow& row) {
    std::string out = row.file + "," + std::to_string(row.size) + "," + std::to_string(row.sigma) + "," +
                      std::to_string(row.k) + "," + fixed(row.entropy) + "," + fixed(row.huffman_bps) + "," +
                      fixed(row.huffman_payload_bps) + "," + fixed(row.adaptive_ac_bps);
    for (const auto& r : row.per_d)
        out += "," + fixed(r.total_bps) + "," + fixed(r.codeword_bps) + "," + fixed(r.pstream_bps) + "," +
               fixed(r.qstream_bps) + "," + fixed(r.header_bps);
    return out;
}

std::vector<HistogramRow> block_histograms(const BlockAnalysis& blocks, std::optional<int> context) {
    const int d = blocks.d;
    const int k = blocks.codebook.k();
    const PsiTable table(k, d);
    if (context && (*context < d || *context > k * d))
        fail(Errc::contract, "context " + std::to_string(*context) + " outside [" + std::to_string(d) + ".." +
                                 std::to_string(k * d) + "]");

    std::vector<std::uint64_t> pcount(std::size_t(k * d) + 1, 0);
    std::map<std::uint64_t, std::uint64_t> qcount;
    for (const auto& t : blocks.tuples) {
        ++pcount[t.p];
        if (context && t.p == *context) ++qcount[t.q.value];
    }
    std::vector<HistogramRow> rows;
    for (int p = d; p <= k * d; ++p) rows.push_back({'p', std::uint64_t(p), pcount[std::size_t(p)], table.count(p)});
    if (context)
        for (auto [q, n] : qcount) rows.push_back({'q', q, n, table.count(*context)});
    return rows;
}

std::string histogram_csv(std::span<const HistogramRow> rows) {
    std::string out = "kind,value,count,domain\n";
    for (const auto& r : rows)
        out += std::string(1, r.kind) + "," + std::to_string(r.value) + "," + std::to_string(r.count) + "," +
               std::to_string(r.domain) + "\n";
    return out;
}

} // namespace npf::report
