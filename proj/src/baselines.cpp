#include "npf/baselines.hpp"

#include <cmath>
#include <functional>
#include <queue>

#include "npf/error.hpp"
#include "npf/range_coder.hpp"

namespace npf::baselines {

double order0_entropy(const ByteCounts& counts) {
    std::uint64_t n = 0;
    for (auto c : counts) n += c;
    if (n == 0) fail(Errc::undefined_entropy, "entropy of an empty input");
    double h = 0;
    for (auto c : counts) {
        if (c == 0) continue;
        const double p = double(c) / double(n);
        h -= p * std::log2(p);
    }
    return h;
}

double order0_entropy(std::span<const std::uint8_t> text) { return order0_entropy(count_bytes(text)); }

std::array<std::uint8_t, 256> huffman_code_lengths(const ByteCounts& counts) {
    struct Node {
        std::uint64_t weight;
        int left = -1, right = -1;
    };
    std::vector<Node> nodes;
    using Item = std::pair<std::uint64_t, int>; // (weight, node), ties by node id
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    std::array<int, 256> leaf_of{};
    leaf_of.fill(-1);
    for (int b = 0; b < 256; ++b) {
        if (counts[std::size_t(b)] == 0) continue;
        leaf_of[std::size_t(b)] = int(nodes.size());
        heap.emplace(counts[std::size_t(b)], int(nodes.size()));
        nodes.push_back({counts[std::size_t(b)]});
    }
    std::array<std::uint8_t, 256> lengths{};
    if (nodes.empty()) return lengths;
    if (nodes.size() == 1) {
        for (int b = 0; b < 256; ++b)
            if (leaf_of[std::size_t(b)] >= 0) lengths[std::size_t(b)] = 1;
        return lengths;
    }
    while (heap.size() > 1) {
        auto [wa, a] = heap.top();
        heap.pop();
        auto [wb, b] = heap.top();
        heap.pop();
        nodes.push_back({wa + wb, a, b});
        heap.emplace(wa + wb, int(nodes.size()) - 1);
    }
    std::vector<std::uint8_t> depth(nodes.size(), 0);
    for (int i = int(nodes.size()) - 1; i >= 0; --i) {
        if (nodes[std::size_t(i)].left < 0) continue;
        depth[std::size_t(nodes[std::size_t(i)].left)] = std::uint8_t(depth[std::size_t(i)] + 1);
        depth[std::size_t(nodes[std::size_t(i)].right)] = std::uint8_t(depth[std::size_t(i)] + 1);
    }
    for (int b = 0; b < 256; ++b)
        if (leaf_of[std::size_t(b)] >= 0) lengths[std::size_t(b)] = depth[std::size_t(leaf_of[std::size_t(b)])];
    return lengths;
}

CompressionReport huffman_static_size(std::span<const std::uint8_t> text) {
    if (text.empty()) fail(Errc::empty_input, "static Huffman of an empty input");
    const ByteCounts counts = count_bytes(text);
    const auto lengths = huffman_code_lengths(counts);
    CompressionReport r;
    r.method = "huffman_static";
    r.input_size = text.size();
    for (int b = 0; b < 256; ++b) {
        r.payload_bits += counts[std::size_t(b)] * lengths[std::size_t(b)];
        if (counts[std::size_t(b)]) ++r.model_bytes;
    }
    r.compressed_size = (r.payload_bits + 7) / 8 + r.model_bytes;
    return r;
}

std::vector<std::uint8_t> adaptive_ac_encode(std::span<const std::uint8_t> text) {
    AdaptiveModel model(256);
    RangeEncoder enc;
    for (std::uint8_t b : text) enc.encode(model, b);
    return std::move(enc).finish();
}

std::vector<std::uint8_t> adaptive_ac_decode(std::span<const std::uint8_t> payload, std::uint64_t n) {
    AdaptiveModel model(256);
    RangeDecoder dec(payload);
    std::vector<std::uint8_t> out;
    out.reserve(std::size_t(n));
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(std::uint8_t(dec.decode(model)));
    return out;
}

CompressionReport adaptive_ac_size(std::span<const std::uint8_t> text) {
    CompressionReport r;
    r.method = "adaptive_ac";
    r.input_size = text.size();
    r.compressed_size = adaptive_ac_encode(text).size();
    r.payload_bits = r.compressed_size * 8;
    return r;
}

} // namespace npf::baselines
