#include "npf/range_coder.hpp"

#include <bit>

namespace npf {

AdaptiveModel::AdaptiveModel(std::uint32_t alphabet_size, std::uint32_t increment)
    : size_(alphabet_size), increment_(increment) {
    require(alphabet_size >= 1, "model alphabet must be non-empty");
    require(alphabet_size <= kMaxAlphabet, "model alphabet exceeds 2^15");
    require(increment >= 1 && increment <= 1024, "model increment out of [1..1024]");
    top_bit_ = std::bit_floor(alphabet_size);
    freq_.assign(alphabet_size, 1);
    rebuild();
}

void AdaptiveModel::rescale() {
    for (auto& f : freq_) f = (f + 1) / 2;
    rebuild();
}

void AdaptiveModel::rebuild() {
    tree_.assign(std::size_t(size_) + 1, 0);
    total_ = 0;
    for (std::uint32_t i = 1; i <= size_; ++i) {
        tree_[i] += freq_[i - 1];
        total_ += freq_[i - 1];
        const std::uint32_t parent = i + (i & (0u - i));
        if (parent <= size_) tree_[parent] += tree_[i];
    }
}

RangeDecoder::RangeDecoder(std::span<const std::uint8_t> in) : in_(in) {
    if (in.size() < 5) fail(Errc::truncated_stream, "range coded stream shorter than its 5-byte prologue");
    if (next() != 0) fail(Errc::corrupt_stream, "range coded stream has a non-zero lead byte");
    for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | next();
}

} // namespace npf
