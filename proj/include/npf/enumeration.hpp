#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

// Counting, ranking and unranking of bounded compositions: d-dimensional
// vectors with entries in [1..k] and a fixed inner sum.
namespace npf {

inline constexpr int kMaxDims = 16;
inline constexpr int kMaxBound = 16;

/// Codeword lengths of one block. Fixed capacity so hot loops never allocate.
class LengthVector {
public:
    LengthVector() = default;
    explicit LengthVector(int dims);
    LengthVector(std::initializer_list<int> entries);

    int dims() const noexcept { return dims_; }
    int operator[](int i) const noexcept { return entries_[i]; }
    std::uint8_t& operator[](int i) noexcept { return entries_[i]; }
    int inner_sum() const noexcept;

    std::span<const std::uint8_t> entries() const noexcept { return {entries_.data(), std::size_t(dims_)}; }

    friend bool operator==(const LengthVector& a, const LengthVector& b) noexcept;

private:
    std::array<std::uint8_t, kMaxDims> entries_{};
    int dims_ = 0;
};

/// 0-based lexicographic position among vectors sharing an inner sum.
struct Rank {
    std::uint64_t value = 0;
    friend bool operator==(Rank, Rank) = default;
    friend auto operator<=>(Rank, Rank) = default;
};

/// Exact number of d-vectors over [1..k] summing to v. Zero outside [d, k*d].
/// Throws config_too_large if the count does not fit in 64 bits.
std::uint64_t psi(int k, int d, long long v);

/// psi(k, d', v') for every d' <= d, precomputed once. Immutable after
/// construction, so it can be shared between threads.
class PsiTable {
public:
    PsiTable(int k, int d);

    int bound() const noexcept { return k_; }
    int dims() const noexcept { return d_; }

    std::uint64_t operator()(int dims, int sum) const noexcept {
        if (dims < 0 || dims > d_ || sum < dims || sum > k_ * dims) return 0;
        return counts_[std::size_t(dims) * stride_ + std::size_t(sum)];
    }
    /// Count for the full dimension.
    std::uint64_t count(int sum) const noexcept { return (*this)(d_, sum); }

private:
    int k_;
    int d_;
    std::size_t stride_;
    std::vector<std::uint64_t> counts_;
};

Rank vector_to_index(const LengthVector& vec, const PsiTable& table);

/// Throws invalid_rank when rank >= psi(k, d, sum).
LengthVector index_to_vector(const PsiTable& table, int sum, Rank rank);

/// Brute-force lexicographic listing, for tests. Refuses when k^d > 10^7.
std::vector<LengthVector> enumerate_all(int k, int d, int sum);

} // namespace npf
