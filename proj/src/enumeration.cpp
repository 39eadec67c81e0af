#include "npf/enumeration.hpp"

#include <algorithm>
#include <string>

#include "npf/error.hpp"

namespace npf {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out;
    if (__builtin_add_overflow(a, b, &out)) fail(Errc::config_too_large, "composition count exceeds 64 bits");
    return out;
}

} // namespace

LengthVector::LengthVector(int dims) : dims_(dims) {
    require(dims >= 1 && dims <= kMaxDims, "LengthVector dims out of [1..16]");
}

LengthVector::LengthVector(std::initializer_list<int> entries) : LengthVector(int(entries.size())) {
    int i = 0;
    for (int e : entries) {
        require(e >= 1 && e <= 255, "LengthVector entry out of range");
        entries_[i++] = std::uint8_t(e);
    }
}

int LengthVector::inner_sum() const noexcept {
    int s = 0;
    for (int i = 0; i < dims_; ++i) s += entries_[i];
    return s;
}

bool operator==(const LengthVector& a, const LengthVector& b) noexcept {
    return a.dims_ == b.dims_ && std::equal(a.entries_.begin(), a.entries_.begin() + a.dims_, b.entries_.begin());
}

std::uint64_t psi(int k, int d, long long v) {
    require(k >= 1 && d >= 1, "psi requires k >= 1 and d >= 1");
    if (v < d || v > static_cast<long long>(k) * d) return 0;
    const int sum = int(v);
    // row[s] = count of vectors of the current dimension summing to s
    std::vector<std::uint64_t> row(std::size_t(sum) + 1, 0), next(row.size());
    for (int s = 1; s <= std::min(k, sum); ++s) row[s] = 1;
    for (int dim = 2; dim <= d; ++dim) {
        std::fill(next.begin(), next.end(), 0);
        for (int s = dim; s <= std::min(sum, k * dim); ++s) {
            std::uint64_t acc = 0;
            for (int i = 1; i <= k && s - i >= dim - 1; ++i) acc = checked_add(acc, row[s - i]);
            next[s] = acc;
        }
        row.swap(next);
    }
    return row[sum];
}

PsiTable::PsiTable(int k, int d)
    : k_(k), d_(d), stride_(std::size_t(k) * std::size_t(d) + 1) {
    require(k >= 1 && k <= kMaxBound, "PsiTable bound out of [1..16]");
    require(d >= 1 && d <= kMaxDims, "PsiTable dims out of [1..16]");
    counts_.assign((std::size_t(d) + 1) * stride_, 0);
    counts_[0] = 1; // the empty vector sums to 0
    for (int dim = 1; dim <= d; ++dim) {
        for (int s = dim; s <= k * dim; ++s) {
            const int lo = std::max(1, s - k * (dim - 1));
            const int hi = std::min(k, s - dim + 1);
            std::uint64_t acc = 0;
            for (int i = lo; i <= hi; ++i)
                acc = checked_add(acc, counts_[std::size_t(dim - 1) * stride_ + std::size_t(s - i)]);
            counts_[std::size_t(dim) * stride_ + std::size_t(s)] = acc;
        }
    }
}

Rank vector_to_index(const LengthVector& vec, const PsiTable& table) {
    const int d = table.dims();
    const int k = table.bound();
    require(vec.dims() == d, "vector dimension does not match table");
    int remaining = vec.inner_sum();
    std::uint64_t index = 0;
    for (int j = 0; j + 1 < d; ++j) {
        const int e = vec[j];
        require(e >= 1 && e <= k, "vector entry out of [1..k]");
        const int rest = d - j - 1;
        for (int i = 1; i < e; ++i) index += table(rest, remaining - i);
        remaining -= e;
    }
    require(vec[d - 1] >= 1 && vec[d - 1] <= k, "vector entry out of [1..k]");
    return Rank{index};
}

LengthVector index_to_vector(const PsiTable& table, int sum, Rank rank) {
    const int d = table.dims();
    const int k = table.bound();
    const std::uint64_t total = table.count(sum);
    if (rank.value >= total)
        fail(Errc::invalid_rank, "rank " + std::to_string(rank.value) + " out of range for sum " + std::to_string(sum));
    LengthVector out(d);
    std::uint64_t left = rank.value;
    int remaining = sum;
    for (int j = 0; j + 1 < d; ++j) {
        const int rest = d - j - 1;
        int e = 1;
        for (std::uint64_t z; e < k && (z = table(rest, remaining - e)) <= left; ++e) left -= z;
        out[j] = std::uint8_t(e);
        remaining -= e;
    }
    out[d - 1] = std::uint8_t(remaining);
    return out;
}

std::vector<LengthVector> enumerate_all(int k, int d, int sum) {
    require(k >= 1 && d >= 1 && d <= kMaxDims, "enumerate_all requires k >= 1 and d in [1..16]");
    double space = 1;
    for (int i = 0; i < d; ++i) space *= k;
    require(space <= 1e7, "enumerate_all refuses k^d > 10^7");

    std::vector<LengthVector> out;
    LengthVector cur(d);
    for (int i = 0; i < d; ++i) cur[i] = 1;
    // odometer over [1..k]^d, last position fastest => lexicographic order
    while (true) {
        if (cur.inner_sum() == sum) out.push_back(cur);
        int pos = d - 1;
        while (pos >= 0 && cur[pos] == k) cur[pos--] = 1;
        if (pos < 0) break;
        ++cur[pos];
    }
    return out;
}

} // namespace npf
