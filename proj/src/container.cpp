#include "npf/container.hpp"

#include <zlib.h>

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <string>

#include "npf/error.hpp"
#include "npf/enumeration.hpp"

namespace npf {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'N', 'P', 'F', 'C'};
constexpr std::size_t kFixedHeader = 4 + 1 + 1 + 8 + 1 + 2 + 4;

class ByteSink {
public:
    explicit ByteSink(std::vector<std::uint8_t>& out) : out_(out) {}
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v) { le(v, 2); }
    void u32(std::uint32_t v) { le(v, 4); }
    void u64(std::uint64_t v) { le(v, 8); }
    void raw(std::span<const std::uint8_t> bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }

private:
    void le(std::uint64_t v, int width) {
        for (int i = 0; i < width; ++i) out_.push_back(std::uint8_t(v >> (8 * i)));
    }
    std::vector<std::uint8_t>& out_;
};

class ByteSource {
public:
    explicit ByteSource(std::span<const std::uint8_t> in) : in_(in) {}
    std::uint8_t u8() { return std::uint8_t(le(1)); }
    std::uint16_t u16() { return std::uint16_t(le(2)); }
    std::uint32_t u32() { return std::uint32_t(le(4)); }
    std::uint64_t u64() { return le(8); }
    std::vector<std::uint8_t> raw(std::uint64_t count) {
        need(count);
        std::vector<std::uint8_t> out(in_.begin() + std::ptrdiff_t(pos_), in_.begin() + std::ptrdiff_t(pos_ + count));
        pos_ += std::size_t(count);
        return out;
    }
    std::size_t remaining() const noexcept { return in_.size() - pos_; }

private:
    void need(std::uint64_t count) const {
        if (count > remaining()) fail(Errc::truncated_stream, "container ends before its declared contents");
    }
    std::uint64_t le(int width) {
        need(std::uint64_t(width));
        std::uint64_t v = 0;
        for (int i = 0; i < width; ++i) v |= std::uint64_t(in_[pos_ + std::size_t(i)]) << (8 * i);
        pos_ += std::size_t(width);
        return v;
    }
    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

int stream_count(Container::Part part) {
    switch (part) {
    case Container::Part::full: return 3;
    case Container::Part::codewords: return 1;
    case Container::Part::boundaries: return 2;
    }
    return 0;
}

void check_header(const Container& c) {
    if (c.d < 1 || c.d > kMaxDims) fail(Errc::header_malformed, "block size " + std::to_string(c.d) + " out of [1..16]");
    if (c.n == 0 && !c.alphabet.empty()) fail(Errc::header_malformed, "empty input with a non-empty alphabet");
    if (c.n > 0 && c.alphabet.empty()) fail(Errc::header_malformed, "non-empty input with an empty alphabet");
    std::array<bool, 256> seen{};
    for (std::uint8_t b : c.alphabet) {
        if (seen[b]) fail(Errc::header_malformed, "alphabet lists a byte twice");
        seen[b] = true;
    }
}

} // namespace

int Container::k() const noexcept {
    return alphabet.empty() ? 0 : std::bit_width(alphabet.size() + 1) - 1;
}

std::size_t Container::header_size() const noexcept {
    return kFixedHeader + alphabet.size() + 8 * std::size_t(stream_count(part));
}

std::vector<std::uint8_t> serialize(const Container& c) {
    check_header(c);
    std::vector<std::uint8_t> out;
    out.reserve(c.header_size() + c.codewords.size() + c.pstream.size() + c.qstream.size());
    ByteSink sink(out);
    sink.raw(kMagic);
    sink.u8(Container::kVersion);
    sink.u8(std::uint8_t(c.part));
    sink.u64(c.n);
    sink.u8(std::uint8_t(c.d));
    sink.u16(std::uint16_t(c.alphabet.size()));
    sink.u32(c.checksum);
    sink.raw(c.alphabet);
    if (c.has_codewords()) sink.u64(c.codewords.size());
    if (c.has_boundaries()) {
        sink.u64(c.pstream.size());
        sink.u64(c.qstream.size());
    }
    if (c.has_codewords()) sink.raw(c.codewords);
    if (c.has_boundaries()) {
        sink.raw(c.pstream);
        sink.raw(c.qstream);
    }
    return out;
}

Container parse(std::span<const std::uint8_t> bytes) {
    ByteSource src(bytes);
    if (bytes.size() < kMagic.size() || std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0)
        fail(Errc::bad_magic, "not an NPF container");
    src.raw(kMagic.size());
    const std::uint8_t version = src.u8();
    if (version != Container::kVersion)
        fail(Errc::version_mismatch, "container version " + std::to_string(version) + ", expected " +
                                         std::to_string(Container::kVersion));
    Container c;
    const std::uint8_t part = src.u8();
    if (part > 2) fail(Errc::header_malformed, "unknown container part " + std::to_string(part));
    c.part = Container::Part(part);
    c.n = src.u64();
    c.d = src.u8();
    const std::uint16_t sigma = src.u16();
    if (sigma > 256) fail(Errc::header_malformed, "alphabet size " + std::to_string(sigma) + " exceeds 256");
    c.checksum = src.u32();
    c.alphabet = src.raw(sigma);
    check_header(c);

    std::uint64_t len_b = 0, len_p = 0, len_q = 0;
    if (c.has_codewords()) len_b = src.u64();
    if (c.has_boundaries()) {
        len_p = src.u64();
        len_q = src.u64();
    }
    const std::uint64_t declared = len_b + len_p + len_q;
    if (len_b > bytes.size() || len_p > bytes.size() || len_q > bytes.size() || declared > src.remaining())
        fail(Errc::truncated_stream, "container payload shorter than its declared stream lengths");
    if (declared < src.remaining()) fail(Errc::length_mismatch, "container has bytes beyond its declared streams");
    c.codewords = src.raw(len_b);
    c.pstream = src.raw(len_p);
    c.qstream = src.raw(len_q);
    return c;
}

SplitParts split(const Container& c) {
    if (c.part != Container::Part::full) fail(Errc::contract, "only a full container can be split");
    SplitParts parts{c, c};
    parts.codewords.part = Container::Part::codewords;
    parts.codewords.pstream.clear();
    parts.codewords.qstream.clear();
    parts.boundaries.part = Container::Part::boundaries;
    parts.boundaries.codewords.clear();
    return parts;
}

Container join(const Container& codewords, const Container& boundaries) {
    if (codewords.part != Container::Part::codewords) fail(Errc::missing_codeword_stream, "first part holds no codeword stream");
    if (boundaries.part != Container::Part::boundaries)
        fail(Errc::missing_boundary_stream, "second part holds no boundary streams");
    if (codewords.n != boundaries.n || codewords.d != boundaries.d || codewords.alphabet != boundaries.alphabet ||
        codewords.checksum != boundaries.checksum)
        fail(Errc::header_malformed, "split parts belong to different containers");
    Container c = codewords;
    c.part = Container::Part::full;
    c.pstream = boundaries.pstream;
    c.qstream = boundaries.qstream;
    return c;
}

std::uint32_t crc32_of(std::span<const std::uint8_t> data) {
    uLong crc = crc32(0L, Z_NULL, 0);
    constexpr std::size_t kChunk = std::size_t(1) << 30;
    for (std::size_t off = 0; off < data.size(); off += kChunk) {
        const std::size_t len = std::min(kChunk, data.size() - off);
        crc = crc32(crc, data.data() + off, uInt(len));
    }
    return std::uint32_t(crc);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io, "cannot open " + path.string());
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) fail(Errc::io, "read failed on " + path.string());
    return data;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::io, "cannot create " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) fail(Errc::io, "write failed on " + path.string());
}

std::filesystem::path codeword_part_path(std::filesystem::path base) { return base.replace_extension(".npfb"); }
std::filesystem::path boundary_part_path(std::filesystem::path base) { return base.replace_extension(".npfk"); }

void write_container(const std::filesystem::path& path, const Container& c, bool split_streams) {
    if (!split_streams) {
        write_file(path, serialize(c));
        return;
    }
    const SplitParts parts = split(c);
    write_file(codeword_part_path(path), serialize(parts.codewords));
    write_file(boundary_part_path(path), serialize(parts.boundaries));
}

Container read_container(const std::filesystem::path& path) {
    Container c = parse(read_file(path));
    if (c.part == Container::Part::full) return c;
    const bool have_b = c.part == Container::Part::codewords;
    const auto companion = have_b ? boundary_part_path(path) : codeword_part_path(path);
    if (!std::filesystem::exists(companion)) return c;
    Container other = parse(read_file(companion));
    return have_b ? join(c, other) : join(other, c);
}

} // namespace npf
