#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace npf {

/// Persisted artifact: header, codeword bitstream, Pstream and Qstream.
///
/// Layout (integers little-endian):
///   magic "NPFC" | version u8 | part u8 | n u64 | d u8 | sigma u16 | crc32 u32
///   | alphabet[sigma] | stream lengths u64... | payloads...
/// A full container lists B, P and Q. Split storage writes a codeword part
/// (.npfb, lengths and payload of B only) and a boundary part (.npfk, P and Q)
/// that both carry the same header, so neither half decodes on its own.
struct Container {
    enum class Part : std::uint8_t { full = 0, codewords = 1, boundaries = 2 };

    static constexpr std::uint8_t kVersion = 1;

    Part part = Part::full;
    std::uint64_t n = 0;
    int d = 1;
    std::vector<std::uint8_t> alphabet; // codebook order, most frequent first
    std::uint32_t checksum = 0;         // CRC-32 of the original bytes

    std::vector<std::uint8_t> codewords;
    std::vector<std::uint8_t> pstream;
    std::vector<std::uint8_t> qstream;

    int sigma() const noexcept { return int(alphabet.size()); }
    /// floor(log2(sigma + 1)); 0 for an empty alphabet.
    int k() const noexcept;
    bool has_codewords() const noexcept { return part != Part::boundaries; }
    bool has_boundaries() const noexcept { return part != Part::codewords; }

    /// Bytes of header and length table, i.e. everything except payloads.
    std::size_t header_size() const noexcept;

    friend bool operator==(const Container&, const Container&) = default;
};

std::vector<std::uint8_t> serialize(const Container& c);
/// Validating parser; every malformed input maps to a distinct Errc.
Container parse(std::span<const std::uint8_t> bytes);

struct SplitParts {
    Container codewords;  // .npfb
    Container boundaries; // .npfk
};
SplitParts split(const Container& c);
/// Reunites the two halves; headers must agree.
Container join(const Container& codewords, const Container& boundaries);

std::uint32_t crc32_of(std::span<const std::uint8_t> data);

// File helpers. I/O failures throw Errc::io with the path in the message.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// Paths of the split halves for a given output base ("x.npf" -> x.npfb, x.npfk).
std::filesystem::path codeword_part_path(std::filesystem::path base);
std::filesystem::path boundary_part_path(std::filesystem::path base);

void write_container(const std::filesystem::path& path, const Container& c, bool split_streams);
/// Loads a container. A .npfb path is joined with its .npfk companion when
/// present; otherwise the lone half is returned and decoding it fails with
/// missing_boundary_stream.
Container read_container(const std::filesystem::path& path);

} // namespace npf
