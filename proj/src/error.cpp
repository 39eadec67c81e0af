#include "npf/error.hpp"

namespace npf {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::contract: return "contract violation";
    case Errc::config_too_large: return "configuration too large";
    case Errc::invalid_rank: return "invalid rank";
    case Errc::corrupt_stream: return "corrupt stream";
    case Errc::truncated_stream: return "truncated stream";
    case Errc::header_malformed: return "malformed header";
    case Errc::bad_magic: return "bad magic";
    case Errc::version_mismatch: return "version mismatch";
    case Errc::length_mismatch: return "length mismatch";
    case Errc::checksum_mismatch: return "checksum mismatch";
    case Errc::missing_boundary_stream: return "missing boundary stream";
    case Errc::missing_codeword_stream: return "missing codeword stream";
    case Errc::empty_input: return "empty input";
    case Errc::undefined_entropy: return "undefined entropy";
    case Errc::io: return "i/o error";
    }
    return "unknown error";
}

} // namespace npf
