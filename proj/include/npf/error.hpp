#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace npf {

enum class Errc {
    contract,
    config_too_large,
    invalid_rank,
    corrupt_stream,
    truncated_stream,
    header_malformed,
    bad_magic,
    version_mismatch,
    length_mismatch,
    checksum_mismatch,
    missing_boundary_stream,
    missing_codeword_stream,
    empty_input,
    undefined_entropy,
    io,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure the library reports carries one of the codes above so callers
// (and the fuzz harness) can tell the malformed-input classes apart.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const char* what) {
    if (!cond) fail(Errc::contract, what);
}

} // namespace npf
