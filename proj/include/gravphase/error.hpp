#pragma once

#include <stdexcept>
#include <string>

namespace gravphase {

enum class Errc {
    invalid_quantity,
    domain,
    divide_by_zero,
    range,
    config,
    unsupported_sequence,
    unidentifiable,
    fit_failure,
    resolution,
    io,
    verification,
};

const char* to_string(Errc code) noexcept;

// All library failures are reported as Error; the C API maps `code()` onto gp_status.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace gravphase
