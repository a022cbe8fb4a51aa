#include "gravphase/error.hpp"

namespace gravphase {

const char* to_string(Errc code) noexcept {
    switch (code) {
    case Errc::invalid_quantity: return "invalid quantity";
    case Errc::domain: return "domain error";
    case Errc::divide_by_zero: return "divide by zero";
    case Errc::range: return "range error";
    case Errc::config: return "config error";
    case Errc::unsupported_sequence: return "unsupported sequence";
    case Errc::unidentifiable: return "unidentifiable";
    case Errc::fit_failure: return "fit failure";
    case Errc::resolution: return "resolution error";
    case Errc::io: return "i/o error";
    case Errc::verification: return "verification failure";
    }
    return "unknown error";
}

} // namespace gravphase
