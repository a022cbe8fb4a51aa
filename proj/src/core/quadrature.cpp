#include "gravphase/quadrature.hpp"

namespace gravphase {

std::size_t simpson_subintervals(std::size_t n_steps) {
    if (n_steps < 2) {
        throw Error(Errc::config, "n_steps must be at least 2 per segment");
    }
    return n_steps + (n_steps % 2);
}

} // namespace gravphase
