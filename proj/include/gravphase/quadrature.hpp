#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "gravphase/error.hpp"

namespace gravphase {

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Simpson needs an even subinterval count; odd counts are rounded up, fewer than 2 is a config error.
std::size_t simpson_subintervals(std::size_t n_steps);

/// Composite Simpson over each [breaks[i], breaks[i+1]] with `n_steps` subintervals per piece.
/// All weighted samples go through one compensated accumulator, so pieces that cancel do so
/// before any rounding of the partial integrals.
template <typename F>
double piecewise_simpson(F&& f, std::span<const double> breaks, std::size_t n_steps) {
    const std::size_t n = simpson_subintervals(n_steps);
    CompensatedSum acc;
    for (std::size_t piece = 0; piece + 1 < breaks.size(); ++piece) {
        const double a = breaks[piece];
        const double b = breaks[piece + 1];
        const double h = (b - a) / static_cast<double>(n);
        const double w = h / 3.0;
        for (std::size_t i = 0; i <= n; ++i) {
            // Evaluate the endpoints exactly on the breakpoints so one-sided limits are used.
            const double t = (i == n) ? b : a + static_cast<double>(i) * h;
            const double weight = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            acc.add(weight * w * f(t, piece));
        }
    }
    return acc.value();
}

} // namespace gravphase
