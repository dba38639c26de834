#pragma once

// Shared recurrence cores for the value march and the ratio sweeps. The
// eigensolver reuses these with cached, per-trial-energy weights so both
// paths perform identical arithmetic.

#include <cmath>
#include <cstddef>
#include <vector>

#include "glnm/error.hpp"
#include "glnm/grid.hpp"
#include "glnm/stencil.hpp"

namespace glnm::detail {

inline constexpr double pole_clamp = 1e300;
inline constexpr double pole_rel_threshold = 1e-14;

inline double clamp_ratio(double numerator, double denominator)
{
    const double s = denominator < 0 ? -1.0 : 1.0;
    return std::copysign(pole_clamp, numerator) * s;
}

// ratio[i] = y_i / y_{i+1} on [0, stop]; ratio[0] = seed.
template <class Weights>
void run_sweep_outward(const Grid& grid, const Weights& weights, double seed, std::size_t stop,
                       std::vector<double>& ratio, std::vector<bool>& pole)
{
    ratio.assign(grid.size(), 0.0);
    pole.assign(grid.size(), false);
    ratio[0] = seed;
    for (std::size_t i = 1; i <= stop; ++i) {
        const Grid::Triple t = grid.triple_at(i);
        const StencilCache::Weights w = weights(i);
        double y_minus_ratio = ratio[i - 1];
        if (t.minus != i - 1) {
            // junction: the coarse triple's left point sits r fine nodes back,
            // so the needed ratio telescopes over the trailing fine ratios
            y_minus_ratio = 1.0;
            for (std::size_t k = t.minus; k < i; ++k)
                y_minus_ratio *= ratio[k];
        }
        const double den = w.T0 - w.Tm * y_minus_ratio;
        const double scale = std::max(std::abs(w.T0), std::abs(w.Tm * y_minus_ratio));
        if (std::abs(den) <= pole_rel_threshold * scale) {
            ratio[i] = clamp_ratio(w.Tp, den);
            pole[i] = true;
        } else {
            ratio[i] = w.Tp / den;
        }
    }
}

// ratio[i] = y_i / y_{i-1} on [stop, n-1]; ratio[n-1] = seed.
template <class Weights>
void run_sweep_inward(const Grid& grid, const Weights& weights, double seed, std::size_t stop,
                      std::vector<double>& ratio, std::vector<bool>& pole)
{
    ratio.assign(grid.size(), 0.0);
    pole.assign(grid.size(), false);
    const std::size_t n = grid.size();
    ratio[n - 1] = seed;
    for (std::size_t i = n - 2; i >= stop; --i) {
        const Grid::Triple t = grid.triple_at(i);
        if (t.minus != i - 1)
            throw validation_error("inward sweep range crosses a grid junction at node " +
                                   std::to_string(i));
        const StencilCache::Weights w = weights(i);
        const double den = w.T0 - w.Tp * ratio[i + 1];
        const double scale = std::max(std::abs(w.T0), std::abs(w.Tp * ratio[i + 1]));
        if (std::abs(den) <= pole_rel_threshold * scale) {
            ratio[i] = clamp_ratio(w.Tm, den);
            pole[i] = true;
        } else {
            ratio[i] = w.Tm / den;
        }
        if (i == stop)
            break;
    }
}

} // namespace glnm::detail
