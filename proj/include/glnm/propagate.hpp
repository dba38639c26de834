#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "glnm/problem.hpp"
#include "glnm/stencil.hpp"

namespace glnm {

enum class SweepDirection { outward, inward };

/// Ratio-recurrence result. Outward sweeps carry Y_i = y_i / y_{i+1} at nodes
/// [0, stop]; inward sweeps carry Y_i = y_i / y_{i-1} at nodes [stop, n-1].
/// Where the recurrence denominator vanishes (the next solution value hits an
/// exact zero) the ratio is clamped to +-1e300 and the node is pole-flagged;
/// the following step divides by the clamp, so later ratios stay consistent.
struct RatioSweep {
    GridPtr grid;
    SweepDirection direction = SweepDirection::outward;
    std::size_t begin = 0; // seed node (0 outward, n-1 inward)
    std::size_t end = 0;   // stop node
    std::vector<double> ratio;    // indexed by node, valid on the swept range
    std::vector<bool> pole;
    int negative_count = 0;       // sign changes over the full swept range

    double at(std::size_t node) const { return ratio[node]; }
    bool pole_at(std::size_t node) const { return pole[node]; }
    /// Sign changes among ratios on nodes [lo, hi]. A pole counts one change;
    /// the ratio at the node right after a pole (in sweep direction) is the
    /// near-zero recovery value and is not counted.
    int count_negative(std::size_t lo, std::size_t hi) const;
};

/// Propagated (or reconstructed) solution values.
struct SolutionSamples {
    std::vector<double> y;
    std::vector<double> y_prime; // empty unless derivatives were attached
    double norm = 0;             // integral of w y^2 dx recorded before rescaling
    double log2_scale = 0;       // accumulated overflow-rescale exponent
};

/// Marches the three-point recurrence over node indices. first < last:
/// outward from values at (first, first+1); first > last: inward from values
/// at (first, first-1). Outward marches cross junctions with the
/// coarse-anchored triple; inward ranges must not contain one. With rescale
/// set, the running pair is scaled by 2^-512 whenever it exceeds 2^512 (exact;
/// the accumulated exponent is reported in log2_scale).
SolutionSamples step_recurrence(const FieldSamples& fields, std::array<double, 2> y_start,
                                std::size_t first, std::size_t last, bool rescale = false);

/// Outward ratio recurrence Y_i = T+ / (T0 - T- Y_{i-1}) from the origin seed
/// Y_0 = y0/y1 up to node stop (2 <= stop <= n-2). Poles are data, not
/// failures.
RatioSweep sweep_outward(const FieldSamples& fields, double seed, std::size_t stop);

/// Inward ratio recurrence Y_i = T- / (T0 - T+ Y_{i+1}) from the tail seed
/// Y_{n-1} = y_{n-1}/y_{n-2} down to node stop (1 <= stop <= n-3).
RatioSweep sweep_inward(const FieldSamples& fields, double seed, std::size_t stop);

/// Turns a ratio sweep into solution values over the full range the sweep
/// covers, anchored at y[anchor] = anchor_value. Pole-flagged ratios place an
/// exact zero at the node where the solution vanishes.
SolutionSamples reconstruct(const RatioSweep& sweep, std::size_t anchor, double anchor_value);

namespace detail {

/// Recurrence weights provider for one stencil center; lets the value and
/// ratio recurrences share a single arithmetic path with the eigensolver's
/// cached-coefficient evaluation.
class FieldWeights {
public:
    explicit FieldWeights(const FieldSamples& fields);
    StencilCache::Weights operator()(std::size_t center) const;

private:
    const FieldSamples* fields_;
    StencilCache cache_;
};

} // namespace detail

} // namespace glnm
