#include "glnm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "glnm/error.hpp"

namespace glnm {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// Number of steps spanned by [start, stop] if it is an integer within a few
// ulp, else 0.
long integer_span(double start, double stop, double step)
{
    const double raw = (stop - start) / step;
    const long n = std::lround(raw);
    if (n < 1)
        return 0;
    const double reconstructed = start + static_cast<double>(n) * step;
    const double tol = 4.0 * eps * std::max({std::abs(start), std::abs(stop), std::abs(reconstructed)});
    if (std::abs(reconstructed - stop) > tol)
        return 0;
    return n;
}

long integer_ratio(double coarse, double fine)
{
    const double raw = coarse / fine;
    const long r = std::lround(raw);
    if (r < 1)
        return 0;
    if (std::abs(static_cast<double>(r) * fine - coarse) > 4.0 * eps * coarse)
        return 0;
    return r;
}

} // namespace

Grid build_grid(const GridSpec& spec)
{
    if (spec.segments.empty())
        throw validation_error("grid spec has no segments");

    Grid grid;
    grid.spec_ = spec;

    for (std::size_t s = 0; s < spec.segments.size(); ++s) {
        const GridSegment& seg = spec.segments[s];
        if (!(seg.step > 0))
            throw validation_error("segment " + std::to_string(s) + ": step must be positive");
        if (!(seg.stop > seg.start))
            throw validation_error("segment " + std::to_string(s) + ": stop must exceed start");
        if (s == 0 && seg.start < 0)
            throw validation_error("grid must not start below 0");
        if (s > 0 && seg.start != spec.segments[s - 1].stop)
            throw validation_error("segments " + std::to_string(s - 1) + " and " + std::to_string(s) +
                                   " are not contiguous");

        const long n = integer_span(seg.start, seg.stop, seg.step);
        if (n == 0)
            throw validation_error("segment " + std::to_string(s) +
                                   ": (stop - start)/step is not a positive integer");

        if (s > 0) {
            const GridSegment& prev = spec.segments[s - 1];
            if (seg.step < prev.step)
                throw validation_error("segment steps must be non-decreasing outward");
            const long r = integer_ratio(seg.step, prev.step);
            if (r == 0)
                throw validation_error("segment " + std::to_string(s) +
                                       ": step is not an integer multiple of the previous step");
            // the junction triple reaches one coarse step into the finer segment
            if (integer_span(prev.start, prev.stop, prev.step) < r)
                throw validation_error("segment " + std::to_string(s - 1) +
                                       " is shorter than the following segment's step");
        }

        grid.seg_first_.push_back(grid.nodes_.size());
        if (s > 0)
            grid.junctions_.push_back(grid.nodes_.size());
        const long klim = (s + 1 == spec.segments.size()) ? n : n - 1;
        for (long k = 0; k <= klim; ++k)
            grid.nodes_.push_back(seg.start + static_cast<double>(k) * seg.step);
        if (s + 1 == spec.segments.size())
            grid.nodes_.back() = seg.stop; // snap so contiguity stays exact
    }
    return grid;
}

bool Grid::is_junction(std::size_t i) const
{
    return std::binary_search(junctions_.begin(), junctions_.end(), i);
}

std::size_t Grid::segment_of(std::size_t i) const
{
    auto it = std::upper_bound(seg_first_.begin(), seg_first_.end(), i);
    return static_cast<std::size_t>(it - seg_first_.begin()) - 1;
}

Grid::Triple Grid::triple_at(std::size_t i) const
{
    if (i == 0 || i + 1 >= nodes_.size())
        throw validation_error("no stencil triple at grid endpoint " + std::to_string(i));
    const std::size_t s = segment_of(i);
    if (is_junction(i)) {
        const double hc = spec_.segments[s].step;
        const double hf = spec_.segments[s - 1].step;
        const auto r = static_cast<std::size_t>(std::lround(hc / hf));
        return {i - r, i + 1, hc};
    }
    return {i - 1, i + 1, spec_.segments[s].step};
}

} // namespace glnm
