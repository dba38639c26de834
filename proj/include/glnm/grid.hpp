#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace glnm {

/// One uniform piece of the mesh: nodes at start + k*step, k = 0..(stop-start)/step.
struct GridSegment {
    double start = 0;
    double stop = 0;
    double step = 0;
};

/// Piecewise-uniform mesh description. Segments must be contiguous
/// (segment[i].stop == segment[i+1].start exactly), each must span an
/// integer number of steps, and steps must be non-decreasing outward with
/// each step an integer multiple of the previous segment's step.
struct GridSpec {
    std::vector<GridSegment> segments;
};

/// Realized mesh. Nodes are strictly increasing; junction nodes are exactly
/// the interior segment boundaries. For every interior node the class knows
/// the uniform (x-h, x, x+h) triple usable for three-point stencils: inside a
/// segment the neighbors are adjacent nodes; at a junction the triple is
/// spaced by the coarse (following) step and its left point is the
/// coarse-aligned node inside the finer segment.
class Grid {
public:
    struct Triple {
        std::size_t minus;
        std::size_t plus;
        double h;
    };

    std::size_t size() const { return nodes_.size(); }
    double node(std::size_t i) const { return nodes_[i]; }
    std::span<const double> nodes() const { return nodes_; }

    bool is_junction(std::size_t i) const;
    /// Junction node indices, ascending (empty for a single segment).
    const std::vector<std::size_t>& junctions() const { return junctions_; }
    std::size_t segment_of(std::size_t i) const;
    std::size_t segment_count() const { return spec_.segments.size(); }
    /// First node index of segment s (a junction node for s > 0).
    std::size_t segment_first(std::size_t s) const { return seg_first_[s]; }
    /// Last node index of segment s (the junction with s+1, or n-1).
    std::size_t segment_last(std::size_t s) const
    {
        return s + 1 < seg_first_.size() ? seg_first_[s + 1] : nodes_.size() - 1;
    }

    /// Uniform stencil triple centered at interior node i.
    Triple triple_at(std::size_t i) const;
    /// Spacing of the triple centered at i (segment step, or the coarse step
    /// at a junction).
    double step_at(std::size_t i) const { return triple_at(i).h; }
    /// Step of the outermost segment.
    double last_step() const { return spec_.segments.back().step; }

    const GridSpec& spec() const { return spec_; }

private:
    friend Grid build_grid(const GridSpec& spec);

    GridSpec spec_;
    std::vector<double> nodes_;
    std::vector<std::size_t> seg_first_; // first node index of each segment
    std::vector<std::size_t> junctions_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Validates the segment description and lays out the nodes (start + k*step
/// per segment, end
/// node snapped to the exact segment stop). Throws validation_error on
/// non-contiguous segments, non-integer segment lengths, or non-integer /
/// decreasing step ratios.
Grid build_grid(const GridSpec& spec);

inline GridPtr make_grid(const GridSpec& spec)
{
    return std::make_shared<const Grid>(build_grid(spec));
}

} // namespace glnm
