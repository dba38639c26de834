#include "glnm/propagate.hpp"

#include <cmath>
#include <string>

#include "glnm/error.hpp"
#include "sweep_core.hpp"

namespace glnm {

namespace detail {

FieldWeights::FieldWeights(const FieldSamples& fields)
    : fields_(&fields), cache_(*fields.grid, fields.g)
{
    if (fields.f.size() != fields.grid->size())
        throw validation_error("field samples do not match the grid length");
}

StencilCache::Weights FieldWeights::operator()(std::size_t center) const
{
    const Grid::Triple t = fields_->grid->triple_at(center);
    return StencilCache::combine(cache_.row(center), fields_->f[t.minus], fields_->f[center],
                                 fields_->f[t.plus]);
}

} // namespace detail

int RatioSweep::count_negative(std::size_t lo, std::size_t hi) const
{
    const bool outward = direction == SweepDirection::outward;
    const std::size_t swept_lo = outward ? begin : end;
    const std::size_t swept_hi = outward ? end : begin;
    lo = std::max(lo, swept_lo);
    hi = std::min(hi, swept_hi);
    if (lo > hi)
        return 0;

    int count = 0;
    bool prev_pole = false;
    auto visit = [&](std::size_t i) {
        if (pole[i]) {
            ++count;
            prev_pole = true;
            return;
        }
        if (!prev_pole && ratio[i] < 0)
            ++count;
        prev_pole = false;
    };
    if (outward) {
        for (std::size_t i = lo; i <= hi; ++i)
            visit(i);
    } else {
        for (std::size_t i = hi; i + 1 > lo; --i)
            visit(i);
    }
    return count;
}

SolutionSamples step_recurrence(const FieldSamples& fields, std::array<double, 2> y_start,
                                std::size_t first, std::size_t last, bool rescale)
{
    const Grid& grid = *fields.grid;
    const std::size_t n = grid.size();
    if (first >= n || last >= n)
        throw validation_error("step_recurrence range outside the grid");
    const std::size_t width = first < last ? last - first : first - last;
    if (width < 2)
        throw validation_error("step_recurrence range must span at least 3 nodes");

    const detail::FieldWeights weights(fields);
    SolutionSamples out;
    out.y.assign(n, 0.0);

    constexpr double big = 0x1p512;
    auto apply_rescale = [&](std::size_t filled_lo, std::size_t filled_hi) {
        for (std::size_t k = filled_lo; k <= filled_hi; ++k)
            out.y[k] *= 0x1p-512;
        out.log2_scale += 512.0;
    };

    if (first < last) {
        out.y[first] = y_start[0];
        out.y[first + 1] = y_start[1];
        std::size_t i = first + 1;
        while (i < last) {
            const Grid::Triple t = grid.triple_at(i);
            if (t.minus + 1 != i && t.minus < first)
                throw validation_error("outward march starts less than one coarse step below the "
                                       "junction at node " + std::to_string(i));
            const StencilCache::Weights w = weights(i);
            if (std::abs(w.Tp) < 1e-300)
                throw solver_error("cannot advance outward: |T+| underflows at node " +
                                   std::to_string(i));
            out.y[t.plus] = (w.T0 * out.y[i] - w.Tm * out.y[t.minus]) / w.Tp;
            i = t.plus;
            if (rescale && (std::abs(out.y[i]) > big || std::abs(out.y[i - 1]) > big))
                apply_rescale(first, i);
        }
    } else {
        out.y[first] = y_start[0];
        out.y[first - 1] = y_start[1];
        for (std::size_t i = first - 1; i > last; --i) {
            const Grid::Triple t = grid.triple_at(i);
            if (t.minus != i - 1)
                throw validation_error("inward propagation range crosses a grid junction at node " +
                                       std::to_string(i));
            const StencilCache::Weights w = weights(i);
            if (std::abs(w.Tm) < 1e-300)
                throw solver_error("cannot advance inward: |T-| underflows at node " +
                                   std::to_string(i));
            out.y[i - 1] = (w.T0 * out.y[i] - w.Tp * out.y[i + 1]) / w.Tm;
            if (rescale && (std::abs(out.y[i - 1]) > big || std::abs(out.y[i]) > big))
                apply_rescale(i - 1, first);
        }
    }
    return out;
}

RatioSweep sweep_outward(const FieldSamples& fields, double seed, std::size_t stop)
{
    const Grid& grid = *fields.grid;
    if (grid.size() < 4)
        throw validation_error("grid too short for a ratio sweep");
    if (stop < 2 || stop + 2 > grid.size())
        throw validation_error("outward sweep stop must lie in [2, n-2]");

    RatioSweep sweep;
    sweep.grid = fields.grid;
    sweep.direction = SweepDirection::outward;
    sweep.begin = 0;
    sweep.end = stop;
    const detail::FieldWeights weights(fields);
    detail::run_sweep_outward(grid, weights, seed, stop, sweep.ratio, sweep.pole);
    sweep.negative_count = sweep.count_negative(0, stop);
    return sweep;
}

RatioSweep sweep_inward(const FieldSamples& fields, double seed, std::size_t stop)
{
    const Grid& grid = *fields.grid;
    if (grid.size() < 4)
        throw validation_error("grid too short for a ratio sweep");
    if (stop < 1 || stop + 3 > grid.size())
        throw validation_error("inward sweep stop must lie in [1, n-3]");

    RatioSweep sweep;
    sweep.grid = fields.grid;
    sweep.direction = SweepDirection::inward;
    sweep.begin = grid.size() - 1;
    sweep.end = stop;
    const detail::FieldWeights weights(fields);
    detail::run_sweep_inward(grid, weights, seed, stop, sweep.ratio, sweep.pole);
    sweep.negative_count = sweep.count_negative(stop, grid.size() - 1);
    return sweep;
}

SolutionSamples reconstruct(const RatioSweep& sweep, std::size_t anchor, double anchor_value)
{
    const std::size_t n = sweep.grid->size();
    SolutionSamples out;
    out.y.assign(n, 0.0);

    if (sweep.direction == SweepDirection::outward) {
        const std::size_t lo = sweep.begin, hi = sweep.end; // ratios on [lo, hi], y on [lo, hi+1]
        if (anchor < lo || anchor > hi + 1)
            throw validation_error("reconstruct anchor outside the swept range");
        out.y[anchor] = anchor_value;
        for (std::size_t k = anchor; k > lo; --k)
            out.y[k - 1] = sweep.ratio[k - 1] * out.y[k];
        for (std::size_t k = anchor; k <= hi; ++k)
            out.y[k + 1] = out.y[k] / sweep.ratio[k];
        for (std::size_t k = lo; k <= hi; ++k)
            if (sweep.pole[k])
                out.y[k + 1] = 0.0; // the clamp marks an exact zero crossing
    } else {
        const std::size_t lo = sweep.end, hi = sweep.begin; // ratios on [lo, hi], y on [lo-1, hi]
        if (anchor + 1 < lo || anchor > hi)
            throw validation_error("reconstruct anchor outside the swept range");
        out.y[anchor] = anchor_value;
        for (std::size_t k = anchor + 1; k <= hi; ++k)
            out.y[k] = sweep.ratio[k] * out.y[k - 1];
        for (std::size_t k = anchor; k >= lo; --k) {
            out.y[k - 1] = out.y[k] / sweep.ratio[k];
            if (k == lo)
                break;
        }
        for (std::size_t k = lo; k <= hi; ++k)
            if (sweep.pole[k])
                out.y[k - 1] = 0.0;
    }
    return out;
}

} // namespace glnm
