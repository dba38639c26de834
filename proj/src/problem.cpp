#include "glnm/problem.hpp"

#include <cmath>
#include <string>

#include "glnm/error.hpp"

namespace glnm {

FieldSamples sample_fields(GridPtr grid, const std::function<double(double)>& g,
                           const std::function<double(double)>& f)
{
    FieldSamples out;
    out.grid = grid;
    const std::size_t n = grid->size();
    out.g.resize(n);
    out.f.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid->node(i);
        out.g[i] = g(x);
        out.f[i] = f(x);
        if (!std::isfinite(out.g[i]))
            throw validation_error("g(x) is not finite at node " + std::to_string(i) + " (x = " +
                                   std::to_string(x) + ")");
        if (!std::isfinite(out.f[i]))
            throw validation_error("f(x) is not finite at node " + std::to_string(i) + " (x = " +
                                   std::to_string(x) + ")");
    }
    return out;
}

FieldSamples hf_map(GridPtr grid, const EffectiveMassModel& model)
{
    const std::size_t n = grid->size();
    if (model.m.size() != n || model.m_prime.size() != n || model.V.size() != n)
        throw validation_error("effective-mass arrays do not match the grid length");

    FieldSamples out;
    out.grid = grid;
    out.g.resize(n);
    out.f.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(model.m[i] > 0))
            throw validation_error("effective mass must be strictly positive (node " +
                                   std::to_string(i) + ")");
        out.g[i] = -model.m_prime[i] / model.m[i];
        out.f[i] = 2.0 * model.m[i] * (model.e - model.V[i]);
    }
    return out;
}

double BoundaryModel::origin_ratio(const Grid& grid) const
{
    if (const auto* two = std::get_if<TwoPointOrigin>(&origin)) {
        if (two->y1 == 0)
            throw validation_error("two-point origin seed has y1 = 0");
        return two->y0 / two->y1;
    }
    const double s = std::get<PowerLawOrigin>(origin).exponent;
    if (s < 0)
        throw validation_error("origin power-law exponent must be non-negative");
    if (s == 0)
        return 1.0;
    const double x0 = grid.node(0);
    const double x1 = grid.node(1);
    return x0 > 0 ? std::pow(x0 / x1, s) : 0.0;
}

double BoundaryModel::tail_ratio(const FieldSamples& fields) const
{
    if (const auto* ratio = std::get_if<RatioTail>(&tail)) {
        if (!std::isfinite(ratio->value))
            throw validation_error("tail ratio must be finite");
        return ratio->value;
    }
    const double kappa = std::sqrt(std::max(-fields.f.back(), 0.0));
    return std::exp(-kappa * fields.grid->last_step());
}

} // namespace glnm
