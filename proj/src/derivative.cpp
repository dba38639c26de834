#include "glnm/derivative.hpp"

#include <cmath>
#include <string>

#include "glnm/error.hpp"
#include "glnm/stencil.hpp"

namespace glnm {

double derivative_interior(const FieldSamples& fields, const SolutionSamples& y, std::size_t i)
{
    const Grid& grid = *fields.grid;
    if (i == 0 || i + 1 >= grid.size())
        throw validation_error("derivative_interior needs an interior node");
    const Grid::Triple t = grid.triple_at(i);
    const DerivativeStencil s = derivative_coefficients(
        {t.h, fields.g[t.minus], fields.g[i], fields.g[t.plus],
         fields.f[t.minus], fields.f[i], fields.f[t.plus]});
    return (s.S_plus * y.y[t.plus] - s.S_minus * y.y[t.minus] - s.S0 * y.y[i]) / (2.0 * s.a * t.h);
}

double derivative_endpoint(const FieldSamples& fields, const SolutionSamples& y,
                           double y_prime_inner, double y_prime_center, EndpointSide side)
{
    const Grid& grid = *fields.grid;
    const std::size_t n = grid.size();
    if (n < 3)
        throw validation_error("grid too short for the endpoint derivative");
    const std::size_t center = side == EndpointSide::right ? n - 2 : 1;
    const Grid::Triple t = grid.triple_at(center);
    if (t.minus != center - 1)
        throw validation_error("endpoint derivative needs three uniformly spaced edge nodes");
    const double h = t.h;
    const double gp = fields.g[t.plus], g0 = fields.g[center], gm = fields.g[t.minus];
    const double fp = fields.f[t.plus], f0 = fields.f[center], fm = fields.f[t.minus];
    const double inner_sum = 4.0 * g0 * y_prime_center + 4.0 * f0 * y.y[center] +
                             fp * y.y[t.plus] + fm * y.y[t.minus];

    if (side == EndpointSide::right) {
        const double den = 3.0 + h * gp;
        if (std::abs(den) < 1e-12)
            throw solver_error("endpoint derivative denominator |3 + h g| vanishes");
        return ((3.0 - h * gm) * y_prime_inner - h * inner_sum) / den;
    }
    const double den = 3.0 - h * gm;
    if (std::abs(den) < 1e-12)
        throw solver_error("endpoint derivative denominator |3 - h g| vanishes");
    return ((3.0 + h * gp) * y_prime_inner + h * inner_sum) / den;
}

std::vector<double> derivative_all(const FieldSamples& fields, const SolutionSamples& y)
{
    const std::size_t n = fields.grid->size();
    if (n < 4)
        throw validation_error("grid too short to differentiate");
    std::vector<double> dy(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i)
        dy[i] = derivative_interior(fields, y, i);
    dy[0] = derivative_endpoint(fields, y, dy[2], dy[1], EndpointSide::left);
    dy[n - 1] = derivative_endpoint(fields, y, dy[n - 3], dy[n - 2], EndpointSide::right);
    return dy;
}

} // namespace glnm
