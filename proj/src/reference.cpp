#include "glnm/reference.hpp"

#include <cmath>
#include <string>

#include "glnm/error.hpp"

namespace glnm {

SolutionSamples rk4_integrate(const std::function<double(double)>& g,
                              const std::function<double(double)>& f, double y0, double y0_prime,
                              double x0, double x1, double step)
{
    if (!(step > 0) || !(x1 > x0))
        throw validation_error("rk4_integrate needs x1 > x0 and a positive step");
    const auto n = static_cast<std::size_t>(std::lround((x1 - x0) / step));
    if (n < 1 || std::abs(x0 + static_cast<double>(n) * step - x1) > 1e-9 * std::max(1.0, std::abs(x1)))
        throw validation_error("rk4_integrate range is not an integer number of steps");

    SolutionSamples out;
    out.y.resize(n + 1);
    out.y_prime.resize(n + 1);
    double y = y0, p = y0_prime;
    out.y[0] = y;
    out.y_prime[0] = p;
    auto acc = [&](double x, double yy, double pp) { return -g(x) * pp - f(x) * yy; };
    for (std::size_t i = 0; i < n; ++i) {
        const double x = x0 + static_cast<double>(i) * step;
        const double k1y = p;
        const double k1p = acc(x, y, p);
        const double k2y = p + 0.5 * step * k1p;
        const double k2p = acc(x + 0.5 * step, y + 0.5 * step * k1y, p + 0.5 * step * k1p);
        const double k3y = p + 0.5 * step * k2p;
        const double k3p = acc(x + 0.5 * step, y + 0.5 * step * k2y, p + 0.5 * step * k2p);
        const double k4y = p + step * k3p;
        const double k4p = acc(x + step, y + step * k3y, p + step * k3p);
        y += step / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        p += step / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        if (!std::isfinite(y) || !std::isfinite(p))
            throw solver_error("rk4 state became non-finite near x = " + std::to_string(x + step));
        out.y[i + 1] = y;
        out.y_prime[i + 1] = p;
    }
    return out;
}

SolutionSamples numerov_classic(const FieldSamples& fields, std::array<double, 2> y_start,
                                std::size_t first, std::size_t last)
{
    const Grid& grid = *fields.grid;
    const std::size_t n = grid.size();
    if (grid.segment_count() != 1)
        throw validation_error("numerov_classic needs a uniform grid");
    for (double gv : fields.g)
        if (gv != 0)
            throw validation_error("numerov_classic requires g == 0 everywhere");
    if (first >= n || last >= n || (first < last ? last - first : first - last) < 2)
        throw validation_error("numerov_classic range must span at least 3 nodes");

    const double h = grid.spec().segments[0].step;
    const std::vector<double>& f = fields.f;
    auto w0 = [&](double fv) { return 2.0 - (5.0 * h * h / 6.0) * fv; };
    auto wpm = [&](double fv) { return 1.0 + (h * h / 12.0) * fv; };

    SolutionSamples out;
    out.y.assign(n, 0.0);
    if (first < last) {
        out.y[first] = y_start[0];
        out.y[first + 1] = y_start[1];
        for (std::size_t i = first + 1; i < last; ++i)
            out.y[i + 1] = (w0(f[i]) * out.y[i] - wpm(f[i - 1]) * out.y[i - 1]) / wpm(f[i + 1]);
    } else {
        out.y[first] = y_start[0];
        out.y[first - 1] = y_start[1];
        for (std::size_t i = first - 1; i > last; --i)
            out.y[i - 1] = (w0(f[i]) * out.y[i] - wpm(f[i + 1]) * out.y[i + 1]) / wpm(f[i - 1]);
    }
    return out;
}

double bessel_j0_series(double x)
{
    double term = 1.0, sum = 1.0;
    const double q = x * x / 4.0;
    for (int k = 1; k <= 30; ++k) {
        term *= -q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
    }
    return sum;
}

double bessel_j1_series(double x)
{
    double term = x / 2.0, sum = term;
    const double q = x * x / 4.0;
    for (int k = 1; k <= 30; ++k) {
        term *= -q / (static_cast<double>(k) * static_cast<double>(k + 1));
        sum += term;
    }
    return sum;
}

FieldSamples BuiltinProblem::make_fields(GridPtr grid) const
{
    if (!has_ode_form())
        throw validation_error("builtin '" + name + "' has no fixed-field form");
    return sample_fields(grid, g, f);
}

std::array<double, 2> BuiltinProblem::start_values(const Grid& grid) const
{
    if (!exact_solution)
        throw validation_error("builtin '" + name + "' has no start values");
    return {exact_solution(grid.node(0)), exact_solution(grid.node(1))};
}

EigenProblem BuiltinProblem::make_eigen(GridPtr grid, int target_nodes) const
{
    if (!has_eigenproblem)
        throw validation_error("builtin '" + name + "' is not an eigenproblem");
    EigenProblem p;
    p.grid = grid;
    const std::size_t n = grid->size();
    p.m.resize(n);
    p.m_prime.resize(n);
    p.V.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid->node(i);
        p.m[i] = m_fn(x);
        p.m_prime[i] = m_prime_fn(x);
        p.V[i] = V_fn(x);
    }
    p.boundary = boundary_fn(*grid);
    p.target_nodes = target_nodes;
    p.e_lo = window_lo;
    p.e_hi = window_hi;
    p.weight = weight;
    return p;
}

BuiltinProblem builtin_problem(const std::string& name, const Params& params)
{
    auto get = [&](const char* key, double fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    auto reject_unknown = [&](std::initializer_list<const char*> known) {
        for (const auto& [key, value] : params) {
            bool ok = false;
            for (const char* k : known)
                if (key == k)
                    ok = true;
            if (!ok)
                throw validation_error("builtin '" + name + "': unknown parameter '" + key + "'");
        }
    };

    BuiltinProblem b;
    b.name = name;

    if (name == "manufactured_exp") {
        reject_unknown({});
        // y = e^x solves y'' + x y' - (1+x) y = 0 identically
        b.default_grid = {{{0.0, 2.0, 0.01}}};
        b.g = [](double x) { return x; };
        b.f = [](double x) { return -(1.0 + x); };
        b.exact_solution = [](double x) { return std::exp(x); };
        return b;
    }
    if (name == "bessel_j0") {
        reject_unknown({});
        b.default_grid = {{{0.1, 12.0, 0.005}}};
        b.g = [](double x) { return 1.0 / x; };
        b.f = [](double) { return 1.0; };
        b.exact_solution = [](double x) { return bessel_j0_series(x); };
        return b;
    }
    if (name == "hydrogen_R") {
        reject_unknown({});
        // R-form of the l = 0 Coulomb problem: g = 2/x enters through the
        // supplied m'/m ratio, f = 2(e + 1/x); levels -1/(2 n^2)
        b.default_grid = {{{0.0005, 0.1, 0.0005}, {0.1, 40.0, 0.005}}};
        b.has_eigenproblem = true;
        b.m_fn = [](double) { return 1.0; };
        b.m_prime_fn = [](double x) { return -2.0 / x; };
        b.V_fn = [](double x) { return -1.0 / x; };
        b.boundary_fn = [](const Grid& grid) {
            BoundaryModel bm;
            // two leading terms of the regular origin expansion, R ~ 1 - x
            bm.origin = TwoPointOrigin{1.0 - grid.node(0), 1.0 - grid.node(1)};
            bm.tail = ExpDecayTail{};
            return bm;
        };
        b.weight = [](double x) { return x * x; };
        b.exact_eigenvalue = [](int nodes) {
            const double nq = static_cast<double>(nodes + 1);
            return -1.0 / (2.0 * nq * nq);
        };
        b.window_lo = -0.6;
        b.window_hi = -0.05;
        return b;
    }
    if (name == "harmonic_R") {
        reject_unknown({});
        // radial 3-D oscillator, l = 0 reduced form: levels 2 n_r + 1.5
        b.default_grid = {{{0.0, 8.0, 0.01}}};
        b.has_eigenproblem = true;
        b.m_fn = [](double) { return 1.0; };
        b.m_prime_fn = [](double) { return 0.0; };
        b.V_fn = [](double x) { return 0.5 * x * x; };
        b.boundary_fn = [](const Grid&) {
            BoundaryModel bm;
            bm.origin = PowerLawOrigin{1.0};
            bm.tail = ExpDecayTail{};
            return bm;
        };
        b.exact_eigenvalue = [](int nodes) { return 2.0 * nodes + 1.5; };
        b.window_lo = 0.2;
        b.window_hi = 8.0;
        return b;
    }
    if (name == "effective_mass_gauss") {
        reject_unknown({"beta"});
        const double beta = get("beta", 0.3);
        b.default_grid = {{{0.0, 8.0, 0.01}}};
        b.has_eigenproblem = true;
        b.m_fn = [beta](double x) { return 1.0 + beta * std::exp(-x * x); };
        b.m_prime_fn = [beta](double x) { return -2.0 * beta * x * std::exp(-x * x); };
        b.V_fn = [](double x) { return 0.5 * x * x; };
        b.boundary_fn = [](const Grid&) {
            BoundaryModel bm;
            bm.origin = PowerLawOrigin{1.0};
            bm.tail = ExpDecayTail{};
            return bm;
        };
        b.window_lo = 0.5;
        b.window_hi = 3.0;
        return b;
    }
    if (name == "box") {
        reject_unknown({"L"});
        const double L = get("L", 2.0);
        if (!(L > 0))
            throw validation_error("box length must be positive");
        // hard walls at 0 and L: levels n^2 pi^2 / (2 L^2)
        const double pi_ = 3.14159265358979323846;
        b.default_grid = {{{0.0, L, L / 200.0}}};
        // fixed-field form at the first level: y'' + (pi/L)^2 y = 0, y = sin(pi x / L)
        b.g = [](double) { return 0.0; };
        b.f = [L, pi_](double) { return (pi_ / L) * (pi_ / L); };
        b.exact_solution = [L, pi_](double x) { return std::sin(pi_ * x / L); };
        b.has_eigenproblem = true;
        b.m_fn = [](double) { return 1.0; };
        b.m_prime_fn = [](double) { return 0.0; };
        b.V_fn = [](double) { return 0.0; };
        b.boundary_fn = [](const Grid&) {
            BoundaryModel bm;
            bm.origin = PowerLawOrigin{1.0};
            bm.tail = RatioTail{0.0};
            return bm;
        };
        b.exact_eigenvalue = [L](int nodes) {
            const double nq = static_cast<double>(nodes + 1);
            const double pi = 3.14159265358979323846;
            return nq * nq * pi * pi / (2.0 * L * L);
        };
        b.window_lo = 0.2;
        b.window_hi = 3.0 * 3.14159265358979323846 * 3.14159265358979323846 / (2.0 * L * L);
        return b;
    }
    throw validation_error("unknown builtin problem '" + name + "'");
}

} // namespace glnm
