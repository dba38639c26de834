#include <doctest.h>

#include <cmath>
#include <random>

#include "glnm/error.hpp"
#include "glnm/reference.hpp"

using namespace glnm;

namespace {

// term-wise series derivative of J1, for the Bessel residual check
double j1_prime_series(double x)
{
    const double q = x * x / 4.0;
    double term = 0.5, sum = 0.5;
    for (int k = 1; k <= 30; ++k) {
        term *= -q * (2.0 * k + 1.0) / ((2.0 * k - 1.0) * k * (k + 1.0));
        sum += term;
    }
    return sum;
}

} // namespace

TEST_SUITE("reference")
{
    TEST_CASE("rk4 is exact on a straight line")
    {
        const SolutionSamples sol = rk4_integrate(
            [](double) { return 0.0; }, [](double) { return 0.0; }, 0.0, 1.0, 0.0, 1.0, 0.1);
        REQUIRE(sol.y.size() == 11);
        for (std::size_t i = 0; i < sol.y.size(); ++i) {
            CHECK(sol.y[i] == doctest::Approx(0.1 * static_cast<double>(i)).epsilon(1e-14));
            CHECK(sol.y_prime[i] == doctest::Approx(1.0).epsilon(1e-14));
        }
    }

    TEST_CASE("rk4 on the manufactured exponential")
    {
        const SolutionSamples sol = rk4_integrate(
            [](double x) { return x; }, [](double x) { return -(1.0 + x); }, 1.0, 1.0, 0.0, 2.0,
            0.001);
        CHECK(std::abs(sol.y.back() - std::exp(2.0)) < 1e-11);
    }

    TEST_CASE("rk4 reproduces the Bessel series downstream")
    {
        const SolutionSamples sol = rk4_integrate(
            [](double x) { return 1.0 / x; }, [](double) { return 1.0; }, bessel_j0_series(0.1),
            -bessel_j1_series(0.1), 0.1, 5.0, 0.0005);
        CHECK(std::abs(sol.y.back() - bessel_j0_series(5.0)) < 1e-10);
    }

    TEST_CASE("rk4 rejects blow-ups")
    {
        CHECK_THROWS_AS(rk4_integrate([](double) { return 0.0; },
                                      [](double) { return -1e308; }, 1.0, 1.0, 0.0, 10.0, 0.1),
                        solver_error);
    }

    TEST_CASE("classic Numerov marches a line and a sine")
    {
        const GridPtr line_grid = make_grid({{{0.0, 1.0, 0.1}}});
        FieldSamples zero;
        zero.grid = line_grid;
        zero.g.assign(line_grid->size(), 0.0);
        zero.f.assign(line_grid->size(), 0.0);
        const SolutionSamples line = numerov_classic(zero, {0.0, 0.1}, 0, line_grid->size() - 1);
        for (std::size_t i = 0; i < line_grid->size(); ++i)
            CHECK(line.y[i] == doctest::Approx(line_grid->node(i)).epsilon(1e-13));

        const double pi = 3.14159265358979323846;
        const double h = pi / 315.0;
        const GridPtr sine_grid = make_grid({{{0.0, pi, h}}});
        FieldSamples one;
        one.grid = sine_grid;
        one.g.assign(sine_grid->size(), 0.0);
        one.f.assign(sine_grid->size(), 1.0);
        const SolutionSamples sine =
            numerov_classic(one, {0.0, std::sin(h)}, 0, sine_grid->size() - 1);
        double max_err = 0;
        for (std::size_t i = 0; i < sine_grid->size(); ++i)
            max_err = std::max(max_err, std::abs(sine.y[i] - std::sin(sine_grid->node(i))));
        CHECK(max_err < 1e-10);
    }

    TEST_CASE("classic Numerov wants uniform g = 0 problems")
    {
        const GridPtr grid = make_grid({{{0.0, 1.0, 0.1}}});
        FieldSamples fields;
        fields.grid = grid;
        fields.g.assign(grid->size(), 0.0);
        fields.f.assign(grid->size(), 1.0);
        fields.g[3] = 0.5;
        CHECK_THROWS_AS(numerov_classic(fields, {0.0, 0.1}, 0, grid->size() - 1),
                        validation_error);
    }

    TEST_CASE("rk4 and the generalized march agree at equal step")
    {
        const GridPtr grid = make_grid({{{0.0, 2.0, 0.01}}});
        const FieldSamples fields = sample_fields(
            grid, [](double x) { return x; }, [](double x) { return -(1.0 + x); });
        const SolutionSamples a =
            step_recurrence(fields, {1.0, std::exp(0.01)}, 0, grid->size() - 1);
        const SolutionSamples b = rk4_integrate(
            [](double x) { return x; }, [](double x) { return -(1.0 + x); }, 1.0, 1.0, 0.0, 2.0,
            0.01);
        double gap = 0;
        for (std::size_t i = 0; i < grid->size(); ++i)
            gap = std::max(gap, std::abs(a.y[i] - b.y[i]));
        CHECK(gap < 2e-8); // sum of the two methods' fitted error bounds at this step
    }

    TEST_CASE("Bessel series oracle sanity")
    {
        CHECK(bessel_j0_series(0.0) == 1.0);
        CHECK(std::abs(bessel_j0_series(2.404825557695773)) < 1e-14);
        CHECK(bessel_j1_series(0.0) == 0.0);
        // recurrence consistency J0 + J0'/x ... checked via the residual below
    }

    TEST_CASE("builtin definitions satisfy their own equations")
    {
        std::mt19937 rng(31415);

        // manufactured_exp: residual of y = e^x in y'' + x y' - (1+x) y
        {
            const BuiltinProblem b = builtin_problem("manufactured_exp");
            std::uniform_real_distribution<double> xs(0.0, 2.0);
            for (int i = 0; i < 100; ++i) {
                const double x = xs(rng);
                const double y = std::exp(x);
                const double residual = y + b.g(x) * y + b.f(x) * y;
                CHECK(std::abs(residual) < 1e-12 * std::abs((1.0 + x) * y));
            }
        }
        // bessel_j0: residual of the series in y'' + y'/x + y, with y'' from
        // the term-wise derivative of -J1
        {
            const BuiltinProblem b = builtin_problem("bessel_j0");
            std::uniform_real_distribution<double> xs(0.1, 11.0);
            for (int i = 0; i < 100; ++i) {
                const double x = xs(rng);
                const double y = bessel_j0_series(x);
                const double yp = -bessel_j1_series(x);
                const double ypp = -j1_prime_series(x);
                const double residual = ypp + b.g(x) * yp + b.f(x) * y;
                CHECK(std::abs(residual) < 1e-12);
            }
        }
        // box fixed-field form: y = sin(pi x / L)
        {
            const BuiltinProblem b = builtin_problem("box", {{"L", 2.0}});
            const double pi = 3.14159265358979323846;
            std::uniform_real_distribution<double> xs(0.0, 2.0);
            for (int i = 0; i < 100; ++i) {
                const double x = xs(rng);
                const double y = std::sin(pi * x / 2.0);
                const double ypp = -(pi / 2.0) * (pi / 2.0) * y;
                CHECK(std::abs(ypp + b.f(x) * y) < 1e-12);
            }
        }
    }

    TEST_CASE("builtin lookup and parameters")
    {
        for (const char* name : {"manufactured_exp", "bessel_j0", "hydrogen_R", "harmonic_R",
                                 "effective_mass_gauss", "box"})
            CHECK_NOTHROW(builtin_problem(name));
        CHECK_THROWS_AS(builtin_problem("nope"), validation_error);
        CHECK_THROWS_AS(builtin_problem("box", {{"width", 1.0}}), validation_error);
        CHECK_THROWS_AS(builtin_problem("box", {{"L", -1.0}}), validation_error);

        const BuiltinProblem hyd = builtin_problem("hydrogen_R");
        CHECK(hyd.has_eigenproblem);
        CHECK(hyd.exact_eigenvalue(0) == -0.5);
        CHECK(hyd.exact_eigenvalue(1) == -0.125);
        CHECK_FALSE(hyd.has_ode_form());

        const BuiltinProblem emg = builtin_problem("effective_mass_gauss", {{"beta", 0.3}});
        CHECK(emg.has_eigenproblem);
        CHECK(!emg.exact_eigenvalue);
        CHECK(emg.m_fn(0.0) == doctest::Approx(1.3).epsilon(1e-15));
    }
}
