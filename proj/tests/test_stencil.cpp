#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "glnm/error.hpp"
#include "glnm/stencil.hpp"

using namespace glnm;

namespace {
constexpr double eps = std::numeric_limits<double>::epsilon();

LocalFields random_fields(std::mt19937& rng)
{
    std::uniform_real_distribution<double> logh(-3.0, -0.3);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    LocalFields lf;
    lf.h = std::pow(10.0, logh(rng));
    lf.g_minus = val(rng);
    lf.g_zero = val(rng);
    lf.g_plus = val(rng);
    lf.f_minus = val(rng);
    lf.f_zero = val(rng);
    lf.f_plus = val(rng);
    return lf;
}
} // namespace

TEST_SUITE("stencil")
{
    TEST_CASE("g = 0 reduces to the ordinary Numerov weights bit-for-bit")
    {
        const double h = 0.1;
        const StencilCoefficients c = recurrence_coefficients({h, 0, 0, 0, 1, 1, 1});
        CHECK(c.a == 1.0);
        CHECK(c.b0 == 1.0);
        CHECK(c.b_plus == 1.0);
        CHECK(c.b_minus == 1.0);
        CHECK(c.c == 1.0);
        CHECK(c.T0 == 2.0 - (5.0 * h * h / 6.0) * 1.0);
        CHECK(c.T0 == doctest::Approx(1.9916666666666667).epsilon(1e-16));
        CHECK(c.T_plus == 1.0 + (h * h / 12.0) * 1.0);
        CHECK(c.T_minus == c.T_plus);
        CHECK(StencilCoefficients::truncation_order == 6);
    }

    TEST_CASE("constant g keeps a at 1 and shrinks b0, c")
    {
        const double h = 0.1;
        const StencilCoefficients c = recurrence_coefficients({h, 1.0, 1.0, 1.0, 0, 0, 0});
        // algebraic identity; floating point leaves at most an ulp
        CHECK(std::abs(c.a - 1.0) <= 2.0 * eps);
        CHECK(c.b0 == doctest::Approx(1.0 - h * h / 15.0).epsilon(1e-15));
        CHECK(c.c == doctest::Approx(1.0 - h * h / 10.0).epsilon(1e-15));
    }

    TEST_CASE("reduction holds for random f with g = 0")
    {
        std::mt19937 rng(20240811);
        for (int trial = 0; trial < 1000; ++trial) {
            LocalFields lf = random_fields(rng);
            lf.g_minus = lf.g_zero = lf.g_plus = 0.0;
            const StencilCoefficients c = recurrence_coefficients(lf);
            CHECK(c.a == 1.0);
            CHECK(c.b0 == 1.0);
            CHECK(c.b_plus == 1.0);
            CHECK(c.b_minus == 1.0);
            CHECK(c.c == 1.0);
            const double h = lf.h;
            CHECK(c.T0 == 2.0 - (5.0 * h * h / 6.0) * lf.f_zero);
            CHECK(c.T_plus == 1.0 + (h * h / 12.0) * lf.f_plus);
            CHECK(c.T_minus == 1.0 + (h * h / 12.0) * lf.f_minus);
        }
    }

    TEST_CASE("reflection swaps the plus and minus weights exactly")
    {
        std::mt19937 rng(77);
        for (int trial = 0; trial < 200; ++trial) {
            const LocalFields lf = random_fields(rng);
            LocalFields mirrored;
            mirrored.h = lf.h;
            mirrored.g_minus = -lf.g_plus;
            mirrored.g_zero = -lf.g_zero;
            mirrored.g_plus = -lf.g_minus;
            mirrored.f_minus = lf.f_plus;
            mirrored.f_zero = lf.f_zero;
            mirrored.f_plus = lf.f_minus;

            const StencilCoefficients c = recurrence_coefficients(lf);
            const StencilCoefficients m = recurrence_coefficients(mirrored);
            CHECK(m.T_plus == c.T_minus);
            CHECK(m.T_minus == c.T_plus);
            CHECK(m.T0 == c.T0);
            CHECK(m.a == c.a);
            CHECK(m.b0 == c.b0);
            CHECK(m.c == c.c);
            CHECK(m.b_plus == c.b_minus);
            CHECK(m.b_minus == c.b_plus);

            const DerivativeStencil d = derivative_coefficients(lf);
            const DerivativeStencil md = derivative_coefficients(mirrored);
            CHECK(md.S_plus == d.S_minus);
            CHECK(md.S_minus == d.S_plus);
            CHECK(md.S0 == -d.S0);
        }
    }

    TEST_CASE("derivative stencil examples")
    {
        const DerivativeStencil plain = derivative_coefficients({0.1, 0, 0, 0, 0, 0, 0});
        CHECK(plain.S0 == 0.0);
        CHECK(plain.S_plus == 1.0);
        CHECK(plain.S_minus == 1.0);
        CHECK(DerivativeStencil::truncation_order == 4);

        const double h = 0.1;
        const DerivativeStencil with_f = derivative_coefficients({h, 0, 0, 0, 1, 1, 1});
        CHECK(with_f.S_plus == 1.0 + (h * h / 6.0) * 1.0);

        const DerivativeStencil with_g = derivative_coefficients({h, 1, 0, 1, 0, 0, 0});
        CHECK(with_g.S0 == 0.0);
        CHECK(with_g.S_plus == doctest::Approx(1.0 - h * h / 6.0).epsilon(1e-15));
        CHECK(with_g.S_minus == doctest::Approx(1.0 - h * h / 6.0).epsilon(1e-15));
    }

    TEST_CASE("singular stencil is an error for the derivative only")
    {
        // a = (1 + h g+/3)(1 - h g-/3) + h^2 g0 (g+ + g-)/18 vanishes here
        const LocalFields degenerate{1.0, 3.0, 0.0, -3.0, 0, 0, 0};
        CHECK_NOTHROW(recurrence_coefficients(degenerate));
        CHECK(recurrence_coefficients(degenerate).a == 0.0);
        CHECK_THROWS_AS(derivative_coefficients(degenerate), solver_error);
    }

    TEST_CASE("cache recombination matches the direct evaluation bit-for-bit")
    {
        const GridPtr grid = make_grid({{{0.0, 0.4, 0.05}, {0.4, 2.0, 0.1}}});
        std::mt19937 rng(5150);
        std::uniform_real_distribution<double> val(-3.0, 3.0);
        std::vector<double> g(grid->size()), f(grid->size());
        for (std::size_t i = 0; i < grid->size(); ++i) {
            g[i] = val(rng);
            f[i] = val(rng);
        }
        const StencilCache cache(*grid, g);
        for (std::size_t i = 1; i + 1 < grid->size(); ++i) {
            const Grid::Triple t = grid->triple_at(i);
            const StencilCache::Weights w =
                StencilCache::combine(cache.row(i), f[t.minus], f[i], f[t.plus]);
            const StencilCoefficients c = recurrence_coefficients(
                {t.h, g[t.minus], g[i], g[t.plus], f[t.minus], f[i], f[t.plus]});
            CHECK(w.T0 == c.T0);
            CHECK(w.Tp == c.T_plus);
            CHECK(w.Tm == c.T_minus);
        }
    }
}
