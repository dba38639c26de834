#include <doctest.h>

#include <cmath>
#include <string>

#include "glnm/error.hpp"
#include "glnm/scf.hpp"
#include "test_problems.hpp"

using namespace glnm;
using namespace glnm_test;

namespace {

EigenProblem toy_problem(GridPtr grid)
{
    return harmonic_problem(grid, 0, 0.5, 3.0);
}

ScfUpdate density_feedback(GridPtr grid)
{
    return [grid](const ScfState& state) {
        ScfFields fields = state.fields;
        const std::vector<double>& y = state.solutions[0].solution.y;
        for (std::size_t i = 0; i < grid->size(); ++i) {
            const double x = grid->node(i);
            fields.V[0][i] = 0.5 * x * x + 0.1 * y[i] * y[i];
        }
        return fields;
    };
}

} // namespace

TEST_SUITE("scf")
{
    TEST_CASE("identity update converges in exactly one iteration")
    {
        const GridPtr grid = make_grid({{{0.0, 8.0, 0.02}}});
        const EigenProblem p = toy_problem(grid);
        const ScfUpdate identity = [](const ScfState& s) { return s.fields; };
        ScfConfig config;
        config.mixing = 0.37; // any fraction must keep identical fields bit-for-bit

        const ScfState state = scf_iterate({p}, identity, config);
        CHECK(state.converged);
        CHECK(state.iteration == 1);
        REQUIRE(state.history.size() == 1);
        CHECK(state.history[0].delta_e == 0.0);
        CHECK(state.history[0].delta_field == 0.0);
        REQUIRE(state.fields.V.size() == 1);
        for (std::size_t i = 0; i < grid->size(); ++i) {
            CHECK(state.fields.V[0][i] == p.V[i]);
            CHECK(state.fields.m[i] == p.m[i]);
            CHECK(state.fields.m_prime[i] == p.m_prime[i]);
        }
    }

    TEST_CASE("density-feedback toy model reproduces its frozen fixture")
    {
        // fixture from the pre-build prototype: alpha = 0.5, tolerances 1e-12
        const double fixture = 1.559464983602244;
        const GridPtr grid = make_grid({{{0.0, 8.0, 0.01}}});
        ScfConfig config;
        config.mixing = 0.5;
        config.max_iterations = 100;
        config.tolerance_e = 1e-12;
        config.tolerance_field = 1e-12;

        const ScfState state = scf_iterate({toy_problem(grid)}, density_feedback(grid), config);
        CHECK(state.converged);
        CHECK(std::abs(state.solutions[0].e - fixture) <= 1e-10);
        CHECK(state.history.back().delta_field < config.tolerance_field);
        CHECK(static_cast<int>(state.history.size()) == state.iteration);

        // geometric contraction: delta_e strictly decreasing after iteration 3
        for (std::size_t i = 3; i + 1 < state.history.size(); ++i)
            CHECK(state.history[i + 1].delta_e < state.history[i].delta_e);
    }

    TEST_CASE("alpha = 1 replaces the fields with the candidate exactly")
    {
        const GridPtr grid = make_grid({{{0.0, 8.0, 0.02}}});
        const EigenProblem p = toy_problem(grid);
        std::vector<double> target(grid->size());
        for (std::size_t i = 0; i < grid->size(); ++i) {
            const double x = grid->node(i);
            target[i] = 0.5 * x * x + 0.01 * std::exp(-x);
        }
        const ScfUpdate jump = [&target](const ScfState& s) {
            ScfFields fields = s.fields;
            fields.V[0] = target;
            return fields;
        };
        ScfConfig config;
        config.mixing = 1.0;
        config.max_iterations = 1;

        const ScfState state = scf_iterate({p}, jump, config);
        CHECK_FALSE(state.converged);
        CHECK_FALSE(state.diagnostic.empty());
        for (std::size_t i = 0; i < grid->size(); ++i)
            CHECK(state.fields.V[0][i] == target[i]);
    }

    TEST_CASE("solve failures carry the state and iteration")
    {
        const GridPtr grid = make_grid({{{0.0, 8.0, 0.02}}});
        EigenProblem p = toy_problem(grid);
        p.e_lo = 5.0; // window above the ground state
        p.e_hi = 6.0;
        const ScfUpdate identity = [](const ScfState& s) { return s.fields; };
        try {
            scf_iterate({p}, identity, ScfConfig{});
            FAIL("expected solver_error");
        } catch (const solver_error& ex) {
            const std::string what = ex.what();
            CHECK(what.find("state 0") != std::string::npos);
            CHECK(what.find("iteration 1") != std::string::npos);
        }
    }

    TEST_CASE("configuration validation")
    {
        const GridPtr grid = make_grid({{{0.0, 8.0, 0.1}}});
        const EigenProblem p = toy_problem(grid);
        const ScfUpdate identity = [](const ScfState& s) { return s.fields; };
        ScfConfig bad;
        bad.mixing = 0.0;
        CHECK_THROWS_AS(scf_iterate({p}, identity, bad), validation_error);
        bad.mixing = 0.5;
        bad.tolerance_e = 0.0;
        CHECK_THROWS_AS(scf_iterate({p}, identity, bad), validation_error);
        CHECK_THROWS_AS(scf_iterate({}, identity, ScfConfig{}), validation_error);

        const ScfUpdate misshapen = [](const ScfState& s) {
            ScfFields fields = s.fields;
            fields.m.pop_back();
            return fields;
        };
        CHECK_THROWS_AS(scf_iterate({p}, misshapen, ScfConfig{}), validation_error);
    }
}
