#include "glnm/scf.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "glnm/error.hpp"

namespace glnm {

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

void mix_into(std::vector<double>& current, const std::vector<double>& candidate, double alpha)
{
    // equal entries stay bit-identical regardless of alpha
    for (std::size_t i = 0; i < current.size(); ++i)
        if (current[i] != candidate[i])
            current[i] = (1.0 - alpha) * current[i] + alpha * candidate[i];
}

std::vector<EigenSolution> solve_all(const std::vector<EigenProblem>& problems, unsigned max_threads,
                                     int iteration)
{
    const std::size_t count = problems.size();
    std::vector<EigenSolution> solutions(count);
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0)
        hw = 1;
    unsigned threads = max_threads == 0 ? hw : max_threads;
    threads = std::min<unsigned>(threads, static_cast<unsigned>(count));

    auto solve_one = [&](std::size_t i) {
        try {
            solutions[i] = solve(problems[i]);
        } catch (const std::exception& ex) {
            throw solver_error("state " + std::to_string(i) + ", iteration " +
                               std::to_string(iteration) + ": " + ex.what());
        }
    };
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            solve_one(i);
    } else {
        std::vector<std::future<void>> futures;
        futures.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
            futures.push_back(std::async(std::launch::async, solve_one, i));
        for (auto& f : futures)
            f.get();
    }
    return solutions;
}

} // namespace

ScfState scf_iterate(std::vector<EigenProblem> problems, const ScfUpdate& update,
                     const ScfConfig& config)
{
    if (problems.empty())
        throw validation_error("scf_iterate needs at least one problem");
    if (!(config.mixing > 0 && config.mixing <= 1))
        throw validation_error("mixing fraction must lie in (0, 1]");
    if (!(config.tolerance_e > 0) || !(config.tolerance_field > 0))
        throw validation_error("scf tolerances must be positive");

    ScfState state;
    state.fields.m = problems[0].m;
    state.fields.m_prime = problems[0].m_prime;
    state.fields.V.reserve(problems.size());
    for (const EigenProblem& p : problems)
        state.fields.V.push_back(p.V);

    std::vector<double> prev_e;
    std::vector<std::pair<double, double>> base_window;
    base_window.reserve(problems.size());
    for (const EigenProblem& p : problems)
        base_window.emplace_back(p.e_lo, p.e_hi);

    for (int iter = 1; iter <= config.max_iterations; ++iter) {
        for (std::size_t i = 0; i < problems.size(); ++i) {
            problems[i].m = state.fields.m;
            problems[i].m_prime = state.fields.m_prime;
            problems[i].V = state.fields.V[i];
            if (!prev_e.empty()) {
                const double width =
                    std::max((base_window[i].second - base_window[i].first) * std::pow(0.5, iter - 1),
                             100.0 * config.tolerance_e);
                problems[i].e_lo = prev_e[i] - 0.5 * width;
                problems[i].e_hi = prev_e[i] + 0.5 * width;
            }
        }

        try {
            state.solutions = solve_all(problems, config.max_threads, iter);
        } catch (const solver_error&) {
            if (prev_e.empty())
                throw;
            // a warm window can lose a fast-moving state; retry it full once
            for (std::size_t i = 0; i < problems.size(); ++i) {
                problems[i].e_lo = base_window[i].first;
                problems[i].e_hi = base_window[i].second;
            }
            state.solutions = solve_all(problems, config.max_threads, iter);
        }

        double delta_e = 0;
        if (!prev_e.empty())
            for (std::size_t i = 0; i < problems.size(); ++i)
                delta_e = std::max(delta_e, std::abs(state.solutions[i].e - prev_e[i]));

        const ScfFields candidate = update(state);
        if (candidate.m.size() != state.fields.m.size() ||
            candidate.m_prime.size() != state.fields.m_prime.size() ||
            candidate.V.size() != state.fields.V.size())
            throw validation_error("update map returned fields of the wrong shape");

        double delta_field = max_abs_diff(candidate.m, state.fields.m);
        delta_field = std::max(delta_field, max_abs_diff(candidate.m_prime, state.fields.m_prime));
        for (std::size_t i = 0; i < candidate.V.size(); ++i)
            delta_field = std::max(delta_field, max_abs_diff(candidate.V[i], state.fields.V[i]));

        mix_into(state.fields.m, candidate.m, config.mixing);
        mix_into(state.fields.m_prime, candidate.m_prime, config.mixing);
        for (std::size_t i = 0; i < candidate.V.size(); ++i)
            mix_into(state.fields.V[i], candidate.V[i], config.mixing);

        state.iteration = iter;
        std::vector<double> iter_e(problems.size());
        for (std::size_t i = 0; i < problems.size(); ++i)
            iter_e[i] = state.solutions[i].e;
        state.history.push_back({delta_e, delta_field, std::move(iter_e)});

        if (delta_e < config.tolerance_e && delta_field < config.tolerance_field) {
            state.converged = true;
            return state;
        }

        prev_e.resize(problems.size());
        for (std::size_t i = 0; i < problems.size(); ++i)
            prev_e[i] = state.solutions[i].e;
    }

    state.diagnostic = "max_iterations (" + std::to_string(config.max_iterations) +
                       ") exceeded without convergence";
    return state;
}

} // namespace glnm
