// Batch front-end: propagation, differentiation, eigensolving, convergence
// studies, method comparisons, and the SCF demo. CSV/JSON out, no plotting.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "glnm/derivative.hpp"
#include "glnm/eigensolve.hpp"
#include "glnm/error.hpp"
#include "glnm/json_io.hpp"
#include "glnm/reference.hpp"
#include "glnm/scf.hpp"
#include "glnm/stencil.hpp"

namespace {

using nlohmann::json;

unsigned thread_cap()
{
    const char* env = std::getenv("GLNM_THREADS");
    if (!env)
        return 0;
    const long v = std::strtol(env, nullptr, 10);
    return v > 0 ? static_cast<unsigned>(v) : 0;
}

json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw glnm::validation_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& ex) {
        throw glnm::validation_error("invalid JSON in '" + path + "': " + ex.what());
    }
    return j;
}

void emit(const std::string& out_path, const std::string& content)
{
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw glnm::validation_error("cannot write '" + out_path + "'");
    out << content;
}

// ---- coeffs ----

int run_coeffs(const std::string& input, const std::string& out_path)
{
    const json j = load_json_file(input);
    glnm::LocalFields lf;
    auto get = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_number())
            throw glnm::validation_error(std::string("coeffs input needs numeric '") + key + "'");
        return j[key].get<double>();
    };
    lf.h = get("h");
    lf.g_minus = get("g_minus");
    lf.g_zero = get("g_zero");
    lf.g_plus = get("g_plus");
    lf.f_minus = get("f_minus");
    lf.f_zero = get("f_zero");
    lf.f_plus = get("f_plus");
    if (!(lf.h > 0))
        throw glnm::validation_error("coeffs input needs h > 0");

    const glnm::StencilCoefficients c = glnm::recurrence_coefficients(lf);
    json out;
    out["T0"] = c.T0;
    out["T_plus"] = c.T_plus;
    out["T_minus"] = c.T_minus;
    out["a"] = c.a;
    out["b0"] = c.b0;
    out["b_plus"] = c.b_plus;
    out["b_minus"] = c.b_minus;
    out["c"] = c.c;
    emit(out_path, out.dump(2) + "\n");
    return 0;
}

// ---- propagate / derivative ----

int run_propagate(const std::string& input, const std::string& out_path, bool with_derivative)
{
    const glnm::OdeProblemConfig cfg = glnm::load_ode_problem(load_json_file(input));
    glnm::SolutionSamples sol =
        glnm::step_recurrence(cfg.fields, cfg.y_start, 0, cfg.grid->size() - 1);
    if (with_derivative)
        sol.y_prime = glnm::derivative_all(cfg.fields, sol);
    std::ostringstream os;
    glnm::write_solution_csv(os, *cfg.grid, sol);
    emit(out_path, os.str());
    return 0;
}

int run_derivative(const std::string& problem_path, const std::string& csv_path,
                   const std::string& out_path)
{
    const glnm::OdeProblemConfig cfg = glnm::load_ode_problem(load_json_file(problem_path));
    std::ifstream in(csv_path);
    if (!in)
        throw glnm::validation_error("cannot open '" + csv_path + "'");
    const glnm::SolutionCsv csv = glnm::read_solution_csv(in);
    if (csv.y.size() != cfg.grid->size())
        throw glnm::validation_error("solution CSV row count does not match the problem grid");

    glnm::SolutionSamples sol;
    sol.y = csv.y;
    sol.y_prime = glnm::derivative_all(cfg.fields, sol);
    std::ostringstream os;
    glnm::write_solution_csv(os, *cfg.grid, sol);
    emit(out_path, os.str());
    return 0;
}

// ---- eigensolve ----

int run_eigensolve(const std::string& input, const std::string& out_path,
                   const std::string& solution_path)
{
    const glnm::EigenProblemConfig cfg = glnm::load_eigen_problem(load_json_file(input));
    const glnm::EigenSolution sol = glnm::solve(cfg.problem);
    json out;
    out["e"] = sol.e;
    out["nodes"] = sol.nodes;
    out["match_residual"] = sol.match_residual;
    out["iterations"] = sol.iterations;
    emit(out_path, out.dump(2) + "\n");
    if (!solution_path.empty()) {
        std::ostringstream os;
        glnm::write_solution_csv(os, *cfg.problem.grid, sol.solution);
        emit(solution_path, os.str());
    }
    return 0;
}

// ---- convergence ----

glnm::GridSpec scaled_spec(const glnm::GridSpec& base, int halvings)
{
    glnm::GridSpec spec = base;
    for (auto& seg : spec.segments)
        seg.step /= static_cast<double>(1 << halvings);
    return spec;
}

double coarsest_step(const glnm::GridSpec& spec)
{
    double h = 0;
    for (const auto& seg : spec.segments)
        h = std::max(h, seg.step);
    return h;
}

int run_convergence(const std::string& name, double h0, int target_nodes,
                    const std::string& out_path)
{
    const glnm::BuiltinProblem b = glnm::builtin_problem(name);
    glnm::GridSpec base = b.default_grid;
    if (h0 <= 0 && base.segments.size() == 1) {
        // start 4x coarser than the working grid so the finest level is the
        // working step and no level sits on the roundoff floor
        const double coarse = 4.0 * base.segments[0].step;
        const double span = base.segments[0].stop - base.segments[0].start;
        if (std::abs(span / coarse - std::lround(span / coarse)) < 1e-9)
            h0 = coarse;
    }
    if (h0 > 0) {
        if (base.segments.size() != 1)
            throw glnm::validation_error("--h0 applies only to single-segment builtins");
        const double span = base.segments[0].stop - base.segments[0].start;
        if (std::abs(span / h0 - std::lround(span / h0)) > 1e-9)
            throw glnm::validation_error("--h0 must divide the builtin's range");
        base.segments[0].step = h0;
    }

    constexpr int levels = 4;
    std::vector<double> errors(levels);
    std::vector<double> steps(levels);
    const bool use_ode = b.has_ode_form();

    std::vector<double> eigenvalues(levels);
    auto run_level = [&](int level) {
        const glnm::GridSpec spec = scaled_spec(base, level);
        steps[level] = coarsest_step(spec);
        const glnm::GridPtr grid = glnm::make_grid(spec);
        if (use_ode) {
            const glnm::FieldSamples fields = b.make_fields(grid);
            const glnm::SolutionSamples sol =
                glnm::step_recurrence(fields, b.start_values(*grid), 0, grid->size() - 1);
            double err = 0;
            for (std::size_t i = 0; i < grid->size(); ++i)
                err = std::max(err, std::abs(sol.y[i] - b.exact_solution(grid->node(i))));
            errors[level] = err;
        } else {
            eigenvalues[level] = glnm::solve(b.make_eigen(grid, target_nodes)).e;
        }
    };

    unsigned cap = thread_cap();
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0)
        hw = 1;
    const unsigned threads = std::min(cap == 0 ? hw : cap, static_cast<unsigned>(levels));
    if (threads > 1) {
        std::vector<std::future<void>> futures;
        for (int level = 0; level < levels; ++level)
            futures.push_back(std::async(std::launch::async, run_level, level));
        for (auto& f : futures)
            f.get();
    } else {
        for (int level = 0; level < levels; ++level)
            run_level(level);
    }

    if (!use_ode) {
        double reference;
        if (b.exact_eigenvalue) {
            reference = b.exact_eigenvalue(target_nodes);
        } else {
            // Richardson extrapolation of the two finest levels (order 4)
            reference = (16.0 * eigenvalues[levels - 1] - eigenvalues[levels - 2]) / 15.0;
        }
        for (int level = 0; level < levels; ++level)
            errors[level] = std::abs(eigenvalues[level] - reference);
    }

    std::ostringstream os;
    os << "h,max_error,observed_order\n";
    for (int level = 0; level < levels; ++level) {
        os << glnm::format_g17(steps[level]) << ',' << glnm::format_g17(errors[level]) << ',';
        if (level + 1 < levels && errors[level + 1] > 0)
            os << glnm::format_g17(std::log2(errors[level] / errors[level + 1]));
        os << '\n';
    }
    emit(out_path, os.str());
    return 0;
}

// ---- compare ----

int run_compare(const std::string& name, std::vector<double> steps, const std::string& out_path)
{
    const glnm::BuiltinProblem b = glnm::builtin_problem(name);
    if (!b.has_ode_form())
        throw glnm::validation_error("compare needs a builtin with a fixed-field form");
    if (b.default_grid.segments.size() != 1)
        throw glnm::validation_error("compare supports single-segment builtins");
    const double x0 = b.default_grid.segments[0].start;
    const double x1 = b.default_grid.segments[0].stop;
    if (steps.empty()) {
        const double h0 = b.default_grid.segments[0].step;
        steps = {4 * h0, 2 * h0, h0, h0 / 2};
    }

    std::ostringstream os;
    os << "h,err_glnm,err_numerov,err_rk4\n";
    for (const double h : steps) {
        const double span = x1 - x0;
        if (std::abs(span / h - std::lround(span / h)) > 1e-9)
            throw glnm::validation_error("step " + glnm::format_g17(h) + " does not divide the range");
        const glnm::GridPtr grid = glnm::make_grid({{{x0, x1, h}}});
        const glnm::FieldSamples fields = b.make_fields(grid);
        const std::array<double, 2> start = b.start_values(*grid);

        const glnm::SolutionSamples glnm_sol =
            glnm::step_recurrence(fields, start, 0, grid->size() - 1);
        double err_glnm = 0;
        for (std::size_t i = 0; i < grid->size(); ++i)
            err_glnm = std::max(err_glnm, std::abs(glnm_sol.y[i] - b.exact_solution(grid->node(i))));

        bool g_zero = true;
        for (double gv : fields.g)
            g_zero = g_zero && gv == 0;
        std::optional<double> err_numerov;
        if (g_zero) {
            const glnm::SolutionSamples nsol =
                glnm::numerov_classic(fields, start, 0, grid->size() - 1);
            double err = 0;
            for (std::size_t i = 0; i < grid->size(); ++i)
                err = std::max(err, std::abs(nsol.y[i] - b.exact_solution(grid->node(i))));
            err_numerov = err;
        }

        // the derivative seed for RK4 comes from a one-sided fourth-order
        // difference of the exact solution
        const double d = (-25.0 * b.exact_solution(x0) + 48.0 * b.exact_solution(x0 + h) -
                          36.0 * b.exact_solution(x0 + 2 * h) + 16.0 * b.exact_solution(x0 + 3 * h) -
                          3.0 * b.exact_solution(x0 + 4 * h)) /
                         (12.0 * h);
        const glnm::SolutionSamples rsol = glnm::rk4_integrate(b.g, b.f, start[0], d, x0, x1, h);
        double err_rk4 = 0;
        for (std::size_t i = 0; i < grid->size(); ++i)
            err_rk4 = std::max(err_rk4, std::abs(rsol.y[i] - b.exact_solution(grid->node(i))));

        os << glnm::format_g17(h) << ',' << glnm::format_g17(err_glnm) << ',';
        if (err_numerov)
            os << glnm::format_g17(*err_numerov);
        os << ',' << glnm::format_g17(err_rk4) << '\n';
    }
    emit(out_path, os.str());
    return 0;
}

// ---- scf-demo ----

int run_scf_demo(double alpha, int max_iter, double tol, const std::string& out_path)
{
    const glnm::GridPtr grid = glnm::make_grid({{{0.0, 8.0, 0.01}}});
    const std::size_t n = grid->size();

    glnm::EigenProblem p;
    p.grid = grid;
    p.m.assign(n, 1.0);
    p.m_prime.assign(n, 0.0);
    p.V.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid->node(i);
        p.V[i] = 0.5 * x * x;
    }
    p.boundary.origin = glnm::PowerLawOrigin{1.0};
    p.boundary.tail = glnm::ExpDecayTail{};
    p.target_nodes = 0;
    p.e_lo = 0.5;
    p.e_hi = 3.0;

    // density feedback: V = x^2/2 + 0.1 y^2
    glnm::ScfUpdate update = [&](const glnm::ScfState& state) {
        glnm::ScfFields fields = state.fields;
        const std::vector<double>& y = state.solutions[0].solution.y;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = grid->node(i);
            fields.V[0][i] = 0.5 * x * x + 0.1 * y[i] * y[i];
        }
        return fields;
    };

    glnm::ScfConfig config;
    config.mixing = alpha;
    config.max_iterations = max_iter;
    config.tolerance_e = tol;
    config.tolerance_field = tol;
    config.max_threads = thread_cap();

    const glnm::ScfState state = glnm::scf_iterate({p}, update, config);
    std::ostringstream os;
    for (std::size_t i = 0; i < state.history.size(); ++i) {
        json line;
        line["iter"] = i + 1;
        line["e"] = state.history[i].e[0];
        line["delta_e"] = state.history[i].delta_e;
        line["delta_field"] = state.history[i].delta_field;
        os << line.dump() << '\n';
    }
    emit(out_path, os.str());
    if (!state.converged)
        throw glnm::solver_error(state.diagnostic);
    return 0;
}


int run_app(int argc, char** argv)
{
    CLI::App app{"generalized linear Numerov method toolkit"};
    app.require_subcommand(1);

    std::string input, out_path, csv_path, solution_path;
    bool with_derivative = false;

    auto* coeffs = app.add_subcommand("coeffs", "stencil coefficients for one local-field triple");
    coeffs->add_option("input", input, "local fields JSON")->required();
    coeffs->add_option("-o,--out", out_path, "output file (default stdout)");

    auto* propagate = app.add_subcommand("propagate", "march a problem over its grid");
    propagate->add_option("input", input, "problem JSON")->required();
    propagate->add_option("-o,--out", out_path, "output CSV (default stdout)");
    propagate->add_flag("--derivative", with_derivative, "append a y_prime column");

    auto* derivative = app.add_subcommand("derivative", "append y_prime to a propagated solution");
    derivative->add_option("problem", input, "problem JSON")->required();
    derivative->add_option("solution", csv_path, "solution CSV from propagate")->required();
    derivative->add_option("-o,--out", out_path, "output CSV (default stdout)");

    auto* eigensolve = app.add_subcommand("eigensolve", "shooting eigenvalue solve");
    eigensolve->add_option("input", input, "eigenproblem JSON")->required();
    eigensolve->add_option("-o,--out", out_path, "result JSON (default stdout)");
    eigensolve->add_option("--solution", solution_path, "also write the normalized solution CSV");

    std::string builtin;
    double h0 = 0;
    int target_nodes = 0;
    auto* convergence = app.add_subcommand("convergence", "step-halving study at h, h/2, h/4, h/8");
    convergence->add_option("builtin", builtin, "builtin problem name")->required();
    convergence->add_option("--h0", h0, "coarsest step (single-segment builtins)");
    convergence->add_option("--nodes", target_nodes, "target node count for eigen builtins");
    convergence->add_option("-o,--out", out_path, "output CSV (default stdout)");

    std::vector<double> steps;
    auto* compare = app.add_subcommand("compare", "GLNM vs classic Numerov vs RK4 accuracy");
    compare->add_option("builtin", builtin, "builtin problem name")->required();
    compare->add_option("--steps", steps, "step sizes to run")->delimiter(',');
    compare->add_option("-o,--out", out_path, "output CSV (default stdout)");

    double alpha = 0.5, tol = 1e-10;
    int max_iter = 200;
    auto* scf_demo = app.add_subcommand("scf-demo", "density-feedback SCF toy model");
    scf_demo->add_option("--alpha", alpha, "mixing fraction (default 0.5)");
    scf_demo->add_option("--max-iter", max_iter, "iteration cap");
    scf_demo->add_option("--tol", tol, "eigenvalue and field tolerance");
    scf_demo->add_option("-o,--out", out_path, "output JSON lines (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (coeffs->parsed())
            return run_coeffs(input, out_path);
        if (propagate->parsed())
            return run_propagate(input, out_path, with_derivative);
        if (derivative->parsed())
            return run_derivative(input, csv_path, out_path);
        if (eigensolve->parsed())
            return run_eigensolve(input, out_path, solution_path);
        if (convergence->parsed())
            return run_convergence(builtin, h0, target_nodes, out_path);
        if (compare->parsed())
            return run_compare(builtin, steps, out_path);
        if (scf_demo->parsed())
            return run_scf_demo(alpha, max_iter, tol, out_path);
    } catch (const glnm::validation_error& ex) {
        json err;
        err["error"] = {{"type", "validation"}, {"message", ex.what()}};
        std::cerr << err.dump() << '\n';
        return 1;
    } catch (const glnm::solver_error& ex) {
        json err;
        err["error"] = {{"type", "solver"}, {"message", ex.what()}};
        std::cerr << err.dump() << '\n';
        return 2;
    } catch (const std::exception& ex) {
        json err;
        err["error"] = {{"type", "internal"}, {"message", ex.what()}};
        std::cerr << err.dump() << '\n';
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run_app(argc, argv);
    } catch (const std::exception& ex) {
        std::cerr << R"({"error":{"type":"internal","message":")" << ex.what() << R"("}})" << '\n';
        return 2;
    } catch (...) {
        std::cerr << R"({"error":{"type":"internal","message":"unknown error"}})" << '\n';
        return 2;
    }
}
