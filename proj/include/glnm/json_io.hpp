#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "glnm/problem.hpp"
#include "glnm/propagate.hpp"
#include "glnm/reference.hpp"

namespace glnm {

nlohmann::json to_json(const GridSpec& spec);
GridSpec grid_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BoundaryModel& model);
BoundaryModel boundary_from_json(const nlohmann::json& j);

/// Fixed-field problem loaded from a problem file: either a builtin by name
/// (grid overridable) or tabulated g/f samples paired with a grid spec.
struct OdeProblemConfig {
    std::string builtin_name; // empty for tabulated problems
    GridPtr grid;
    FieldSamples fields;
    std::array<double, 2> y_start{0, 0};
    std::function<double(double)> exact_solution; // null unless the builtin has one
};
OdeProblemConfig load_ode_problem(const nlohmann::json& j);

/// Eigenproblem loaded from a problem file: builtin or explicit model
/// arrays. "weight" names the normalization weight ("unit" or "x2").
struct EigenProblemConfig {
    std::string builtin_name;
    EigenProblem problem;
};
EigenProblemConfig load_eigen_problem(const nlohmann::json& j);

/// One double with 17 significant digits (round-trips exactly).
std::string format_g17(double v);

/// CSV with header index,x,y[,y_prime] and 17-significant-digit values.
void write_solution_csv(std::ostream& os, const Grid& grid, const SolutionSamples& solution);

struct SolutionCsv {
    std::vector<std::size_t> index;
    std::vector<double> x, y, y_prime; // y_prime empty when absent
};
SolutionCsv read_solution_csv(std::istream& is);

} // namespace glnm
