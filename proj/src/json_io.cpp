#include "glnm/json_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "glnm/error.hpp"

namespace glnm {

namespace {

double require_number(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_number())
        throw validation_error(std::string("missing numeric field '") + key + "'");
    return j[key].get<double>();
}

std::vector<double> number_array(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_array())
        throw validation_error(std::string("missing array field '") + key + "'");
    std::vector<double> out;
    out.reserve(j[key].size());
    for (const auto& v : j[key]) {
        if (!v.is_number())
            throw validation_error(std::string("non-numeric entry in '") + key + "'");
        out.push_back(v.get<double>());
    }
    return out;
}

std::function<double(double)> weight_by_name(const std::string& name)
{
    if (name == "unit")
        return {};
    if (name == "x2")
        return [](double x) { return x * x; };
    throw validation_error("unknown weight '" + name + "' (use \"unit\" or \"x2\")");
}

} // namespace

nlohmann::json to_json(const GridSpec& spec)
{
    nlohmann::json segments = nlohmann::json::array();
    for (const GridSegment& s : spec.segments)
        segments.push_back({{"start", s.start}, {"stop", s.stop}, {"step", s.step}});
    return {{"segments", segments}};
}

GridSpec grid_spec_from_json(const nlohmann::json& j)
{
    if (!j.contains("segments") || !j["segments"].is_array())
        throw validation_error("grid spec needs a 'segments' array");
    GridSpec spec;
    for (const auto& s : j["segments"])
        spec.segments.push_back({require_number(s, "start"), require_number(s, "stop"),
                                 require_number(s, "step")});
    return spec;
}

nlohmann::json to_json(const BoundaryModel& model)
{
    nlohmann::json j;
    if (const auto* p = std::get_if<PowerLawOrigin>(&model.origin))
        j["origin"] = {{"type", "power_law"}, {"exponent", p->exponent}};
    else {
        const auto& t = std::get<TwoPointOrigin>(model.origin);
        j["origin"] = {{"type", "two_point"}, {"y0", t.y0}, {"y1", t.y1}};
    }
    if (std::holds_alternative<ExpDecayTail>(model.tail))
        j["tail"] = {{"type", "exp_decay"}};
    else
        j["tail"] = {{"type", "ratio"}, {"value", std::get<RatioTail>(model.tail).value}};
    return j;
}

BoundaryModel boundary_from_json(const nlohmann::json& j)
{
    BoundaryModel model;
    if (j.contains("origin")) {
        const auto& o = j["origin"];
        const std::string type = o.value("type", "power_law");
        if (type == "power_law")
            model.origin = PowerLawOrigin{require_number(o, "exponent")};
        else if (type == "two_point")
            model.origin = TwoPointOrigin{require_number(o, "y0"), require_number(o, "y1")};
        else
            throw validation_error("unknown origin seed type '" + type + "'");
    }
    if (j.contains("tail")) {
        const auto& t = j["tail"];
        const std::string type = t.value("type", "exp_decay");
        if (type == "exp_decay")
            model.tail = ExpDecayTail{};
        else if (type == "ratio")
            model.tail = RatioTail{require_number(t, "value")};
        else
            throw validation_error("unknown tail seed type '" + type + "'");
    }
    return model;
}

OdeProblemConfig load_ode_problem(const nlohmann::json& j)
{
    OdeProblemConfig cfg;
    if (j.contains("builtin")) {
        cfg.builtin_name = j["builtin"].get<std::string>();
        Params params;
        if (j.contains("params"))
            for (const auto& [key, value] : j["params"].items())
                params[key] = value.get<double>();
        const BuiltinProblem b = builtin_problem(cfg.builtin_name, params);
        if (!b.has_ode_form())
            throw validation_error("builtin '" + cfg.builtin_name +
                                   "' has no fixed-field form; use the eigensolve command");
        const GridSpec spec = j.contains("grid") ? grid_spec_from_json(j["grid"]) : b.default_grid;
        cfg.grid = make_grid(spec);
        cfg.fields = b.make_fields(cfg.grid);
        cfg.y_start = b.start_values(*cfg.grid);
        cfg.exact_solution = b.exact_solution;
        return cfg;
    }
    if (!j.contains("tabulated"))
        throw validation_error("problem file needs either 'builtin' or 'tabulated'");
    if (!j.contains("grid"))
        throw validation_error("tabulated problem needs a 'grid'");
    cfg.grid = make_grid(grid_spec_from_json(j["grid"]));
    cfg.fields.grid = cfg.grid;
    cfg.fields.g = number_array(j["tabulated"], "g");
    cfg.fields.f = number_array(j["tabulated"], "f");
    if (cfg.fields.g.size() != cfg.grid->size() || cfg.fields.f.size() != cfg.grid->size())
        throw validation_error("tabulated g/f lengths do not match the grid node count");
    const std::vector<double> start = number_array(j, "y_start");
    if (start.size() != 2)
        throw validation_error("'y_start' must hold exactly two values");
    cfg.y_start = {start[0], start[1]};
    return cfg;
}

EigenProblemConfig load_eigen_problem(const nlohmann::json& j)
{
    EigenProblemConfig cfg;
    if (j.contains("builtin")) {
        cfg.builtin_name = j["builtin"].get<std::string>();
        Params params;
        if (j.contains("params"))
            for (const auto& [key, value] : j["params"].items())
                params[key] = value.get<double>();
        const BuiltinProblem b = builtin_problem(cfg.builtin_name, params);
        if (!b.has_eigenproblem)
            throw validation_error("builtin '" + cfg.builtin_name + "' is not an eigenproblem");
        const GridSpec spec = j.contains("grid") ? grid_spec_from_json(j["grid"]) : b.default_grid;
        cfg.problem = b.make_eigen(make_grid(spec), j.value("target_nodes", 0));
        if (j.contains("weight"))
            cfg.problem.weight = weight_by_name(j["weight"].get<std::string>());
        if (j.contains("boundary"))
            cfg.problem.boundary = boundary_from_json(j["boundary"]);
    } else {
        if (!j.contains("grid") || !j.contains("model"))
            throw validation_error("eigenproblem file needs 'builtin' or 'grid' + 'model'");
        cfg.problem.grid = make_grid(grid_spec_from_json(j["grid"]));
        cfg.problem.m = number_array(j["model"], "m");
        cfg.problem.m_prime = number_array(j["model"], "m_prime");
        cfg.problem.V = number_array(j["model"], "V");
        if (j.contains("boundary"))
            cfg.problem.boundary = boundary_from_json(j["boundary"]);
        cfg.problem.target_nodes = j.value("target_nodes", 0);
        cfg.problem.weight = weight_by_name(j.value("weight", "unit"));
    }
    if (j.contains("window")) {
        const auto& w = j["window"];
        if (!w.is_array() || w.size() != 2)
            throw validation_error("'window' must be [e_lo, e_hi]");
        cfg.problem.e_lo = w[0].get<double>();
        cfg.problem.e_hi = w[1].get<double>();
    } else if (cfg.builtin_name.empty()) {
        throw validation_error("eigenproblem file needs a 'window'");
    }
    if (j.contains("target_nodes"))
        cfg.problem.target_nodes = j["target_nodes"].get<int>();
    return cfg;
}

std::string format_g17(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_solution_csv(std::ostream& os, const Grid& grid, const SolutionSamples& solution)
{
    const bool with_prime = !solution.y_prime.empty();
    os << (with_prime ? "index,x,y,y_prime\n" : "index,x,y\n");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        os << i << ',' << format_g17(grid.node(i)) << ',' << format_g17(solution.y[i]);
        if (with_prime)
            os << ',' << format_g17(solution.y_prime[i]);
        os << '\n';
    }
}

SolutionCsv read_solution_csv(std::istream& is)
{
    SolutionCsv csv;
    std::string line;
    if (!std::getline(is, line))
        throw validation_error("empty solution CSV");
    const bool with_prime = line == "index,x,y,y_prime";
    if (!with_prime && line != "index,x,y")
        throw validation_error("unrecognized solution CSV header: " + line);
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string cell;
        auto next = [&]() {
            if (!std::getline(row, cell, ','))
                throw validation_error("short CSV row: " + line);
            return cell;
        };
        csv.index.push_back(std::stoul(next()));
        csv.x.push_back(std::stod(next()));
        csv.y.push_back(std::stod(next()));
        if (with_prime)
            csv.y_prime.push_back(std::stod(next()));
    }
    return csv;
}

} // namespace glnm
