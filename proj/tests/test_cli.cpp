#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "glnm/json_io.hpp"

namespace fs = std::filesystem;

namespace {

fs::path work_dir()
{
    const fs::path dir = fs::temp_directory_path() / "glnm_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(GLNM_CLI_PATH) + " " + args;
    return std::system(cmd.c_str());
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& content)
{
    std::ofstream out(p, std::ios::binary);
    out << content;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("coeffs prints the reduced Numerov weight")
    {
        const fs::path dir = work_dir();
        spit(dir / "lf.json",
             R"({"h":0.1,"g_minus":0,"g_zero":0,"g_plus":0,"f_minus":1,"f_zero":1,"f_plus":1})");
        const fs::path out = dir / "coeffs.json";
        REQUIRE(run_cli("coeffs " + (dir / "lf.json").string() + " -o " + out.string()) == 0);
        const nlohmann::json j = nlohmann::json::parse(slurp(out));
        CHECK(j["T0"].get<double>() == 1.9916666666666667);
        CHECK(slurp(out).find("1.9916666666666667") != std::string::npos);
        CHECK(j["a"].get<double>() == 1.0);
    }

    TEST_CASE("eigensolve solves the hydrogen builtin")
    {
        const fs::path dir = work_dir();
        spit(dir / "hyd.json", R"({"builtin":"hydrogen_R","target_nodes":0})");
        const fs::path out = dir / "hyd_result.json";
        REQUIRE(run_cli("eigensolve " + (dir / "hyd.json").string() + " -o " + out.string()) == 0);
        const nlohmann::json j = nlohmann::json::parse(slurp(out));
        CHECK(std::abs(j["e"].get<double>() + 0.5) < 1e-6);
        CHECK(j["nodes"].get<int>() == 0);
        CHECK(j["match_residual"].get<double>() < 1e-10);
    }

    TEST_CASE("default convergence study shows fourth order")
    {
        const fs::path dir = work_dir();
        const fs::path out = dir / "conv.csv";
        REQUIRE(run_cli("convergence manufactured_exp -o " + out.string()) == 0);
        std::ifstream in(out);
        std::string line;
        std::getline(in, line);
        CHECK(line == "h,max_error,observed_order");
        std::vector<double> orders;
        while (std::getline(in, line)) {
            const std::size_t second = line.find(',', line.find(',') + 1);
            const std::string field = line.substr(second + 1);
            if (!field.empty())
                orders.push_back(std::stod(field));
        }
        REQUIRE(orders.size() == 3);
        for (const double order : orders) {
            CHECK(order >= 3.7);
            CHECK(order <= 4.3);
        }
    }

    TEST_CASE("propagate output feeds the derivative command")
    {
        const fs::path dir = work_dir();
        spit(dir / "mexp.json", R"({"builtin":"manufactured_exp"})");
        const fs::path csv = dir / "mexp.csv";
        const fs::path withp = dir / "mexp_d.csv";
        REQUIRE(run_cli("propagate " + (dir / "mexp.json").string() + " -o " + csv.string()) == 0);
        REQUIRE(run_cli("derivative " + (dir / "mexp.json").string() + " " + csv.string() + " -o " +
                        withp.string()) == 0);

        std::ifstream in(withp);
        const glnm::SolutionCsv parsed = glnm::read_solution_csv(in);
        REQUIRE(parsed.y.size() == 201);
        REQUIRE(parsed.y_prime.size() == 201);
        CHECK(std::abs(parsed.y_prime.back() - std::exp(2.0)) < 1e-8);
    }

    TEST_CASE("validation and solver failures use distinct exit codes")
    {
        const fs::path dir = work_dir();
        spit(dir / "bad.json", R"({"builtin":"not_a_problem"})");
        spit(dir / "nowin.json",
             R"({"builtin":"hydrogen_R","target_nodes":0,"window":[-0.45,-0.4]})");
        const int validation = run_cli("eigensolve " + (dir / "bad.json").string() +
                                       " -o /dev/null 2> /dev/null");
        const int solver = run_cli("eigensolve " + (dir / "nowin.json").string() +
                                   " -o /dev/null 2> /dev/null");
        CHECK(WEXITSTATUS(validation) == 1);
        CHECK(WEXITSTATUS(solver) == 2);
    }
}
