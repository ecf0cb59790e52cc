#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pairspace/io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = PAIRSPACE_CLI_PATH;
const std::string kData = PAIRSPACE_DATA_DIR;

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "pairspace_cli_stdout.txt";
    const std::string cmd = kCli + " " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::ostringstream buf;
    buf << in.rdbuf();
    result.stdout_text = buf.str();
    return result;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST(Cli, ClassifyLagrangeTriangle) {
    const RunResult r = run_cli("classify --input " + kData + "/lagrange_triangle.json");
    ASSERT_EQ(r.exit_code, 0);
    const nlohmann::json j = nlohmann::json::parse(r.stdout_text);
    EXPECT_EQ(j["classification"], "CENTRAL");
    EXPECT_NEAR(j["lambda"].get<double>(), 1.015, 1e-10);
}

TEST(Cli, ClassifyEulerLineIsCollinearCentral) {
    const RunResult r = run_cli("classify --input " + kData + "/euler_line.json");
    ASSERT_EQ(r.exit_code, 0);
    const nlohmann::json j = nlohmann::json::parse(r.stdout_text);
    EXPECT_EQ(j["classification"], "COLLINEAR_CENTRAL");
}

TEST(Cli, SolveCollinearEqualMasses) {
    const RunResult r = run_cli("solve-collinear --masses 1,1,1");
    ASSERT_EQ(r.exit_code, 0);
    const nlohmann::json j = nlohmann::json::parse(r.stdout_text);
    EXPECT_NEAR(j["alpha"].get<double>(), 1.0, 1e-12);
    EXPECT_TRUE(j["alpha_within_bound"].get<bool>());
    EXPECT_TRUE(j["length_within_bound"].get<bool>());
}

TEST(Cli, SolveCollinearWithOrderingAndEfunction) {
    const fs::path csv = fs::temp_directory_path() / "pairspace_efn.csv";
    const RunResult r =
        run_cli("solve-collinear --masses 3,1,2 --ordering 2,3,1 --efunction " + csv.string());
    ASSERT_EQ(r.exit_code, 0);
    const nlohmann::json j = nlohmann::json::parse(r.stdout_text);
    EXPECT_EQ(j["config"]["ordering"], nlohmann::json::array({2, 3, 1}));
    const std::string ef = slurp(csv);
    EXPECT_EQ(ef.rfind("x,E_collapsed,E3", 0), 0u);
    EXPECT_GT(std::count(ef.begin(), ef.end(), '\n'), 100);
}

TEST(Cli, AllOrderingsEnumeration) {
    const RunResult r = run_cli("solve-collinear --masses 1,1,1 --all-orderings");
    ASSERT_EQ(r.exit_code, 0);
    const nlohmann::json j = nlohmann::json::parse(r.stdout_text);
    EXPECT_EQ(j["count"], 3); // 3!/2 orderings
    for (const auto& sol : j["solutions"])
        EXPECT_NEAR(sol["alpha"].get<double>(), 1.0, 1e-12);

    // hard cap at 7 bodies
    EXPECT_EQ(run_cli("solve-collinear --masses 1,1,1,1,1,1,1,1 --all-orderings").exit_code, 2);
}

TEST(Cli, BoundsReportsQuartics) {
    const RunResult r = run_cli("bounds --masses 10,1,1");
    ASSERT_EQ(r.exit_code, 0);
    const nlohmann::json j = nlohmann::json::parse(r.stdout_text);
    EXPECT_EQ(j["three_body_bracket"]["case"], 1);
    const double sigma = j["quartic_roots"][0]["sigma"].get<double>();
    const double tau = j["quartic_roots"][0]["tau"].get<double>();
    EXPECT_NEAR(sigma * tau, 1.0, 1e-12);
}

TEST(Cli, DziobekSquareAdmissible) {
    const RunResult r = run_cli("dziobek --input " + kData + "/square.json");
    ASSERT_EQ(r.exit_code, 0);
    const nlohmann::json j = nlohmann::json::parse(r.stdout_text);
    EXPECT_TRUE(j["admissible"].get<bool>());
    for (const auto& p : j["dziobek_products"])
        EXPECT_LT(std::abs(p.get<double>()), 1e-10);
}

TEST(Cli, SimulateWritesTrajectoryAndReport) {
    const fs::path csv = fs::temp_directory_path() / "pairspace_traj.csv";
    const fs::path rep = fs::temp_directory_path() / "pairspace_cons.json";
    const RunResult r = run_cli("simulate --input " + kData +
                                "/euler_line.json --steps 500 --output " + csv.string() +
                                " --report " + rep.string());
    ASSERT_EQ(r.exit_code, 0);
    const std::string traj = slurp(csv);
    EXPECT_EQ(traj.rfind("t,x1,y1,z1,vx1,vy1,vz1,", 0), 0u);
    const nlohmann::json j = nlohmann::json::parse(slurp(rep));
    EXPECT_FALSE(j["collision"].get<bool>());
    EXPECT_LT(j["energy_drift"].get<double>(), 1e-8);
    EXPECT_EQ(j["pair_L_drift"].size(), 3u);
}

TEST(Cli, SweepProducesCsvRows) {
    const RunResult r = run_cli("sweep --bodies 4 --count 5 --seed 7");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.stdout_text.rfind("index,masses,alpha", 0), 0u);
    EXPECT_EQ(std::count(r.stdout_text.begin(), r.stdout_text.end(), '\n'), 6);
    // every row converged
    EXPECT_EQ(r.stdout_text.find(",0\n"), std::string::npos);
}

TEST(Cli, DeterministicReruns) {
    const fs::path out = fs::temp_directory_path() / "pairspace_det.json";
    const std::string cmd =
        "dziobek --input " + kData + "/tetrahedron.json --seed 42 --output " + out.string();
    ASSERT_EQ(run_cli(cmd).exit_code, 0);
    const std::string first = slurp(out);
    ASSERT_EQ(run_cli(cmd).exit_code, 0);
    EXPECT_EQ(first, slurp(out));

    const RunResult s1 = run_cli("sweep --bodies 5 --count 10 --seed 9");
    const RunResult s2 = run_cli("sweep --bodies 5 --count 10 --seed 9");
    EXPECT_EQ(s1.stdout_text, s2.stdout_text);
}

TEST(InputParsing, ValidatesFields) {
    using pairspace::parse_input;
    EXPECT_THROW(parse_input("[1,2]"), pairspace::InputError);
    EXPECT_THROW(parse_input("{}"), pairspace::InputError);
    EXPECT_THROW(parse_input("{\"masses\": [1]}"), pairspace::InputError);
    EXPECT_THROW(parse_input("{\"masses\": [1, -1]}"), pairspace::InputError);
    EXPECT_THROW(parse_input("{\"G\": 0, \"masses\": [1, 1]}"), pairspace::InputError);
    EXPECT_THROW(parse_input("{\"masses\": [1, 1], \"positions\": [[0,0,0]]}"),
                 pairspace::InputError);
    EXPECT_THROW(parse_input("{\"masses\": [1, 1], \"velocities\": [[0,0,0],[0,0,0]]}"),
                 pairspace::InputError);

    const pairspace::InputFile in = parse_input(
        "{\"G\": 2.0, \"masses\": [1, 1], \"positions\": [[0,0,0],[1,0,0]]}");
    EXPECT_EQ(in.state().velocities.size(), 2u); // velocities default to zero
    EXPECT_DOUBLE_EQ(in.state().G, 2.0);
}

TEST(InputParsing, RoundTripsThroughStateJson) {
    using namespace pairspace;
    const MassVector mv({1.0, 2.5});
    const SystemState s({{0.1, -0.2, 0.3}, {-0.4, 0.5, -0.6}},
                        {{1.0 / 3.0, 0, 0}, {0, std::sqrt(2.0), 0}}, 1.75);
    const InputFile in = parse_input(state_json(mv, s).dump());
    const SystemState back = in.state();
    EXPECT_EQ(back.G, s.G);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(back.positions[i].x, s.positions[i].x);
        EXPECT_EQ(back.velocities[i].y, s.velocities[i].y);
    }
}

TEST(Cli, MalformedJsonExitsTwo) {
    const fs::path bad = fs::temp_directory_path() / "pairspace_bad.json";
    std::ofstream(bad) << "{\"masses\": [1, 2";
    EXPECT_EQ(run_cli("classify --input " + bad.string()).exit_code, 2);
}

TEST(Cli, MissingFieldExitsTwo) {
    const fs::path bad = fs::temp_directory_path() / "pairspace_nofield.json";
    std::ofstream(bad) << "{\"masses\": [1, 2, 3]}";
    // classify needs positions
    EXPECT_EQ(run_cli("classify --input " + bad.string()).exit_code, 2);
}

TEST(Cli, BadOrderingExitsTwo) {
    EXPECT_EQ(run_cli("solve-collinear --masses 1,2,3 --ordering 1,2").exit_code, 2);
    EXPECT_EQ(run_cli("solve-collinear --masses 1,2,3 --ordering 1,2,2").exit_code, 2);
}

TEST(Cli, UnknownFlagExitsTwo) {
    EXPECT_EQ(run_cli("classify --nonsense").exit_code, 2);
}
