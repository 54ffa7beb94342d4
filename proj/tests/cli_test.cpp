#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "loewner/cli.hpp"
#include "loewner/io.hpp"

namespace loewner::cli {
namespace {

std::filesystem::path const kData = LOEWNER_DATA_DIR;

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result run_with(RunConfig config)
{
    std::ostringstream out, err;
    int const code = run(config, out, err);
    return {code, out.str(), err.str()};
}

RunConfig config_for(Command c, std::string const& file, std::size_t n = 64)
{
    RunConfig cfg;
    cfg.command = c;
    cfg.input = (kData / file).string();
    cfg.rows = cfg.cols = n;
    return cfg;
}

TEST(Cli, ReduceDisguisedSquare)
{
    auto const r = run_with(config_for(Command::reduce, "reduce_basis.json"));
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto const j = parse_json_text(r.out);
    EXPECT_EQ(j["tau"][0], 0.0);
    EXPECT_EQ(j["tau"][1], 1.0);
    EXPECT_EQ(j["sigma_sq"], 1.0);
}

TEST(Cli, AnalyzeFlatEisenstein)
{
    auto const r = run_with(config_for(Command::analyze,
                                       "flat_eisenstein.json", 256));
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto const j = parse_json_text(r.out);
    EXPECT_EQ(j["report"]["equality_case"]["detected"], true);
    EXPECT_EQ(j["report"]["all_pass"], true);
}

TEST(Cli, AnalyzeOneVariable)
{
    auto const r = run_with(config_for(Command::analyze, "one_var.json", 256));
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto const j = parse_json_text(r.out)["report"]["inequalities"];
    EXPECT_NEAR(j["sigma_defect"]["lhs"].get<double>(), 0.555, 1e-12);
    EXPECT_NEAR(j["sigma_defect"]["rhs"].get<double>(), 0.045, 1e-12);
    EXPECT_NEAR(j["sigma_defect"]["margin"].get<double>(), 0.51, 1e-12);
    EXPECT_NEAR(j["one_var_second"]["margin"].get<double>(), 0.367191, 1e-6);
    EXPECT_NEAR(j["one_var_nosys"]["margin"].get<double>(), 0.500881, 1e-6);
}

TEST(Cli, ByteIdenticalReports)
{
    for (auto const* file : {"four_term.json", "flat_eisenstein.json"})
    {
        auto const a = run_with(config_for(Command::analyze, file));
        auto const b = run_with(config_for(Command::analyze, file));
        EXPECT_EQ(a.out, b.out);
        EXPECT_FALSE(a.out.empty());
    }
}

TEST(Cli, RefineEmitsBothResolutions)
{
    auto cfg = config_for(Command::analyze, "one_var.json", 32);
    cfg.refine = true;
    auto const r = run_with(cfg);
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto const j = parse_json_text(r.out);
    EXPECT_EQ(j["coarse"]["grid"][0], 32);
    EXPECT_EQ(j["fine"]["grid"][0], 64);
    EXPECT_TRUE(j["differences"].contains("margins"));
    EXPECT_TRUE(j["differences"]["margins"].contains("sigma_defect"));

    cfg.format = Format::csv;
    auto const c = run_with(cfg);
    EXPECT_EQ(c.out.substr(0, c.out.find('\n')),
              "inequality,margin_coarse,margin_fine,difference");

    auto fixed = config_for(Command::analyze, "one_var_csv.json", 32);
    fixed.refine = true;
    auto const f = run_with(fixed);
    EXPECT_EQ(f.code, kExitInputError);
    EXPECT_NE(f.err.find("--refine"), std::string::npos);
}

TEST(Cli, SystoleWitness)
{
    auto const r = run_with(config_for(Command::systole, "one_var.json"));
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto const j = parse_json_text(r.out);
    EXPECT_EQ(j["witness_class"]["p"], 1);
    EXPECT_EQ(j["witness_class"]["q"], 0);
    auto const& path = j["witness_path"];
    ASSERT_GE(path.size(), 2u);
    EXPECT_NEAR(path.back()[0].get<double>() - path.front()[0].get<double>(),
                1.0, 1e-12);
    EXPECT_NEAR(j["one_var_exact"].get<double>(), 0.7, 1e-12);
}

TEST(Cli, RevolutionPipeline)
{
    auto const r = run_with(config_for(Command::revolution,
                                       "standard_torus.json", 128));
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto const j = parse_json_text(r.out);
    EXPECT_NEAR(j["chart"]["b"].get<double>(), 3.627599, 1e-6);
    EXPECT_NEAR(j["modulus"]["tau"][1].get<double>(), std::sqrt(3.0), 1e-6);
    EXPECT_EQ(j["report"]["inequalities"]["rectangular"]["pass"], true);
}

TEST(Cli, SweepCsv)
{
    auto cfg = config_for(Command::sweep, "sweep_amp.json", 32);
    cfg.format = Format::csv;
    auto const r = run_with(cfg);
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("value,area,variance,sys_upper,margin_loewner,", 0), 0u);
    int rows = 0;
    while (std::getline(in, line))
        ++rows;
    EXPECT_EQ(rows, 5);
}

TEST(Cli, InputErrorsExitOne)
{
    auto const dir = std::filesystem::temp_directory_path() / "loewner_cli_test";
    std::filesystem::create_directories(dir);
    auto const write = [&](char const* name, char const* text) {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    };
    RunConfig cfg;
    cfg.rows = cfg.cols = 16;

    cfg.input = write("bad.json", "{\"lattice\": ");
    auto r = run_with(cfg);
    EXPECT_EQ(r.code, kExitInputError);
    EXPECT_NE(r.err.find("line"), std::string::npos);

    cfg.input = write("neg.json",
                      R"({"factor": {"family": "trig", "offset": 0.5,
                          "terms": [{"mx": 1, "my": 0, "amp": 0.6}]}})");
    r = run_with(cfg);
    EXPECT_EQ(r.code, kExitInputError);
    EXPECT_NE(r.err.find("nonpositive conformal factor"), std::string::npos);

    cfg.input = write("deg.json", R"({"lattice": {"basis": [[1,0],[2,0]]}})");
    r = run_with(cfg);
    EXPECT_EQ(r.code, kExitInputError);
    EXPECT_NE(r.err.find("degenerate lattice"), std::string::npos);

    cfg.input = (dir / "absent.json").string();
    EXPECT_EQ(run_with(cfg).code, kExitInputError);

    cfg.input = "";
    EXPECT_EQ(run_with(cfg).code, kExitInputError);

    cfg.input = (kData / "one_var.json").string();
    cfg.rows = 3;
    EXPECT_EQ(run_with(cfg).code, kExitInputError);

    cfg.rows = 16;
    cfg.command = Command::systole;
    cfg.refine = true;
    r = run_with(cfg);
    EXPECT_EQ(r.code, kExitInputError);
    EXPECT_NE(r.err.find("--refine"), std::string::npos);
}

TEST(Cli, ParseGridAndCommand)
{
    RunConfig cfg;
    parse_grid("128", cfg);
    EXPECT_EQ(cfg.rows, 128u);
    EXPECT_EQ(cfg.cols, 128u);
    parse_grid("64,32", cfg);
    EXPECT_EQ(cfg.rows, 64u);
    EXPECT_EQ(cfg.cols, 32u);
    EXPECT_THROW(parse_grid("2", cfg), InputError);
    EXPECT_THROW(parse_grid("64,x", cfg), InputError);
    EXPECT_THROW(parse_grid("", cfg), InputError);
    EXPECT_EQ(parse_command("sweep"), Command::sweep);
    EXPECT_THROW(parse_command("plot"), InputError);
}

TEST(Cli, OutputFile)
{
    auto const path = std::filesystem::temp_directory_path() / "loewner_out.json";
    auto cfg = config_for(Command::reduce, "reduce_basis.json");
    cfg.output = path.string();
    auto const r = run_with(cfg);
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(parse_json_text(ss.str())["sigma_sq"], 1.0);
}

TEST(Cli, ExecutableEndToEnd)
{
    auto const out = std::filesystem::temp_directory_path() / "loewner_exe.csv";
    std::string const cmd = std::string(LOEWNER_CLI) + " analyze "
                            + (kData / "one_var.json").string()
                            + " --grid 32 --format csv --out " + out.string();
    EXPECT_EQ(std::system(cmd.c_str()), 0);
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header.rfind("inequality,", 0), 0u);

    std::string const bad = std::string(LOEWNER_CLI) + " analyze "
                            + (kData / "one_var.json").string()
                            + " --grid 2 2>/dev/null";
    int const status = std::system(bad.c_str());
    EXPECT_EQ(WEXITSTATUS(status), 1);
}

}  // namespace
}  // namespace loewner::cli
