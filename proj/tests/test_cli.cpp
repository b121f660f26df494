#include "vpol/cli.hpp"
#include "vpol/kallen_sabry.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace vpol;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "vpol");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::stringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ','))
            fields.push_back(f);
        rows.push_back(fields);
    }
    return rows;
}

double to_double(const std::string& s)
{
    double v = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("vpol_test_" + name);
}

}  // namespace

TEST(Cli, EvalIks)
{
    const Result r = run({"eval", "iks", "1.0"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "value", "err_est", "method"}));
    EXPECT_EQ(rows[1][0], "1");
    EXPECT_LE(rel(to_double(rows[1][1]), -0.4249491222), 1e-9);
    EXPECT_GT(to_double(rows[1][2]), 0.0);
    EXPECT_EQ(rows[1][3], "series");

    const Result r2 = run({"eval", "iks", "0.2"});
    ASSERT_EQ(r2.code, cli::kOk);
    EXPECT_LE(rel(to_double(parse_csv(r2.out)[1][1]), -2.2217521316), 1e-9);
}

TEST(Cli, EvalVksComposition)
{
    const Result r = run({"eval", "vks", "0.5", "--charge-z", "1"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto rows = parse_csv(r.out);
    EXPECT_EQ(rows[0][0], "r");
    const double a = PhysicalParams{}.alpha;
    const double want = a * a * a / (std::numbers::pi * std::numbers::pi * 0.5) * -0.4249491222;
    EXPECT_LE(rel(to_double(rows[1][1]), want), 1e-9);
}

TEST(Cli, EvalFmScalesAbscissa)
{
    const Result fm = run({"eval", "vueh", "--fm", "386.159"});
    const Result bare = run({"eval", "vueh", "1"});
    ASSERT_EQ(fm.code, cli::kOk) << fm.err;
    EXPECT_EQ(parse_csv(fm.out)[1][0], "386.159");
    EXPECT_EQ(parse_csv(fm.out)[1][1], parse_csv(bare.out)[1][1]);
    EXPECT_EQ(run({"eval", "iks", "--fm", "1"}).code, cli::kDomainOrParse);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({"eval", "iks", "-1"}).code, cli::kDomainOrParse);
    EXPECT_EQ(run({"eval", "iks", "0"}).code, cli::kDomainOrParse);
    EXPECT_EQ(run({"eval", "iks", "abc"}).code, cli::kDomainOrParse);
    EXPECT_EQ(run({"eval", "foo", "1"}).code, cli::kDomainOrParse);
    EXPECT_EQ(run({"--format", "xml", "eval", "iks", "1"}).code, cli::kDomainOrParse);
    EXPECT_EQ(run({}).code, cli::kDomainOrParse);
    EXPECT_EQ(run({"--help"}).code, cli::kOk);

    const Result numeric = run({"--max-terms", "3", "eval", "iks", "2"});
    EXPECT_EQ(numeric.code, cli::kNumeric);
    EXPECT_TRUE(numeric.out.empty());
    EXPECT_NE(numeric.err.find("vpol: "), std::string::npos);
}

TEST(Cli, TableGridMatchesReference)
{
    const Result r = run({"table", "iks", "0.1", "1.0", "10", "csv"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 11u);
    const double ref[10] = {-3.4955773951, -2.2217521316, -1.6249537724, -1.2624544511, -1.0145210112,
                            -0.8330321561, -0.6942731072, -0.5849590901, -0.4969564898, -0.4249491222};
    for (int i = 0; i < 10; ++i) {
        const double x = to_double(rows[i + 1][0]);
        EXPECT_NEAR(x, 0.1 * (i + 1), 1e-15);
        EXPECT_EQ(rows[i + 1][0].size() <= 3, true) << rows[i + 1][0];
        EXPECT_LE(rel(to_double(rows[i + 1][1]), ref[i]), 1e-8) << x;
        if (i > 0) {
            EXPECT_GT(x, to_double(rows[i][0]));
        }
    }
}

TEST(Cli, TableExplicitList)
{
    const Result r = run({"table", "iks", "--list", "1,2,3"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_LE(rel(to_double(rows[1][1]), -0.4249491222), 1e-9);
    EXPECT_LE(rel(to_double(rows[2][1]), -0.1070008481), 1e-8);
    EXPECT_LE(rel(to_double(rows[3][1]), -0.0311837916), 1e-8);
}

TEST(Cli, TableJsonSingleRow)
{
    const Result r = run({"table", "vueh", "0.01", "0.01", "1", "json"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_TRUE(j.is_array());
    ASSERT_EQ(j.size(), 1u);
    EXPECT_EQ(j[0]["r"].get<double>(), 0.01);
    EXPECT_LT(j[0]["value"].get<double>(), 0.0);
    EXPECT_TRUE(j[0].contains("err_est"));
    EXPECT_EQ(j[0]["method"], "closed");
}

TEST(Cli, CsvAndJsonRoundTripBitForBit)
{
    const Result csv = run({"table", "iks", "0.05", "6", "7"});
    const Result json = run({"--format", "json", "table", "iks", "0.05", "6", "7"});
    ASSERT_EQ(csv.code, cli::kOk);
    ASSERT_EQ(json.code, cli::kOk);
    const auto rows = parse_csv(csv.out);
    const auto j = nlohmann::json::parse(json.out);
    ASSERT_EQ(rows.size(), j.size() + 1);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const double x = to_double(rows[i + 1][0]);
        const double v = to_double(rows[i + 1][1]);
        EXPECT_EQ(x, j[i]["x"].get<double>());
        EXPECT_EQ(v, j[i]["value"].get<double>());
        EXPECT_EQ(to_double(rows[i + 1][2]), j[i]["err_est"].get<double>());
        EXPECT_EQ(v, ks::iks(x).value);
    }
}

TEST(Cli, FailingRowAbortsWithoutPartialOutput)
{
    const Result r = run({"table", "iks", "--list", "1,-2,3"});
    EXPECT_EQ(r.code, cli::kDomainOrParse);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("error at -2"), std::string::npos) << r.err;

    const auto path = temp_file("partial.csv");
    std::filesystem::remove(path);
    EXPECT_EQ(run({"--output", path.string(), "eval", "iks", "-3"}).code, cli::kDomainOrParse);
    EXPECT_FALSE(std::filesystem::exists(path));
}

TEST(Cli, SkipErrorsDropsFailingRows)
{
    const Result r = run({"--skip-errors", "table", "iks", "--list", "0.00001,-2,0.00002"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1][0], "1e-05");
    EXPECT_EQ(rows[2][0], "2e-05");
    EXPECT_NE(r.err.find("skipped at -2"), std::string::npos);
}

TEST(Cli, OutputFile)
{
    const auto path = temp_file("out.json");
    const Result r = run({"--output", path.string(), "--format", "json", "eval", "iueh", "1"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(path);
    const auto j = nlohmann::json::parse(f);
    EXPECT_NEAR(j[0]["value"].get<double>(), 0.177933578889234295, 1e-14);
    std::filesystem::remove(path);
}

TEST(Cli, JobsGiveIdenticalOutput)
{
    const Result one = run({"table", "iks", "0.5", "8", "16"});
    const Result four = run({"--jobs", "4", "table", "iks", "0.5", "8", "16"});
    ASSERT_EQ(one.code, cli::kOk);
    EXPECT_EQ(one.out, four.out);
}

TEST(Cli, MethodOverride)
{
    const Result r = run({"--method", "defining", "eval", "iks", "1"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_EQ(parse_csv(r.out)[1][3], "quadrature");
    EXPECT_LE(rel(to_double(parse_csv(r.out)[1][1]), -0.4249491222), 1e-9);
    EXPECT_EQ(run({"--method", "closed", "eval", "iks", "1"}).code, cli::kDomainOrParse);
    EXPECT_EQ(parse_csv(run({"--method", "smallx", "eval", "iueh", "0.1"}).out)[1][3], "smallx");
}

TEST(Cli, VerifyCorruptedFixtureNamesRow)
{
    const auto path = temp_file("fixture.csv");
    {
        std::ofstream f(path);
        f << "x,iks\n0.5,-1.0145210112\n1.0,-0.4349491222\n2.0,-0.1070008481\n";
    }
    const Result r = run({"--fixture", path.string(), "verify", "paper-table"});
    EXPECT_EQ(r.code, cli::kVerifyFailed);
    EXPECT_NE(r.out.find("FAIL x=1.0"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("failing rows: 1.0 (line 3)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("2/3 rows pass"), std::string::npos) << r.out;
    std::filesystem::remove(path);
}

TEST(Cli, VerifyCleanFixturePasses)
{
    const auto path = temp_file("fixture_ok.csv");
    {
        std::ofstream f(path);
        f << "x,iks\n0.5,-1.0145210112\n1.0,-0.4249491222\n";
    }
    const Result r = run({"--fixture", path.string(), "verify", "paper-table"});
    EXPECT_EQ(r.code, cli::kOk) << r.out;
    std::filesystem::remove(path);
}

TEST(Cli, VerifyMissingFixtureIsParseError)
{
    EXPECT_EQ(run({"--fixture", "/nonexistent/f.csv", "verify", "paper-table"}).code, cli::kDomainOrParse);
}

TEST(Cli, VerifyCrossMethod)
{
    const Result r = run({"--jobs", "4", "verify", "cross-method"});
    EXPECT_EQ(r.code, cli::kOk) << r.out;
    EXPECT_NE(r.out.find("cross-method: all checks pass"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}
