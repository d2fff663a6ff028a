#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "irrvir/parse.hpp"
#include "irrvir/solver.hpp"

using namespace irrvir;
using Json = nlohmann::json;

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int s = cli::run(args, out, err);
    return {s, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("irrvir_cli_" + name)).string();
}

// "key: value" line of a text report.
std::string text_field(const std::string& report, const std::string& key) {
    std::istringstream in(report);
    std::string line;
    while (std::getline(in, line)) {
        auto p = line.find(key + ": ");
        if (p != std::string::npos && line.find_first_not_of(' ') == p) return line.substr(p + key.size() + 2);
    }
    return "";
}

}  // namespace

TEST(Cli, ConstructReportsG1) {
    Result r = run({"construct", "--rank", "2", "--order", "4", "--format", "json"});
    ASSERT_EQ(r.status, 0) << r.err;
    Json j = Json::parse(r.out);
    auto vars = tower_table(RankSpec::parse("2"), 4);
    LaurentPoly expect = parse_poly(vars, "(c1^2/2)*(c0 - c0p)");
    const Json& g1 = j["series"]["g"][0];
    ASSERT_EQ(g1.size(), expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) {
        const auto& t = expect.terms()[i];
        for (std::size_t v = 0; v < vars->size(); ++v) EXPECT_EQ(g1[i]["exponents"][v].get<int>(), t.mono[v]);
        EXPECT_EQ(g1[i]["num"].get<std::string>(), t.coeff.get_num().get_str());
        EXPECT_EQ(g1[i]["den"].get<std::string>(), t.coeff.get_den().get_str());
    }
    EXPECT_EQ(j["meta"]["rank"], "2");
    EXPECT_EQ(j["meta"]["K"], 4);
}

TEST(Cli, VerifyHalfRank) {
    Result r = run({"verify", "--rank", "5/2", "--order", "3"});
    ASSERT_EQ(r.status, 0) << r.out;
    Json j = Json::parse(r.out);
    ASSERT_FALSE(j["residuals"].empty());
    for (const auto& e : j["residuals"]) EXPECT_EQ(e["status"], "zero") << e["relation"];
}

TEST(Cli, FramesHalfDeterminant) {
    Result r = run({"frames", "--rank", "7/2", "--format", "text"});
    ASSERT_EQ(r.status, 0) << r.out;
    auto t = standard_table(4, 7);
    // (-1)^6 * 7 * (-5/2)(-3/2)(-1/2) = -105/8
    EXPECT_EQ(text_field(r.out, "det"), parse_poly(t, "-105/8*Lambda^4*c3^-3").to_string());
    EXPECT_EQ(text_field(r.out, "det_closed_form"), text_field(r.out, "det"));
}

TEST(Cli, RoundTripAndDeterminism) {
    for (std::string rank : {"1", "2", "3/2"}) {
        std::string a = temp_path("a.json"), b = temp_path("b.json");
        ASSERT_EQ(run({"construct", "--rank", rank, "--order", "3", "--output", a}).status, 0);
        ASSERT_EQ(run({"construct", "--rank", rank, "--order", "3", "--output", b}).status, 0);
        std::ifstream fa(a), fb(b);
        std::stringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        EXPECT_EQ(sa.str(), sb.str());
        Result v = run({"verify", "--input", a});
        EXPECT_EQ(v.status, 0) << rank << v.out;

        Json j = Json::parse(sa.str());
        auto& terms = j["series"]["tail"][2]["terms"];
        ASSERT_FALSE(terms.empty());
        auto& first = terms.begin().value()[0];
        first["num"] = std::to_string(std::stoi(first["num"].get<std::string>()) + 1);
        std::ofstream(a) << j.dump();
        EXPECT_EQ(run({"verify", "--input", a}).status, 1) << rank;
        std::filesystem::remove(a);
        std::filesystem::remove(b);
    }
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({"construct", "--rank", "2/3"}).status, 2);
    EXPECT_EQ(run({"construct"}).status, 2);
    EXPECT_EQ(run({"frobnicate"}).status, 2);
    EXPECT_EQ(run({"construct", "--rank", "2", "--format", "yaml"}).status, 2);
    EXPECT_EQ(run({"construct", "--rank", "2", "--central", "1+"}).status, 2);
    EXPECT_EQ(run({"construct", "--rank", "3", "--convention", "section2-display"}).status, 2);
    EXPECT_EQ(run({"verify"}).status, 2);
}

TEST(Cli, SolverErrorIsStructured) {
    Result r = run({"gauge", "--rank", "3", "--order", "4"});
    EXPECT_EQ(r.status, 1);
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["error"]["kind"], "WindowTooSmall");
}

TEST(Cli, GaugeRankTwo) {
    Result r = run({"gauge", "--rank", "2", "--order", "4", "--format", "text"});
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_EQ(text_field(r.out, "g0"), "0");
}

TEST(Cli, GramReportsMismatch) {
    Result r = run({"gram", "--rank", "1", "--order", "2"});
    EXPECT_EQ(r.status, 1);
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["gram"]["determinants"].size(), 6u);
}
