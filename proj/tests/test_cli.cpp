#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "cliso");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cliso::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, CoeffsText) {
    const auto r = run({"coeffs", "--series", "abar", "--order", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "4, 52, 477, 3809, 451625/16, 3195333/16\n");
}

TEST(Cli, CoeffsJsonAndCsv) {
    const auto j = run({"coeffs", "--series", "vbar", "--order", "5", "--format", "json"});
    EXPECT_EQ(j.code, 0);
    const auto parsed = nlohmann::json::parse(j.out);
    ASSERT_EQ(parsed.size(), 6u);
    EXPECT_EQ(parsed[4], "1928025/32");
    const auto c = run({"coeffs", "--series", "f", "--order", "3", "--format", "csv"});
    EXPECT_EQ(c.out, "n,coefficient\n0,72\n1,1932\n2,31248\n3,790101/2\n");
}

TEST(Cli, Eval) {
    const auto r = run({"eval", "--z", "0", "--json"});
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["iso"]["value"].get<double>(), 0.7116374974931915, 1e-15);
    EXPECT_TRUE(j["iso"].contains("bound"));
    EXPECT_EQ(j["derivative"]["value"].get<double>(), 0.0);
    EXPECT_FALSE(j.contains("timestamp"));
    const auto text = run({"eval", "--z", "0.2"});
    EXPECT_NE(text.out.find("Iso(z)"), std::string::npos);
}

TEST(Cli, EvalOutsideDomain) {
    const auto r = run({"eval", "--z", "0.5"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, Invert) {
    const auto r = run({"invert", "--rho", "0.9"});
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["flag"], "ok");
    EXPECT_LE(j["residual_bound"].get<double>(), 1e-10);
    EXPECT_EQ(run({"invert", "--rho", "1.5"}).code, 2);
    EXPECT_EQ(run({"invert", "--rho", "0.9", "--max-iter", "3"}).code, 3);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"coeffs", "--series", "nope", "--order", "3"}).code, 2);
    EXPECT_EQ(run({"coeffs", "--series", "abar"}).code, 2);
    EXPECT_EQ(run({"eval"}).code, 2);
    EXPECT_EQ(run({"eval", "--z", "0.1", "invert", "--rho", "0.9"}).code, 2);
    EXPECT_EQ(run({"scan", "--target", "wat"}).code, 2);
    EXPECT_EQ(run({"invert", "--rho", "0.9", "--tol", "-1"}).code, 2);
}

TEST(Cli, VerifyPassesAndReportsDiscrepancies) {
    const auto r = run({"verify", "--order", "12", "--positivity-window", "60"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAILED"), std::string::npos);
    EXPECT_NE(r.out.find("Verified adjoint_form"), std::string::npos);
    EXPECT_NE(r.out.find("31248 is the coefficient of z^2"), std::string::npos);
    EXPECT_NE(r.out.find("displayed adjoint form"), std::string::npos);
}

TEST(Cli, VerifyJson) {
    const auto r = run({"verify", "--order", "8", "--samples", "5", "--json", "--positivity-window", "20"});
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["all_verified"].get<bool>());
    EXPECT_EQ(j["reports"].size(), 11u);
    EXPECT_EQ(j["reports"][3]["samples"].size(), 5u);
    EXPECT_FALSE(j["reports"][3]["certifies_all_parameters"].get<bool>());
    EXPECT_EQ(j["f_coefficients"]["displayed_31248_is_coefficient_of_power"], 2);
}

TEST(Cli, InjectedFaultsFlipExitCode) {
    for (const char* fault : {"lemma1:3", "id_hyp:0", "id_war:8", "remark1_derivative:5", "adjoint_form:2",
                              "contiguous_cont1:4", "contiguous_cont2:c", "euler_transform:c", "odes:abar:5",
                              "odes:vbar:op:2:3", "abar_coefficients:4", "f:1"}) {
        const auto r = run({"verify", "--order", "8", "--positivity-window", "20", "--inject-fault", fault});
        EXPECT_EQ(r.code, 1) << fault;
        EXPECT_NE(r.out.find("FAILED"), std::string::npos) << fault;
    }
}

TEST(Cli, ScanSummaryAndCsv) {
    const std::string path = ::testing::TempDir() + "cliso_scan.csv";
    const auto r = run({"scan", "--target", "mono-w", "--a", "3/2", "--grid", "50", "--csv", path});
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["violations"], 0);
    EXPECT_EQ(j["grid_size"], 50);
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    EXPECT_EQ(header, "z,value,bound,verdict");
    std::remove(path.c_str());

    const auto to_stdout = run({"scan", "--target", "nonconvex-iso", "--grid", "200", "--csv", "-"});
    EXPECT_EQ(to_stdout.code, 0);
    EXPECT_EQ(to_stdout.out.rfind("z,value,bound,verdict", 0), 0u);
    EXPECT_NE(to_stdout.err.find("witness"), std::string::npos);
}

TEST(Cli, Deterministic) {
    const std::vector<std::string> args{"scan", "--target", "convex-iso-sqrt", "--grid", "40"};
    EXPECT_EQ(run(args).out, run(args).out);
    const std::vector<std::string> v{"verify", "--order", "6", "--json", "--positivity-window", "10"};
    EXPECT_EQ(run(v).out, run(v).out);
}

TEST(Cli, TimestampOnlyWhenAsked) {
    const auto r = run({"--timestamp", "invert", "--rho", "0.8"});
    EXPECT_TRUE(nlohmann::json::parse(r.out).contains("timestamp"));
}
