// Copyright 2026 The natspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "natspec/io.hpp"

namespace natspec::cli {
namespace {

namespace fs = std::filesystem;
const fs::path kFixtures = NATSPEC_FIXTURE_DIR;

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("natspec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int call(std::vector<std::string> args, const fs::path& out_dir) {
        args.insert(args.begin(), {"--out", out_dir.string()});
        out_.str("");
        err_.str("");
        return run(args, out_, err_);
    }
    int call(std::vector<std::string> args) { return call(std::move(args), dir_); }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    /// File contents without the timestamp line.
    static std::string without_timestamp(const fs::path& p) {
        std::stringstream in(slurp(p));
        std::string line, out;
        while (std::getline(in, line)) {
            if (line.find("\"timestamp\"") == std::string::npos) out += line + "\n";
        }
        return out;
    }

    fs::path dir_;
    std::ostringstream out_, err_;
};

TEST_F(CliTest, MalformedInputIsAnInputError) {
    EXPECT_EQ(call({"decompose", "--input", (kFixtures / "malformed.json").string()}), kExitInputError);
    EXPECT_EQ(call({"decompose"}), kExitInputError);
    EXPECT_EQ(call({"kronecker", "--eps", "-1"}), kExitInputError);
}

TEST_F(CliTest, DecomposeZeroMeasure) {
    ASSERT_EQ(call({"decompose", "--input", (kFixtures / "zero.json").string(), "--N", "256"}), kExitOk) << err_.str();
    for (const auto* f : {"nu0.json", "nu1.json", "nu2.json", "report.json"}) EXPECT_TRUE(fs::exists(dir_ / f)) << f;
}

TEST_F(CliTest, DecomposeDirac) {
    ASSERT_EQ(call({"decompose", "--input", (kFixtures / "dirac_gamma.json").string(), "--N", "1024", "--grid", "128"}),
              kExitOk)
        << err_.str();
    const auto nu2 = io::read_measure(dir_ / "nu2.json");
    ASSERT_EQ(nu2.disc.size(), 2u);
    for (const auto& [at, w] : nu2.disc.atoms()) EXPECT_EQ(w, Complex(-0.5));
    const auto report = io::Json::parse(slurp(dir_ / "report.json"));
    EXPECT_TRUE(report.at("verification").at("passed").get<bool>());
}

TEST_F(CliTest, KroneckerTrivialAndOracle) {
    ASSERT_EQ(call({"kronecker", "--x", "0", "--y", "0", "--eps", "0.1"}), kExitOk);
    EXPECT_EQ(io::Json::parse(slurp(dir_ / "kronecker.json")).at("solution").at("n"), 0);
    ASSERT_EQ(call({"kronecker", "--eps", "0.1", "--min-abs-n", "1"}), kExitOk);
    EXPECT_EQ(io::Json::parse(slurp(dir_ / "kronecker.json")).at("solution").at("n"), 1364);
    EXPECT_EQ(call({"kronecker", "--eps", "1e-6", "--nmax", "10", "--min-abs-n", "1"}), kExitVerificationFailed);
}

TEST_F(CliTest, SpectralRadiusOfRhoIsTightlyBracketed) {
    ASSERT_EQ(call({"spectral-radius", "--input", (kFixtures / "rho.json").string()}), kExitOk) << err_.str();
    const auto j = io::Json::parse(slurp(dir_ / "spectral_radius.json"));
    const double lo = j.at("bracket").at("lower"), hi = j.at("bracket").at("upper");
    EXPECT_LE(lo, hi);
    EXPECT_LT(hi - lo, 1e-3);
    EXPECT_NE(out_.str().find("bracket ["), std::string::npos);
}

TEST_F(CliTest, DensityScanColumnsShrink) {
    ASSERT_EQ(call({"density-scan", "--max-log2", "12"}), kExitOk);
    std::stringstream csv(slurp(dir_ / "density_scan.csv"));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "N,covering_radius_all,covering_radius_even,covering_radius_odd");
    double prev[3] = {1e9, 1e9, 1e9};
    int rows = 0;
    while (std::getline(csv, line)) {
        std::stringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        for (double& p : prev) {
            std::getline(row, cell, ',');
            const double v = std::stod(cell);
            EXPECT_LE(v, p) << line;
            p = v;
        }
        ++rows;
    }
    EXPECT_EQ(rows, 9);
}

TEST_F(CliTest, VerifyIsDeterministic) {
    const auto a = dir_ / "a", b = dir_ / "b";
    ASSERT_EQ(call({"verify", "--seed", "7", "--cases", "4", "--N", "1024"}, a), kExitOk) << out_.str();
    ASSERT_EQ(call({"verify", "--seed", "7", "--cases", "4", "--N", "1024"}, b), kExitOk);
    EXPECT_EQ(without_timestamp(a / "verify_report.json"), without_timestamp(b / "verify_report.json"));
}

TEST_F(CliTest, WorkerCountDoesNotChangeOutput) {
    const auto a = dir_ / "a", b = dir_ / "b";
    const std::vector<std::string> args = {"decompose", "--input", (kFixtures / "rho.json").string(), "--N", "2048",
                                           "--grid", "128"};
    auto with = [&](const char* w) {
        auto v = args;
        v.insert(v.begin(), {"--workers", w});
        return v;
    };
    ASSERT_EQ(call(with("1"), a), kExitOk) << err_.str();
    ASSERT_EQ(call(with("4"), b), kExitOk) << err_.str();
    for (const auto* f : {"nu0.json", "nu1.json", "nu2.json"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    EXPECT_EQ(without_timestamp(a / "report.json"), without_timestamp(b / "report.json"));
}

TEST_F(CliTest, HelpExitsZero) { EXPECT_EQ(call({"--help"}), kExitOk); }

}  // namespace
}  // namespace natspec::cli
