// Copyright 2026 The ddlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.h"
#include "ddlab/csv.h"
#include "ddlab/io.h"
#include "qasm_validator.h"

namespace {

namespace fs = std::filesystem;

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "ddlab");
    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = ddlab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string src(const std::string &rel) {
    return std::string(DDLAB_SOURCE_DIR) + "/" + rel;
}

fs::path scratch(const std::string &name) {
    auto p = fs::temp_directory_path() / ("ddlab_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

const char *kSmallConfig = R"({"schema_version":1,"kind":"PULSE_NUMBER_SWEEP","sequences":["FREE","XY4"],
  "n_values":[0,8,16,24,32,40,48,56],"timing_profile":"ibmqx5","noise_preset":"ibmqx5","qubits":[0],
  "shots":512,"seed":3})";

TEST(Cli, UsageErrors) {
    auto r = run({"frobnicate"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("unknown subcommand"), std::string::npos);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"simulate"}).code, 2);
    EXPECT_EQ(run({"fit", "--curve", "/nonexistent.csv"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, SchemaErrorReportsPointer) {
    auto dir = scratch("schema");
    ddlab::write_text_file(dir / "bad.json", R"({"schema_version":1,"kind":"TYPE2_ENSEMBLE","sequences":["FREE","XY4"],
        "n_values":[0,4],"shots":-5})");
    auto r = run({"simulate", "--config", (dir / "bad.json").string(), "--out", (dir / "o").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("/shots"), std::string::npos) << r.err;
    fs::remove_all(dir);
}

TEST(Cli, VerifyDdDecouples) {
    auto r = run({"verify-dd", "--sequence", "XY4", "--trials", "50", "--seed", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_LT(j["max_norm"].get<double>(), 1e-12);
    EXPECT_TRUE(j["decoupled"].get<bool>());

    r = run({"verify-dd", "--sequence", "FREE", "--trials", "5"});
    ASSERT_EQ(r.code, 0);
    EXPECT_FALSE(nlohmann::json::parse(r.out)["decoupled"].get<bool>());
    EXPECT_EQ(run({"verify-dd", "--coupling", "w"}).code, 1);
}

TEST(Cli, FitFixtureCurve) {
    auto r = run({"fit", "--curve", src("fixtures/curves/ibmqx5_free.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto fit = ddlab::fit_result_from_json(r.out);
    EXPECT_NEAR(fit.lambda, 28.9, 2.9);
}

TEST(Cli, ExportQasmValidates) {
    auto r = run({"export-qasm", "--sequence", "GA8A", "--theta", "1.2", "--phi", "0.4"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto p = qasm_check::parse(r.out);
    EXPECT_TRUE(p.ok) << p.error;
    EXPECT_EQ(p.ops.size(), 8u + 3u);

    r = run({"export-qasm", "--sequence", "XY4", "--bell", "PsiPlus", "--n", "8"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(qasm_check::parse(r.out).ok);
}

TEST(Cli, SimulateIsReproducibleAndReportable) {
    auto dir = scratch("simulate");
    ddlab::write_text_file(dir / "small.json", kSmallConfig);
    for (const char *o : {"a", "b"}) {
        auto r = run({"simulate", "--config", (dir / "small.json").string(), "--out", (dir / o).string(), "--quiet"});
        ASSERT_EQ(r.code, 0) << r.err;
    }
    for (const char *f : {"records.csv", "manifest.json"}) {
        EXPECT_EQ(ddlab::read_text_file(dir / "a" / f), ddlab::read_text_file(dir / "b" / f)) << f;
    }

    auto rep = run({"report", "--results", (dir / "a").string(), "--resamples", "200"});
    ASSERT_EQ(rep.code, 0) << rep.err;
    EXPECT_EQ(ddlab::parse_csv(rep.out).size(), 1u + 2u * 8u);

    auto boot = run({"bootstrap", "--results", (dir / "a").string(), "--n", "16", "--resamples", "300"});
    ASSERT_EQ(boot.code, 0) << boot.err;
    EXPECT_EQ(nlohmann::json::parse(boot.out)["samples"], 36);

    auto fit = run({"fit", "--results", (dir / "a").string(), "--sequence", "XY4", "--resamples", "200",
                    "--out", (dir / "xy4.json").string()});
    ASSERT_EQ(fit.code, 0) << fit.err;
    EXPECT_TRUE(fs::exists(dir / "xy4.json"));

    auto other = run({"simulate", "--config", (dir / "small.json").string(), "--seed", "4", "--out",
                      (dir / "c").string(), "--quiet"});
    ASSERT_EQ(other.code, 0);
    EXPECT_NE(ddlab::read_text_file(dir / "a" / "records.csv"), ddlab::read_text_file(dir / "c" / "records.csv"));
    fs::remove_all(dir);
}

TEST(Cli, BootstrapFromCsv) {
    auto dir = scratch("boot");
    ddlab::write_text_file(dir / "s.csv", "value\n1\n1\n1\n1\n");
    auto r = run({"bootstrap", "--input", (dir / "s.csv").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["mean"], 1.0);
    EXPECT_EQ(j["ci_halfwidth"], 0.0);
    fs::remove_all(dir);
}

}  // namespace
