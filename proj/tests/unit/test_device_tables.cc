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

#include <cmath>
#include <fstream>
#include <sstream>

#include "ddlab/device_tables.h"
#include "ddlab/error.h"

namespace {

using namespace ddlab;

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST(DeviceTables, Ibmqx5FirstRow) {
    const auto &t = device_table("ibmqx5");
    ASSERT_EQ(t.qubits.size(), 16u);
    const auto &q0 = t.qubit(0);
    EXPECT_DOUBLE_EQ(q0.t1_us, 47.0);
    EXPECT_DOUBLE_EQ(q0.t2_us, 29.4);
    EXPECT_NEAR(q0.gate_error, 1.95e-3, 1e-15);
    EXPECT_NEAR(q0.readout_error, 4.78e-2, 1e-15);
    ASSERT_TRUE(t.readout_fidelity[0].has_value());
    EXPECT_DOUBLE_EQ(*t.readout_fidelity[0], 0.9522);
}

TEST(DeviceTables, Ibmqx5Mean) {
    const auto &t = device_table("ibmqx5");
    ASSERT_TRUE(t.t1_us.reported_mean.has_value());
    EXPECT_DOUBLE_EQ(*t.t1_us.reported_mean, 44.3);
    double s = 0;
    for (auto &q : t.qubits) s += q.t1_us;
    EXPECT_NEAR(t.t1_us.mean, s / 16, 1e-12);
    EXPECT_NEAR(t.t1_us.mean, 44.3, 0.05);
    EXPECT_DOUBLE_EQ(t.mean_params().t2_us, 70.0);
    EXPECT_EQ(t.mean_params().qubit_index, -1);
}

TEST(DeviceTables, EmbeddedCopiesMatchFixtureFiles) {
    for (const auto &name : device_table_names()) {
        std::string file = slurp(std::string(DDLAB_SOURCE_DIR) + "/fixtures/devices/" + name + ".csv");
        ASSERT_FALSE(file.empty()) << name;
        auto a = load_device_table(file);
        const auto &b = device_table(name);
        EXPECT_EQ(a.qubits, b.qubits) << name;
    }
}

TEST(DeviceTables, DiagnosticsAreStrings) {
    // The tables carry some Mean/SD rows that disagree with the data; they are reported, not fatal.
    for (const auto &name : device_table_names()) {
        for (const auto &d : device_table(name).diagnostics) EXPECT_FALSE(d.empty());
    }
}

TEST(DeviceTables, StructuredErrors) {
    EXPECT_THROW(load_device_table(""), ParseError);
    EXPECT_THROW(load_device_table("Qubit,T1 [us]\n0,1\n"), ParseError);
    const char *hdr = "Qubit,T1 [us],T2 [us],Gate error [1e-3],Readout Error [1e-2]\n";
    EXPECT_THROW(load_device_table(std::string(hdr)), ParseError);
    EXPECT_THROW(load_device_table(std::string(hdr) + "0,-1,1,1,1\n"), InvalidInput);
    EXPECT_THROW(load_device_table(std::string(hdr) + "0,10,21,1,1\n"), InvalidInput);
    EXPECT_THROW(load_device_table(std::string(hdr) + "0,10,x,1,1\n"), ParseError);
    EXPECT_THROW(load_device_table(std::string(hdr) + "0,10,5,1\n"), ParseError);
    EXPECT_THROW(load_device_table(std::string(hdr) + "0,10,5,1,1\n0,10,5,1,1\n"), ParseError);
    EXPECT_THROW(device_table("nope"), InvalidInput);
}

TEST(DeviceTables, FidelityCrossCheck) {
    std::string csv =
        "Qubit,T1 [us],T2 [us],Gate error [1e-3],Readout Error [1e-2],Gate Fidelity,Readout Fidelity\n"
        "0,10,5,1.0,5.0,0.999,0.90\n";
    auto t = load_device_table(csv);
    ASSERT_EQ(t.diagnostics.size(), 1u);
    EXPECT_NE(t.diagnostics[0].find("readout fidelity"), std::string::npos);
}

}  // namespace
