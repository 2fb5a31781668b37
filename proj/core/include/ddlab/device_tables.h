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

#ifndef DDLAB_DEVICE_TABLES_H
#define DDLAB_DEVICE_TABLES_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddlab/noise.h"

namespace ddlab {

struct ColumnSummary {
    double mean = 0;
    double sd = 0;  // sample standard deviation
    std::optional<double> reported_mean;
    std::optional<double> reported_sd;
};

/// A parsed calibration table such as
///
///   Qubit,T1 [us],T2 [us],Gate error [1e-3],Readout Error [1e-2],Gate Fidelity,Readout Fidelity
///   0,47.0,29.4,1.95,4.78,0.9980,0.9522
///   Mean,...
///   SD,...
///
/// A "[1e-k]" suffix scales the column. "T2*" is accepted for T2. The
/// fidelity columns are optional.
struct DeviceTable {
    std::vector<QubitNoiseParams> qubits;
    std::vector<std::optional<double>> gate_fidelity;
    std::vector<std::optional<double>> readout_fidelity;

    ColumnSummary t1_us;
    ColumnSummary t2_us;
    ColumnSummary gate_error;
    ColumnSummary readout_error;

    /// Non-fatal findings: stored Mean/SD rows disagreeing with the data
    /// beyond rounding, fidelity columns disagreeing with 1 − error.
    std::vector<std::string> diagnostics;

    /// Mean parameters, preferring the stored Mean row; qubit_index = −1.
    QubitNoiseParams mean_params() const;
    const QubitNoiseParams &qubit(int index) const;
};

/// Throws ParseError on malformed text (including an empty table) and
/// InvalidInput on negative values or T2 > 2·T1.
DeviceTable load_device_table(std::string_view csv_text);

/// Built-in copies of the shipped tables: "ibmqx5", "acorn", "ibmqx4".
std::string_view embedded_device_csv(std::string_view name);
const DeviceTable &device_table(std::string_view name);
std::vector<std::string> device_table_names();

}  // namespace ddlab

#endif
