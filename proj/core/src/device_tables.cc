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

#include "ddlab/device_tables.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>

#include "ddlab/csv.h"
#include "ddlab/error.h"

namespace ddlab {

namespace {

constexpr std::string_view k_ibmqx5 = R"csv(Qubit,T1 [us],T2 [us],Gate error [1e-3],Readout Error [1e-2],Gate Fidelity,Readout Fidelity
0,47.0,29.4,1.95,4.78,0.9980,0.9522
1,35.1,54.7,3.82,5.00,0.9962,0.9500
2,35.7,43.3,3.72,4.45,0.9963,0.9554
3,54.3,80.3,2.25,8.95,0.9977,0.9105
4,39.3,44.7,2.13,7.76,0.9979,0.9224
5,43.3,57.2,1.68,5.83,0.9983,0.9417
6,55.2,91.7,2.37,4.10,0.9976,0.9589
7,28.9,27.8,3.17,4.01,0.9968,0.9599
8,59.5,101.6,1.13,5.86,0.9989,0.9413
9,48.6,82.9,1.10,11.37,0.9989,0.8862
10,27.5,40.9,4.41,11.76,0.9956,0.8824
11,57.3,102,1.81,5.03,0.9982,0.9497
12,47.5,55,1.39,13.24,0.9986,0.8676
13,51.8,97.1,1.63,4.25,0.9984,0.9574
14,40.6,72.3,2.11,6.51,0.9979,0.9349
15,37.3,72.8,3.90,10.53,0.9961,0.8946
Mean,44.3,70.0,2.41,7.09,0.9976,0.9291
SD,7.4,19.1,1.06,3.10,0.0011,0.0310
)csv";

constexpr std::string_view k_acorn = R"csv(Qubit,T1 [us],T2* [us],Gate error [1e-3],Readout Error [1e-2],Gate Fidelity,Readout Fidelity
0,15.2,7.2,0.1,4.99,0.9999,0.9501
1,17.6,7.7,0.1,4.86,0.9999,0.9514
2,18.2,10.8,4.3,25.54,0.9957,0.7446
3,31.0,16.8,9.2,11.4,0.9908,0.886
4,23.0,5.2,16.0,15.35,0.984,0.8465
5,22.2,11.1,14.1,15.57,0.9859,0.8443
6,26.8,26.8,25.1,17.83,0.9749,0.8217
7,29.4,13.0,14.1,7.08,0.9859,0.9292
8,24.5,13.8,15.6,4.74,0.9844,0.9526
9,20.8,13.8,42.3,11.3,0.9577,0.887
10,17.1,10.6,15.0,5.18,0.985,0.9482
11,16.9,4.9,27.0,2.7,0.973,0.973
12,8.2,10.9,13.0,3.75,0.987,0.9625
13,18.7,12.7,28.0,3.65,0.972,0.9635
14,13.9,9.4,16.0,4.43,0.984,0.9557
15,20.8,7.3,18.0,19.68,0.982,0.8032
16,16.7,7.5,30.0,5.87,0.97,0.9413
17,24.0,8.4,21.4,4.02,0.9786,0.9598
18,16.9,12.9,33.7,6.95,0.9598,0.9305
19,24.7,9.8,13.7,5.12,0.9863,0.9488
Mean,20.33,11.03,17.83,9.001,0.9822,0.9065
SD,5.50,4.83,10.82,6.49,0.0108,0.0632
)csv";

constexpr std::string_view k_ibmqx4 = R"csv(Qubit,T1 [us],T2 [us],Gate error [1e-3],Readout Error [1e-2],Gate Fidelity,Readout Fidelity
0,50.8,14.7,0.86,4.80,0.9991,0.9520
1,50.0,64.6,1.46,5.30,0.9985,0.9470
2,47.9,45.0,1.29,9.80,0.9987,0.9020
3,37.4,15.1,3.44,5.70,0.9966,0.9430
4,56.0,30.5,0.94,7.00,0.9991,0.9300
Mean,48.4,34.0,1.60,6.52,0.9984,0.9348
SD,6.8,21.2,1.06,2.01,0.0010,0.0201
)csv";

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

// "Gate error [1e-3]" → 1e-3; a bracket holding a unit such as "[us]" → 1.
double column_scale(std::string_view header) {
    auto open = header.find('[');
    auto close = header.find(']');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
        return 1.0;
    }
    auto inner = header.substr(open + 1, close - open - 1);
    if (inner.empty() || !(std::isdigit(static_cast<unsigned char>(inner[0])) || inner[0] == '.')) {
        return 1.0;
    }
    return parse_double_field(inner, "column scale");
}

int decimals_of(std::string_view field) {
    auto dot = field.find('.');
    return dot == std::string_view::npos ? 0 : static_cast<int>(field.size() - dot - 1);
}

// Rounding tolerance for a stored summary value: a little over half of the
// last displayed digit.
double rounding_tol(std::string_view field) {
    return 0.51 * std::pow(10.0, -decimals_of(field)) + 1e-12;
}

enum Col { kQubit, kT1, kT2, kGate, kReadout, kGateFid, kReadoutFid, kNumCols };

ColumnSummary summarize(const std::vector<double> &v) {
    ColumnSummary s;
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    return s;
}

}  // namespace

QubitNoiseParams DeviceTable::mean_params() const {
    QubitNoiseParams p;
    p.qubit_index = -1;
    p.t1_us = t1_us.reported_mean.value_or(t1_us.mean);
    p.t2_us = t2_us.reported_mean.value_or(t2_us.mean);
    p.gate_error = gate_error.reported_mean.value_or(gate_error.mean);
    p.readout_error = readout_error.reported_mean.value_or(readout_error.mean);
    return p;
}

const QubitNoiseParams &DeviceTable::qubit(int index) const {
    for (const auto &q : qubits) {
        if (q.qubit_index == index) return q;
    }
    throw InvalidInput("device table has no qubit " + std::to_string(index));
}

DeviceTable load_device_table(std::string_view csv_text) {
    auto rows = parse_csv(csv_text);
    if (rows.empty()) {
        throw ParseError("device table: empty input");
    }
    std::array<int, kNumCols> idx;
    idx.fill(-1);
    std::array<double, kNumCols> scale;
    scale.fill(1.0);
    const auto &header = rows[0];
    for (std::size_t c = 0; c < header.size(); ++c) {
        std::string h = lower(header[c]);
        int col = -1;
        if (h.rfind("qubit", 0) == 0) col = kQubit;
        else if (h.rfind("t1", 0) == 0) col = kT1;
        else if (h.rfind("t2", 0) == 0) col = kT2;
        else if (h.rfind("gate error", 0) == 0) col = kGate;
        else if (h.rfind("readout error", 0) == 0) col = kReadout;
        else if (h.rfind("gate fidelity", 0) == 0) col = kGateFid;
        else if (h.rfind("readout fidelity", 0) == 0) col = kReadoutFid;
        if (col < 0) continue;
        if (idx[col] >= 0) {
            throw ParseError("device table: duplicate column '" + header[c] + "'");
        }
        idx[col] = static_cast<int>(c);
        scale[col] = column_scale(header[c]);
    }
    for (int col : {kQubit, kT1, kT2, kGate, kReadout}) {
        if (idx[col] < 0) {
            throw ParseError("device table: header must name Qubit, T1, T2, Gate error and Readout Error columns");
        }
    }

    DeviceTable table;
    std::vector<std::string> mean_row, sd_row;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto &row = rows[r];
        std::string where = "device table row " + std::to_string(r + 1);
        if (row.size() != header.size()) {
            throw ParseError(where + ": expected " + std::to_string(header.size()) + " fields, got " +
                             std::to_string(row.size()));
        }
        std::string label = lower(row[idx[kQubit]]);
        if (label == "mean") {
            mean_row = row;
            continue;
        }
        if (label == "sd") {
            sd_row = row;
            continue;
        }
        QubitNoiseParams p;
        p.qubit_index = static_cast<int>(parse_int_field(row[idx[kQubit]], where + " qubit"));
        p.t1_us = parse_double_field(row[idx[kT1]], where + " T1") * scale[kT1];
        p.t2_us = parse_double_field(row[idx[kT2]], where + " T2") * scale[kT2];
        p.gate_error = parse_double_field(row[idx[kGate]], where + " gate error") * scale[kGate];
        p.readout_error = parse_double_field(row[idx[kReadout]], where + " readout error") * scale[kReadout];
        if (p.qubit_index < 0 || p.t1_us < 0 || p.t2_us < 0 || p.gate_error < 0 || p.readout_error < 0) {
            throw InvalidInput(where + ": negative value");
        }
        if (p.t2_us > 2 * p.t1_us) {
            throw InvalidInput(where + ": qubit " + std::to_string(p.qubit_index) + " has T2 = " +
                               format_double(p.t2_us) + " us > 2*T1 = " + format_double(2 * p.t1_us) + " us");
        }
        for (const auto &q : table.qubits) {
            if (q.qubit_index == p.qubit_index) {
                throw ParseError(where + ": duplicate qubit " + std::to_string(p.qubit_index));
            }
        }
        auto opt = [&](int col) -> std::optional<double> {
            if (idx[col] < 0 || row[idx[col]].empty()) return std::nullopt;
            return parse_double_field(row[idx[col]], where + " " + header[idx[col]]) * scale[col];
        };
        auto gf = opt(kGateFid);
        auto rf = opt(kReadoutFid);
        std::string q = "qubit " + std::to_string(p.qubit_index);
        if (gf && std::abs(*gf - (1 - p.gate_error)) > rounding_tol(row[idx[kGateFid]])) {
            table.diagnostics.push_back(q + ": gate fidelity " + row[idx[kGateFid]] + " differs from 1 - gate error");
        }
        if (rf && std::abs(*rf - (1 - p.readout_error)) > rounding_tol(row[idx[kReadoutFid]])) {
            table.diagnostics.push_back(q + ": readout fidelity " + row[idx[kReadoutFid]] +
                                        " differs from 1 - readout error");
        }
        table.qubits.push_back(p);
        table.gate_fidelity.push_back(gf);
        table.readout_fidelity.push_back(rf);
    }
    if (table.qubits.empty()) {
        throw ParseError("device table: no qubit rows");
    }

    struct Target {
        ColumnSummary *summary;
        int col;
        double QubitNoiseParams::*field;
        const char *name;
    };
    const Target targets[] = {
        {&table.t1_us, kT1, &QubitNoiseParams::t1_us, "T1"},
        {&table.t2_us, kT2, &QubitNoiseParams::t2_us, "T2"},
        {&table.gate_error, kGate, &QubitNoiseParams::gate_error, "gate error"},
        {&table.readout_error, kReadout, &QubitNoiseParams::readout_error, "readout error"},
    };
    for (const auto &t : targets) {
        std::vector<double> v;
        for (const auto &q : table.qubits) v.push_back(q.*(t.field));
        *t.summary = summarize(v);
        auto check = [&](const std::vector<std::string> &row, std::optional<double> &slot, double computed,
                         const char *what) {
            if (row.empty()) return;
            const auto &field = row[idx[t.col]];
            double stored = parse_double_field(field, std::string("stored ") + what);
            slot = stored * scale[t.col];
            if (std::abs(stored - computed / scale[t.col]) > rounding_tol(field)) {
                table.diagnostics.push_back(std::string("stored ") + what + " of " + t.name + " (" + field +
                                            ") differs from the computed value " +
                                            format_double(computed / scale[t.col]));
            }
        };
        check(mean_row, t.summary->reported_mean, t.summary->mean, "mean");
        check(sd_row, t.summary->reported_sd, t.summary->sd, "SD");
    }
    return table;
}

std::string_view embedded_device_csv(std::string_view name) {
    if (name == "ibmqx5") return k_ibmqx5;
    if (name == "acorn") return k_acorn;
    if (name == "ibmqx4") return k_ibmqx4;
    throw InvalidInput("unknown device table '" + std::string(name) + "'");
}

const DeviceTable &device_table(std::string_view name) {
    static const std::map<std::string, DeviceTable, std::less<>> tables = [] {
        std::map<std::string, DeviceTable, std::less<>> m;
        for (const auto &n : device_table_names()) m.emplace(n, load_device_table(embedded_device_csv(n)));
        return m;
    }();
    auto it = tables.find(name);
    if (it == tables.end()) {
        throw InvalidInput("unknown device table '" + std::string(name) + "'");
    }
    return it->second;
}

std::vector<std::string> device_table_names() {
    return {"ibmqx5", "acorn", "ibmqx4"};
}

}  // namespace ddlab
