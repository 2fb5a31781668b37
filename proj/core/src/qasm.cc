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

#include "ddlab/qasm.h"

#include "ddlab/csv.h"
#include "ddlab/error.h"
#include "ddlab/experiments.h"

namespace ddlab {

namespace {

const char *gate_mnemonic(Pauli p) {
    switch (p) {
        case Pauli::I: return "id";
        case Pauli::X: return "x";
        case Pauli::Y: return "y";
        case Pauli::Z: return "z";
    }
    return "id";
}

std::string u3(double theta, double phi, double lambda) {
    // + 0.0 turns −0 into 0
    theta += 0.0;
    phi += 0.0;
    lambda += 0.0;
    return "u3(" + format_double(theta) + "," + format_double(phi) + "," + format_double(lambda) + ")";
}

}  // namespace

std::string export_qasm(const QasmCell &cell) {
    if (cell.tau_multiplier < 1) throw InvalidInput("export_qasm: tau multiplier must be >= 1");
    cell.sequence.validate();
    auto labels = sequence_prefix(cell.sequence, cell.n_labels);
    const auto *angles = std::get_if<EulerAngles>(&cell.initial);
    int n = angles ? 1 : 2;

    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out += "qreg q[" + std::to_string(n) + "];\ncreg c[" + std::to_string(n) + "];\n";
    auto on_all = [&](const std::string &gate) {
        for (int q = 0; q < n; ++q) out += gate + " q[" + std::to_string(q) + "];\n";
    };

    if (angles) {
        out += u3(angles->theta, angles->phi, angles->lambda) + " q[0];\n";
    } else {
        for (const auto &g : bell_prep(std::get<BellKind>(cell.initial))) {
            switch (g.gate) {
                case GateName::H: out += "h q[" + std::to_string(g.qubits[0]) + "];\n"; break;
                case GateName::X: out += "x q[" + std::to_string(g.qubits[0]) + "];\n"; break;
                case GateName::CNOT:
                    out += "cx q[" + std::to_string(g.qubits[0]) + "],q[" + std::to_string(g.qubits[1]) + "];\n";
                    break;
                default: throw InternalError("export_qasm: unexpected gate in Bell preparation");
            }
        }
    }
    for (const auto &label : labels) {
        on_all(gate_mnemonic(label.pauli));
        for (int k = 1; k < cell.tau_multiplier; ++k) on_all("id");
    }
    if (angles) {
        // (R_z(φ) R_y(θ) R_z(λ))† = R_z(−λ) R_y(−θ) R_z(−φ)
        out += u3(-angles->theta, -angles->lambda, -angles->phi) + " q[0];\n";
    }
    for (int q = 0; q < n; ++q) {
        out += "measure q[" + std::to_string(q) + "] -> c[" + std::to_string(q) + "];\n";
    }
    return out;
}

}  // namespace ddlab
