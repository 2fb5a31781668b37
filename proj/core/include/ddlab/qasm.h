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

#ifndef DDLAB_QASM_H
#define DDLAB_QASM_H

#include <string>
#include <variant>

#include "ddlab/quantum.h"
#include "ddlab/sequences.h"

namespace ddlab {

// One experiment cell: a sequence truncated to n_labels pulses, applied to
// a single qubit (Euler preparation, adjoint unpreparation) or to both
// qubits of a Bell pair.
struct QasmCell {
    SequenceDef sequence;
    std::variant<EulerAngles, BellKind> initial = EulerAngles{};
    int n_labels = 0;
    int tau_multiplier = 1;  // k − 1 extra id gates after every label
};

std::string export_qasm(const QasmCell &cell);

}  // namespace ddlab

#endif
