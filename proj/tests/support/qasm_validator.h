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

#ifndef DDLAB_TESTS_QASM_VALIDATOR_H
#define DDLAB_TESTS_QASM_VALIDATOR_H

#include <string>
#include <string_view>
#include <vector>

namespace qasm_check {

struct Op {
    std::string name;
    std::vector<double> params;
    std::vector<std::pair<std::string, int>> args;  // (register, index)
};

struct Program {
    bool ok = false;
    std::string error;
    std::vector<Op> ops;  // gates and measures in order
};

// OPENQASM 2.0 subset: qreg, creg, u3, x, y, z, h, id, cx, measure
// (parameter expressions: numbers, pi, unary minus, + - * /).
Program parse(std::string_view text);

}  // namespace qasm_check

#endif
