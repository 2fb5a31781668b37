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

#include "ddlab/noise.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "ddlab/device_tables.h"
#include "ddlab/error.h"
#include "ddlab/quantum.h"

namespace ddlab {

namespace {

bool finite(double x) {
    return std::isfinite(x);
}

CMatrix sigma_plus() {
    return sigma_minus().adjoint();
}

// Operator acting on bath qubit j of the joint (system ⊗ bath) space.
CMatrix on_bath(const CMatrix &op, int j, int n_bath) {
    return embed_qubit_op(op, j + 1, n_bath + 1);
}

CMatrix on_system(const CMatrix &op, int n_bath) {
    return embed_qubit_op(op, 0, n_bath + 1);
}

}  // namespace

void QubitNoiseParams::validate() const {
    if (!(t1_us > 0) || !(t2_us > 0) || !finite(t1_us) || !finite(t2_us)) {
        throw InvalidInput("qubit " + std::to_string(qubit_index) + ": T1 and T2 must be positive and finite");
    }
    if (!(gate_error >= 0 && gate_error <= 0.5) || !(readout_error >= 0 && readout_error <= 0.5)) {
        throw InvalidInput("qubit " + std::to_string(qubit_index) + ": error probabilities must lie in [0, 0.5]");
    }
    if (t2_us > 2 * t1_us * (1 + 1e-12)) {
        throw InvalidInput("qubit " + std::to_string(qubit_index) + ": T2 = " + std::to_string(t2_us) +
                           " us exceeds 2*T1 = " + std::to_string(2 * t1_us) + " us");
    }
}

std::vector<CMatrix> LindbladModel::jump_operators() const {
    std::vector<CMatrix> ops;
    if (amplitude_damping_rate > 0) ops.push_back(std::sqrt(amplitude_damping_rate) * sigma_minus());
    if (dephasing_rate > 0) ops.push_back(std::sqrt(dephasing_rate) * pauli(3));
    return ops;
}

double LindbladModel::tphi_us() const {
    if (dephasing_rate <= 0) return std::numeric_limits<double>::infinity();
    return 1.0 / (2 * dephasing_rate) / 1000.0;
}

LindbladModel lindblad_from_params(const QubitNoiseParams &params) {
    params.validate();
    double t1_ns = params.t1_us * 1000.0;
    double t2_ns = params.t2_us * 1000.0;
    double inv_tphi = 1.0 / t2_ns - 1.0 / (2 * t1_ns);
    LindbladModel m;
    m.amplitude_damping_rate = 1.0 / t1_ns;
    m.dephasing_rate = std::max(0.0, inv_tphi) / 2;
    return m;
}

void SpinBathModel::validate() const {
    int n = n_bath();
    if (n < 1 || n > 3) {
        throw InvalidInput("SpinBathModel: bath qubit count must be 1..3");
    }
    if (static_cast<int>(coupling.size()) != n || static_cast<int>(exchange.size()) != n) {
        throw InvalidInput("SpinBathModel: coupling and exchange need one entry per bath qubit");
    }
    bool ok = finite(system_detuning);
    for (int j = 0; j < n; ++j) {
        ok = ok && finite(bath_splittings[j]) && finite(exchange[j]);
        for (const auto &row : coupling[j]) {
            for (double g : row) ok = ok && finite(g);
        }
    }
    if (!ok) {
        throw InvalidInput("SpinBathModel: all frequencies and couplings must be finite");
    }
}

CMatrix SpinBathModel::system_hamiltonian() const {
    return on_system(-0.5 * system_detuning * pauli(3), n_bath());
}

CMatrix SpinBathModel::bath_hamiltonian() const {
    int n = n_bath();
    CMatrix h = CMatrix::Zero(joint_dim(), joint_dim());
    for (int j = 0; j < n; ++j) h += on_bath(-0.5 * bath_splittings[j] * pauli(3), j, n);
    return h;
}

CMatrix SpinBathModel::coupling_hamiltonian() const {
    int n = n_bath();
    CMatrix h = CMatrix::Zero(joint_dim(), joint_dim());
    for (int j = 0; j < n; ++j) {
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                double g = coupling[j][a][b];
                if (g == 0) continue;
                h += g * on_system(pauli(a + 1), n) * on_bath(pauli(b + 1), j, n);
            }
        }
        if (exchange[j] != 0) {
            CMatrix sm = on_system(sigma_minus(), n) * on_bath(sigma_plus(), j, n);
            h += exchange[j] * (sm + CMatrix(sm.adjoint()));
        }
    }
    return h;
}

CMatrix SpinBathModel::total_hamiltonian() const {
    return system_hamiltonian() + bath_hamiltonian() + coupling_hamiltonian();
}

CMatrix SpinBathModel::bath_ground_state() const {
    Eigen::Index d = bath_dim();
    Eigen::Index best = 0;
    double best_e = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < d; ++k) {
        double e = 0;
        for (int j = 0; j < n_bath(); ++j) {
            int bit = static_cast<int>((k >> (n_bath() - 1 - j)) & 1);
            e += -0.5 * bath_splittings[j] * (bit ? -1.0 : 1.0);
        }
        if (e < best_e - 1e-15) {
            best_e = e;
            best = k;
        }
    }
    CMatrix rho = CMatrix::Zero(d, d);
    rho(best, best) = 1;
    return rho;
}

SpinBathModel SpinBathModel::pure_dephasing(double g_z, double omega) {
    SpinBathModel m;
    m.bath_splittings = {omega};
    Tensor t{};
    t[2][2] = g_z;
    m.coupling = {t};
    m.exchange = {0.0};
    return m;
}

SpinBathModel SpinBathModel::exchange_only(double g_jc, double omega) {
    SpinBathModel m;
    m.bath_splittings = {omega};
    m.coupling = {Tensor{}};
    m.exchange = {g_jc};
    return m;
}

SpinBathModel SpinBathModel::random(int n_bath, double strength, double omega_scale, RandomStream &rng) {
    SpinBathModel m;
    for (int j = 0; j < n_bath; ++j) {
        m.bath_splittings.push_back(omega_scale * rng.uniform(0.5, 1.5));
        Tensor t{};
        for (auto &row : t) {
            for (double &g : row) g = strength * rng.normal();
        }
        m.coupling.push_back(t);
        m.exchange.push_back(0.0);
    }
    m.validate();
    return m;
}

bool operator==(const SpinBathModel &a, const SpinBathModel &b) {
    return a.system_detuning == b.system_detuning && a.bath_splittings == b.bath_splittings &&
           a.coupling == b.coupling && a.exchange == b.exchange;
}

std::string_view classical_kind_name(ClassicalNoiseKind k) {
    switch (k) {
        case ClassicalNoiseKind::NONE:
            return "NONE";
        case ClassicalNoiseKind::STATIC_GAUSSIAN:
            return "STATIC_GAUSSIAN";
        case ClassicalNoiseKind::RTN:
            return "RTN";
        case ClassicalNoiseKind::OU:
            return "OU";
    }
    return "?";
}

ClassicalNoiseKind parse_classical_kind(std::string_view s) {
    for (auto k : {ClassicalNoiseKind::NONE, ClassicalNoiseKind::STATIC_GAUSSIAN, ClassicalNoiseKind::RTN,
                   ClassicalNoiseKind::OU}) {
        if (classical_kind_name(k) == s) return k;
    }
    throw InvalidInput("unknown classical noise kind '" + std::string(s) + "'");
}

void ClassicalDephasingNoise::validate() const {
    if (realizations < 1) {
        throw InvalidInput("ClassicalDephasingNoise: realization count must be >= 1");
    }
    if (!(amplitude >= 0) || !finite(amplitude)) {
        throw InvalidInput("ClassicalDephasingNoise: amplitude must be finite and >= 0");
    }
    if (kind == ClassicalNoiseKind::RTN && !(flip_rate_per_ns > 0)) {
        throw InvalidInput("ClassicalDephasingNoise: RTN needs a positive flip rate");
    }
    if (kind == ClassicalNoiseKind::OU && !(correlation_time_ns > 0)) {
        throw InvalidInput("ClassicalDephasingNoise: OU needs a positive correlation time");
    }
}

double DetuningTrajectory::at(double t_ns) const {
    if (values.empty()) return 0;
    auto i = static_cast<std::ptrdiff_t>(std::floor(t_ns / dt_ns));
    i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(values.size()) - 1);
    return values[static_cast<std::size_t>(i)];
}

DetuningTrajectory sample_classical_trajectory(const ClassicalDephasingNoise &noise, double duration_ns,
                                               double dt_ns, RandomStream &rng) {
    if (!(dt_ns > 0)) {
        throw InvalidInput("sample_classical_trajectory: dt must be positive");
    }
    noise.validate();
    DetuningTrajectory tr;
    tr.dt_ns = dt_ns;
    auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(duration_ns / dt_ns - 1e-9)));
    tr.values.assign(steps, 0.0);
    switch (noise.kind) {
        case ClassicalNoiseKind::NONE:
            break;
        case ClassicalNoiseKind::STATIC_GAUSSIAN: {
            double d = noise.amplitude * rng.normal();
            std::fill(tr.values.begin(), tr.values.end(), d);
            break;
        }
        case ClassicalNoiseKind::RTN: {
            double level = rng.uniform() < 0.5 ? noise.amplitude : -noise.amplitude;
            double flip = 0.5 * (1 - std::exp(-2 * noise.flip_rate_per_ns * dt_ns));
            for (auto &v : tr.values) {
                v = level;
                if (rng.uniform() < flip) level = -level;
            }
            break;
        }
        case ClassicalNoiseKind::OU: {
            double decay = std::exp(-dt_ns / noise.correlation_time_ns);
            double kick = noise.amplitude * std::sqrt(1 - decay * decay);
            double d = noise.amplitude * rng.normal();
            for (auto &v : tr.values) {
                v = d;
                d = d * decay + kick * rng.normal();
            }
            break;
        }
    }
    return tr;
}

std::string_view pulse_mode_name(PulseMode m) {
    return m == PulseMode::INSTANTANEOUS ? "INSTANTANEOUS" : "FINITE_WIDTH";
}

PulseMode parse_pulse_mode(std::string_view s) {
    if (s == "INSTANTANEOUS") return PulseMode::INSTANTANEOUS;
    if (s == "FINITE_WIDTH") return PulseMode::FINITE_WIDTH;
    throw InvalidInput("unknown pulse mode '" + std::string(s) + "'");
}

void PulseErrorModel::validate() const {
    if (!(over_rotation_fraction >= 0) || !(axis_tilt_rad >= 0) || !finite(over_rotation_fraction) ||
        !finite(axis_tilt_rad)) {
        throw InvalidInput("PulseErrorModel: over-rotation and tilt must be finite and >= 0");
    }
    if (!(depolarizing_prob_per_pulse >= 0 && depolarizing_prob_per_pulse <= 1)) {
        throw InvalidInput("PulseErrorModel: depolarizing probability must lie in [0, 1]");
    }
}

std::array<double, 3> PulseErrorModel::axis(int pauli_index) const {
    double c = std::cos(axis_tilt_rad);
    double s = std::sin(axis_tilt_rad);
    switch (pauli_index) {
        case 1:
            return {c, 0, s};
        case 2:
            return {0, c, s};
        case 3:
            return {s, 0, c};
        default:
            throw InvalidInput("PulseErrorModel::axis: not a Pauli pulse");
    }
}

ReadoutModel ReadoutModel::perfect(int n_qubits) {
    ReadoutModel m;
    m.confusion.assign(static_cast<std::size_t>(n_qubits), Eigen::Matrix2d::Identity());
    return m;
}

ReadoutModel ReadoutModel::symmetric(const std::vector<double> &errors) {
    ReadoutModel m;
    for (double e : errors) m.confusion.push_back(asymmetric(e, e));
    m.validate();
    return m;
}

Eigen::Matrix2d ReadoutModel::asymmetric(double p1_given_0, double p0_given_1) {
    Eigen::Matrix2d c;
    c << 1 - p1_given_0, p0_given_1, p1_given_0, 1 - p0_given_1;
    return c;
}

void ReadoutModel::validate() const {
    for (const auto &c : confusion) {
        for (int b = 0; b < 2; ++b) {
            if (std::abs(c(0, b) + c(1, b) - 1) > 1e-12) {
                throw InvalidInput("ReadoutModel: confusion columns must sum to 1");
            }
            for (int a = 0; a < 2; ++a) {
                if (!(c(a, b) >= 0 && c(a, b) <= 1)) {
                    throw InvalidInput("ReadoutModel: confusion entries must lie in [0, 1]");
                }
            }
        }
    }
}

std::vector<double> apply_readout(const ReadoutModel &model, const std::vector<double> &true_probs) {
    model.validate();
    int n = model.n_qubits();
    std::size_t dim = std::size_t{1} << n;
    if (true_probs.size() != dim) {
        throw InvalidInput("apply_readout: probability vector has the wrong length");
    }
    double total = 0;
    for (double p : true_probs) {
        if (!(p >= -1e-12) || !finite(p)) {
            throw InvalidInput("apply_readout: probabilities must be finite and non-negative");
        }
        total += p;
    }
    if (std::abs(total - 1) > 1e-9) {
        throw InvalidInput("apply_readout: probabilities must sum to 1");
    }
    std::vector<double> cur = true_probs;
    // One qubit at a time: contract the confusion matrix with that bit.
    for (int q = 0; q < n; ++q) {
        std::size_t mask = std::size_t{1} << (n - 1 - q);
        std::vector<double> next(dim, 0.0);
        const auto &c = model.confusion[static_cast<std::size_t>(q)];
        for (std::size_t k = 0; k < dim; ++k) {
            int b = (k & mask) ? 1 : 0;
            for (int a = 0; a < 2; ++a) {
                std::size_t out = a ? (k | mask) : (k & ~mask);
                next[out] += c(a, b) * cur[k];
            }
        }
        cur = std::move(next);
    }
    return cur;
}

void NoiseConfiguration::validate() const {
    for (const auto &p : qubit_params) p.validate();
    if ((lindblad || gate_depolarizing || (readout && !readout_flips)) && qubit_params.empty()) {
        throw InvalidInput("NoiseConfiguration '" + name + "': table-derived channels need qubit parameters");
    }
    if (readout_flips) {
        ReadoutModel m;
        m.confusion.push_back(ReadoutModel::asymmetric((*readout_flips)[0], (*readout_flips)[1]));
        m.validate();
    }
    pulse.validate();
    classical.validate();
    if (bath) bath->validate();
}

const QubitNoiseParams &NoiseConfiguration::params_for(int device_qubit) const {
    for (const auto &p : qubit_params) {
        if (p.qubit_index == device_qubit) return p;
    }
    if (qubit_params.size() == 1 && qubit_params[0].qubit_index == -1) return qubit_params[0];
    throw InvalidInput("NoiseConfiguration '" + name + "' has no parameters for qubit " +
                       std::to_string(device_qubit));
}

std::optional<LindbladModel> NoiseConfiguration::lindblad_for(int device_qubit) const {
    if (!lindblad) return std::nullopt;
    return lindblad_from_params(params_for(device_qubit));
}

double NoiseConfiguration::depolarizing_for(int device_qubit) const {
    double p = pulse.depolarizing_prob_per_pulse;
    if (gate_depolarizing) p += 2 * params_for(device_qubit).gate_error;
    return std::min(p, 1.0);
}

Eigen::Matrix2d NoiseConfiguration::confusion_for(int device_qubit) const {
    if (!readout) return Eigen::Matrix2d::Identity();
    if (readout_flips) return ReadoutModel::asymmetric((*readout_flips)[0], (*readout_flips)[1]);
    double e = params_for(device_qubit).readout_error;
    return ReadoutModel::asymmetric(e, e);
}

ReadoutModel NoiseConfiguration::readout_for(const std::vector<int> &device_qubits) const {
    ReadoutModel m;
    for (int q : device_qubits) m.confusion.push_back(confusion_for(q));
    return m;
}

bool NoiseConfiguration::coherent_only(const std::vector<int> &device_qubits) const {
    if (lindblad) return false;
    for (int q : device_qubits) {
        if (depolarizing_for(q) > 0) return false;
    }
    return true;
}

// Output of `ddlab_fixtures calibrate` (seed 7, FREE on the type-2 ensemble,
// N = 0..592 in steps of 4, target λ = 29). Regenerate when the engine or the
// preset changes.
double calibrated_static_sigma() {
    return 4.7188941e-4;
}

NoiseConfiguration noise_preset(std::string_view name) {
    NoiseConfiguration c;
    c.name = std::string(name);
    if (name == "ideal") {
        return c;
    }
    auto table_preset = [&](std::string_view device, bool mean) {
        const auto &t = device_table(device);
        if (mean) {
            c.qubit_params = {t.mean_params()};
        } else {
            c.qubit_params = t.qubits;
        }
        c.lindblad = true;
        c.gate_depolarizing = true;
        c.readout = true;
    };
    if (name == "ibmqx5_mean_calibrated") {
        table_preset("ibmqx5", true);
        c.pulse.mode = PulseMode::FINITE_WIDTH;
        c.classical.kind = ClassicalNoiseKind::STATIC_GAUSSIAN;
        c.classical.amplitude = calibrated_static_sigma();
        return c;
    }
    for (const auto &d : device_table_names()) {
        if (name == d) {
            table_preset(d, false);
            return c;
        }
        if (name == d + "_mean") {
            table_preset(d, true);
            return c;
        }
    }
    throw InvalidInput("unknown noise preset '" + std::string(name) + "'");
}

std::vector<std::string> noise_preset_names() {
    std::vector<std::string> out{"ideal", "ibmqx5_mean_calibrated"};
    for (const auto &d : device_table_names()) {
        out.push_back(d);
        out.push_back(d + "_mean");
    }
    return out;
}

}  // namespace ddlab
