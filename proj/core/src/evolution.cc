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

#include "ddlab/evolution.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "ddlab/error.h"

namespace ddlab {

namespace {

CMatrix hermitize(const CMatrix &m) {
    return 0.5 * (m + CMatrix(m.adjoint()));
}

// Largest deviation of Tr[S(X)] from Tr[X] over matrix units X.
double trace_defect(const CMatrix &super, Eigen::Index dim) {
    double worst = 0;
    for (Eigen::Index col = 0; col < super.cols(); ++col) {
        cplx tr = 0;
        for (Eigen::Index k = 0; k < dim; ++k) tr += super(k * dim + k, col);
        Eigen::Index i = col % dim;
        Eigen::Index j = col / dim;
        cplx expected = (i == j) ? cplx{1, 0} : cplx{0, 0};
        worst = std::max(worst, std::abs(tr - expected));
    }
    return worst;
}

CMatrix unitary_exp(const CMatrix &h, double t) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(h));
    CVector phases(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases(k) = std::exp(cplx{0, -es.eigenvalues()(k) * t});
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// exp(−i t θ/2 n·σ) = cos(θ/2) I − i sin(θ/2) n·σ.
CMatrix axis_rotation(const std::array<double, 3> &n, double angle) {
    CMatrix ns = n[0] * pauli(1) + n[1] * pauli(2) + n[2] * pauli(3);
    return std::cos(angle / 2) * pauli(0) - cplx{0, 1} * std::sin(angle / 2) * ns;
}

}  // namespace

CMatrix lindblad_propagator(const CMatrix &h, const std::vector<CMatrix> &jumps, double t) {
    Eigen::Index d = h.rows();
    CMatrix id = CMatrix::Identity(d, d);
    const cplx i{0, 1};
    // vec(AXB) = (Bᵀ ⊗ A) vec(X).
    CMatrix gen = -i * (kron(id, h) - kron(h.transpose(), id));
    for (const auto &l : jumps) {
        CMatrix ldl = l.adjoint() * l;
        gen += kron(l.conjugate(), l) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id);
    }
    for (int split = 0; split <= 10; ++split) {
        double steps = std::ldexp(1.0, split);
        CMatrix step = (gen * (t / steps)).exp();
        CMatrix total = step;
        for (int k = 0; k < split; ++k) total = total * total;
        if (trace_defect(total, d) <= 1e-9) {
            return total;
        }
    }
    throw InternalError("lindblad_propagator: propagator is not trace preserving within 1e-9");
}

SlotPropagator::SlotPropagator(const NoiseConfiguration &noise, std::vector<int> device_qubits,
                               DeviceTimingProfile profile)
    : noise_(noise), qubits_(std::move(device_qubits)), profile_(std::move(profile)) {
    noise_.validate();
    profile_.validate();
    int n = n_qubits();
    if (n < 1 || n > 4) {
        throw InvalidInput("SlotPropagator: 1 to 4 system qubits are supported");
    }
    if (noise_.bath) {
        if (n != 1) {
            throw InvalidInput("SlotPropagator: a spin bath requires exactly one system qubit");
        }
        bath_dim_ = noise_.bath->bath_dim();
    }
    dim_ = (Eigen::Index{1} << n) * bath_dim_;
    static_h_ = noise_.bath ? noise_.bath->total_hamiltonian() : CMatrix::Zero(dim_, dim_);
    for (int q = 0; q < n; ++q) {
        sigma_z_.push_back(embed_qubit_op(pauli(3), q, n, bath_dim_));
        if (auto lb = noise_.lindblad_for(qubits_[q])) {
            for (const auto &op : lb->jump_operators()) jumps_.push_back(embed_qubit_op(op, q, n, bath_dim_));
        }
        depolarizing_.push_back(noise_.depolarizing_for(qubits_[q]));
    }
    unitary_ = noise_.coherent_only(qubits_);
    if (!unitary_ && dim_ > 16) {
        throw InvalidInput("SlotPropagator: open-system propagation is limited to 16 levels");
    }
}

CMatrix SlotPropagator::hamiltonian(std::span<const double> detunings) const {
    CMatrix h = static_h_;
    if (!detunings.empty()) {
        if (static_cast<int>(detunings.size()) != n_qubits()) {
            throw InvalidInput("SlotPropagator: one detuning per system qubit expected");
        }
        for (int q = 0; q < n_qubits(); ++q) {
            if (detunings[q] != 0) h += -0.5 * detunings[q] * sigma_z_[q];
        }
    }
    return h;
}

CMatrix SlotPropagator::drive_hamiltonian(int pauli_index) const {
    auto n = noise_.pulse.axis(pauli_index);
    double omega = std::numbers::pi * (1 + noise_.pulse.over_rotation_fraction) / profile_.pulse_width_ns;
    CMatrix ns = n[0] * pauli(1) + n[1] * pauli(2) + n[2] * pauli(3);
    CMatrix h = CMatrix::Zero(dim_, dim_);
    for (int q = 0; q < n_qubits(); ++q) h += embed_qubit_op(0.5 * omega * ns, q, n_qubits(), bath_dim_);
    return h;
}

CMatrix SlotPropagator::pulse_unitary(int pauli_index) const {
    CMatrix one = axis_rotation(noise_.pulse.axis(pauli_index),
                                std::numbers::pi * (1 + noise_.pulse.over_rotation_fraction));
    CMatrix u = CMatrix::Identity(dim_, dim_);
    for (int q = 0; q < n_qubits(); ++q) u = embed_qubit_op(one, q, n_qubits(), bath_dim_) * u;
    return u;
}

CMatrix SlotPropagator::depolarizing_superop() const {
    Eigen::Index d2 = dim_ * dim_;
    CMatrix total = CMatrix::Identity(d2, d2);
    for (int q = 0; q < n_qubits(); ++q) {
        double p = depolarizing_[q];
        if (p == 0) continue;
        // (1−p)ρ + p·(I/2 ⊗ Tr_q ρ) = (1−p)ρ + (p/4) Σ_i σ_i ρ σ_i.
        CMatrix s = (1 - p) * CMatrix::Identity(d2, d2);
        for (int k = 0; k < 4; ++k) {
            CMatrix op = embed_qubit_op(pauli(k), q, n_qubits(), bath_dim_);
            s += (p / 4) * sandwich_superop(op, op);
        }
        total = s * total;
    }
    return total;
}

CMatrix SlotPropagator::generator_map(const CMatrix &h, double duration_ns) const {
    if (unitary_) return unitary_exp(h, duration_ns);
    return lindblad_propagator(h, jumps_, duration_ns);
}

CMatrix SlotPropagator::identity_map() const {
    Eigen::Index d = unitary_ ? dim_ : dim_ * dim_;
    return CMatrix::Identity(d, d);
}

CMatrix SlotPropagator::free_map(double duration_ns, std::span<const double> detunings) const {
    if (!(duration_ns >= 0)) {
        throw InvalidInput("SlotPropagator: negative duration");
    }
    if (duration_ns == 0) return identity_map();
    return generator_map(hamiltonian(detunings), duration_ns);
}

CMatrix SlotPropagator::slot_map(const ScheduleSlot &slot, std::span<const double> detunings) const {
    if (slot.kind == SlotKind::FREE || slot.label.pauli == Pauli::I) {
        return free_map(slot.duration_ns, detunings);
    }
    int p = static_cast<int>(slot.label.pauli);
    CMatrix pulse;
    double rest = slot.duration_ns;
    if (noise_.pulse.mode == PulseMode::INSTANTANEOUS) {
        CMatrix u = pulse_unitary(p);
        pulse = unitary_ ? u : sandwich_superop(u, u.adjoint());
    } else {
        if (slot.duration_ns < profile_.pulse_width_ns - 1e-9) {
            throw InvalidInput("SlotPropagator: pulse slot shorter than the pulse width");
        }
        pulse = generator_map(hamiltonian(detunings) + drive_hamiltonian(p), profile_.pulse_width_ns);
        rest = std::max(0.0, slot.duration_ns - profile_.pulse_width_ns);
    }
    if (!unitary_) pulse = depolarizing_superop() * pulse;
    return free_map(rest, detunings) * pulse;
}

CMatrix SlotPropagator::apply(const CMatrix &map, const CMatrix &rho) const {
    if (unitary_) return map * rho * map.adjoint();
    return unvectorize(map * vectorize(rho), dim_);
}

DetuningTrajectory detuning_realization(const ClassicalDephasingNoise &noise, std::uint64_t seed, int device_qubit,
                                        int realization, std::size_t n_slots, double slot_ns) {
    RandomStream rng{seed, stream_tag::kTrajectory, static_cast<std::uint64_t>(static_cast<std::int64_t>(device_qubit)),
                     static_cast<std::uint64_t>(realization)};
    auto tr = sample_classical_trajectory(noise, static_cast<double>(std::max<std::size_t>(n_slots, 1)) * slot_ns,
                                          slot_ns, rng);
    tr.values.resize(std::max<std::size_t>(n_slots, 1), tr.values.back());
    return tr;
}

EvolutionResult evolve(const EvolutionRequest &req) {
    SlotPropagator prop(req.noise, req.device_qubits, req.schedule.profile);
    int n = prop.n_qubits();
    Eigen::Index sys_dim = Eigen::Index{1} << n;
    std::size_t n_states = req.initial_states.size();
    if (n_states == 0) {
        throw InvalidInput("evolve: no initial states");
    }
    for (const auto &rho : req.initial_states) {
        if (rho.rows() != sys_dim || rho.cols() != sys_dim) {
            throw InvalidInput("evolve: initial state dimension does not match the qubit count");
        }
    }
    if (!req.measurement_frames.empty() && req.measurement_frames.size() != n_states) {
        throw InvalidInput("evolve: one measurement frame per initial state expected");
    }
    if (req.checkpoints.empty()) {
        throw InvalidInput("evolve: no checkpoints");
    }
    std::vector<std::size_t> checkpoint_slots;
    for (std::size_t c = 0; c < req.checkpoints.size(); ++c) {
        if (c > 0 && req.checkpoints[c] < req.checkpoints[c - 1]) {
            throw InvalidInput("evolve: checkpoints must be non-decreasing");
        }
        checkpoint_slots.push_back(req.schedule.slot_count_for_labels(req.checkpoints[c]));
    }
    std::size_t n_slots = checkpoint_slots.back();

    CMatrix bath0 = req.noise.bath ? req.noise.bath->bath_ground_state() : CMatrix::Identity(1, 1);
    std::vector<CMatrix> joint0;
    for (const auto &rho : req.initial_states) joint0.push_back(kron(rho, bath0));
    Eigen::Index d = prop.dim();

    const auto &classical = req.noise.classical;
    int realizations = classical.active() ? classical.realizations : 1;
    bool constant_detuning = !classical.active() || classical.kind == ClassicalNoiseKind::STATIC_GAUSSIAN;
    bool accumulate = prop.unitary_mode() || d * d <= static_cast<Eigen::Index>(n_states);
    double slot_ns = req.schedule.profile.identity_slot_ns;

    EvolutionResult out;
    out.states.assign(req.checkpoints.size(), std::vector<CMatrix>(n_states, CMatrix::Zero(sys_dim, sys_dim)));

    for (int m = 0; m < realizations; ++m) {
        std::vector<DetuningTrajectory> traj;
        if (classical.active()) {
            for (int q : req.device_qubits) {
                traj.push_back(detuning_realization(classical, req.seed, q, m, n_slots, slot_ns));
            }
        }
        std::vector<double> det(traj.size(), 0.0);
        auto detunings_at = [&](std::size_t slot_index) {
            for (std::size_t q = 0; q < traj.size(); ++q) det[q] = traj[q].values[slot_index];
            return std::span<const double>(det);
        };

        // Slot maps are reusable while the detuning is constant.
        struct CacheEntry {
            SlotKind kind;
            Pauli pauli;
            double duration;
            CMatrix map;
        };
        std::vector<CacheEntry> cache;
        auto map_for = [&](std::size_t i) -> CMatrix {
            const auto &slot = req.schedule.slots[i];
            auto dets = detunings_at(i);
            if (!constant_detuning) return prop.slot_map(slot, dets);
            Pauli p = slot.kind == SlotKind::FREE ? Pauli::I : slot.label.pauli;
            for (const auto &e : cache) {
                if (e.kind == slot.kind && e.pauli == p && e.duration == slot.duration_ns) return e.map;
            }
            cache.push_back({slot.kind, p, slot.duration_ns, prop.slot_map(slot, dets)});
            return cache.back().map;
        };

        CMatrix total = prop.identity_map();
        CMatrix batch;  // columns vec(ρ_s), used when the map is not accumulated
        if (!accumulate) {
            batch.resize(d * d, static_cast<Eigen::Index>(n_states));
            for (std::size_t s = 0; s < n_states; ++s) batch.col(static_cast<Eigen::Index>(s)) = vectorize(joint0[s]);
        }

        auto record = [&](std::size_t c) {
            for (std::size_t s = 0; s < n_states; ++s) {
                CMatrix joint = accumulate ? prop.apply(total, joint0[s])
                                           : unvectorize(batch.col(static_cast<Eigen::Index>(s)), d);
                CMatrix sys = prop.has_bath() ? partial_trace(joint, sys_dim, prop.bath_dim(), true) : joint;
                if (!req.measurement_frames.empty()) {
                    const auto &v = req.measurement_frames[s];
                    sys = v * sys * v.adjoint();
                }
                out.states[c][s] += sys;
            }
        };

        std::size_t c = 0;
        for (std::size_t i = 0; i <= n_slots; ++i) {
            while (c < checkpoint_slots.size() && checkpoint_slots[c] == i) record(c++);
            if (i == n_slots) break;
            CMatrix map = map_for(i);
            if (accumulate) {
                total = map * total;
            } else {
                batch = map * batch;
            }
        }
    }
    for (auto &row : out.states) {
        for (auto &rho : row) rho = hermitize(rho / static_cast<double>(realizations));
    }
    return out;
}

DensityMatrix propagate_slot(const DensityMatrix &rho, const ScheduleSlot &slot, const NoiseConfiguration &noise,
                             const DeviceTimingProfile &profile, const std::vector<int> &device_qubits,
                             std::span<const double> detunings) {
    SlotPropagator prop(noise, device_qubits, profile);
    if (rho.dim() != prop.dim()) {
        throw InvalidInput("propagate_slot: state dimension does not match the configuration");
    }
    return DensityMatrix(hermitize(prop.apply(prop.slot_map(slot, detunings), rho.matrix())));
}

DensityMatrix run_schedule(const ScheduledRun &run) {
    EvolutionRequest req;
    req.device_qubits = run.device_qubits;
    req.schedule = run.schedule;
    req.noise = run.noise;
    req.seed = run.seed;
    req.checkpoints = {run.schedule.label_count};
    if (const auto *angles = std::get_if<EulerAngles>(&run.initial)) {
        if (run.device_qubits.size() != 1) {
            throw InvalidInput("run_schedule: Euler-angle runs use one qubit");
        }
        Unitary u = euler_unitary(*angles);
        PureState psi = basis_state(2, 0).apply(u);
        req.initial_states = {DensityMatrix::from_pure(psi).matrix()};
        req.measurement_frames = {u.adjoint().matrix()};
    } else {
        if (run.device_qubits.size() != 2) {
            throw InvalidInput("run_schedule: Bell runs use two qubits");
        }
        PureState psi = bell_state(std::get<BellKind>(run.initial));
        req.initial_states = {DensityMatrix::from_pure(psi).matrix()};
    }
    auto res = evolve(req);
    return DensityMatrix(res.states[0][0]);
}

std::vector<std::uint64_t> sample_multinomial(const std::vector<double> &probs, std::uint64_t n, RandomStream &rng) {
    std::vector<std::uint64_t> counts(probs.size(), 0);
    double remaining_p = 1.0;
    std::uint64_t remaining_n = n;
    for (std::size_t k = 0; k < probs.size() && remaining_n > 0; ++k) {
        if (k + 1 == probs.size()) {
            counts[k] = remaining_n;
            break;
        }
        double p = remaining_p > 0 ? std::clamp(probs[k] / remaining_p, 0.0, 1.0) : 0.0;
        counts[k] = rng.binomial(remaining_n, p);
        remaining_n -= counts[k];
        remaining_p -= probs[k];
    }
    return counts;
}

ShotResult measure_exact(const DensityMatrix &rho, const ReadoutModel &readout) {
    auto probs = rho.diagonal_probabilities();
    double total = 0;
    for (double p : probs) total += p;
    for (double &p : probs) p /= total;
    ShotResult r;
    r.probabilities = apply_readout(readout, probs);
    r.fidelity = r.probabilities[0];
    return r;
}

ShotResult measure_shots(const DensityMatrix &rho, const ReadoutModel &readout, int shots, RandomStream &rng) {
    if (shots < 1) {
        throw InvalidInput("measure_shots: shots must be >= 1");
    }
    ShotResult r = measure_exact(rho, readout);
    r.counts = sample_multinomial(r.probabilities, static_cast<std::uint64_t>(shots), rng);
    r.fidelity = static_cast<double>(r.counts[0]) / shots;
    return r;
}

}  // namespace ddlab
