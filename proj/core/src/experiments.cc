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

#include "ddlab/experiments.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "ddlab/analysis.h"
#include "ddlab/error.h"
#include "ddlab/evolution.h"

namespace ddlab {

namespace {

bool is_ga(SequenceFamily f) {
    return f == SequenceFamily::GA8A || f == SequenceFamily::GA16A || f == SequenceFamily::GA32A;
}

bool has_family(const std::vector<SequenceDef> &seqs, SequenceFamily f) {
    return std::any_of(seqs.begin(), seqs.end(), [&](const SequenceDef &d) { return d.family == f; });
}

std::vector<CMatrix> prep_states(const std::vector<EulerAngles> &angles, std::vector<CMatrix> &frames) {
    std::vector<CMatrix> states;
    frames.clear();
    for (const auto &a : angles) {
        Unitary u = euler_unitary(a);
        states.push_back(DensityMatrix::from_pure(basis_state(2, 0).apply(u)).matrix());
        frames.push_back(u.adjoint().matrix());
    }
    return states;
}

struct CellOutcome {
    double fidelity;
    std::vector<double> probabilities;
};

CellOutcome measure_cell(const CMatrix &rho, const ReadoutModel &readout, int shots,
                         std::initializer_list<std::uint64_t> key) {
    DensityMatrix dm(rho);
    if (shots == 0) {
        auto r = measure_exact(dm, readout);
        return {r.fidelity, r.probabilities};
    }
    RandomStream rng(key);
    auto r = measure_shots(dm, readout, shots, rng);
    std::vector<double> p;
    for (auto c : r.counts) p.push_back(static_cast<double>(c) / shots);
    return {r.fidelity, p};
}

}  // namespace

std::string_view experiment_kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::TYPE1_SWEEP:
            return "TYPE1_SWEEP";
        case ExperimentKind::TYPE2_ENSEMBLE:
            return "TYPE2_ENSEMBLE";
        case ExperimentKind::PULSE_NUMBER_SWEEP:
            return "PULSE_NUMBER_SWEEP";
        case ExperimentKind::PULSE_INTERVAL_SWEEP:
            return "PULSE_INTERVAL_SWEEP";
        case ExperimentKind::BELL:
            return "BELL";
        case ExperimentKind::DEPHASING_VS_SE:
            return "DEPHASING_VS_SE";
    }
    return "?";
}

ExperimentKind parse_experiment_kind(std::string_view s) {
    for (auto k : {ExperimentKind::TYPE1_SWEEP, ExperimentKind::TYPE2_ENSEMBLE, ExperimentKind::PULSE_NUMBER_SWEEP,
                   ExperimentKind::PULSE_INTERVAL_SWEEP, ExperimentKind::BELL, ExperimentKind::DEPHASING_VS_SE}) {
        if (experiment_kind_name(k) == s) return k;
    }
    throw InvalidInput("unknown experiment kind '" + std::string(s) + "'");
}

void ExperimentSpec::validate() const {
    if (schema_version != kSchemaVersion) {
        throw SchemaError("/schema_version", "unsupported schema version " + std::to_string(schema_version));
    }
    if (sequences.empty()) {
        throw SchemaError("/sequences", "at least one sequence is required");
    }
    for (std::size_t i = 0; i < sequences.size(); ++i) {
        try {
            SequenceDef d = sequences[i];
            d.repetitions = 1;
            d.validate();
        } catch (const InvalidInput &e) {
            throw SchemaError("/sequences/" + std::to_string(i), e.what());
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (sequence_label(sequences[j]) == sequence_label(sequences[i])) {
                throw SchemaError("/sequences/" + std::to_string(i), "duplicate sequence");
            }
        }
    }
    if (!has_family(sequences, SequenceFamily::FREE)) {
        throw SchemaError("/sequences", "FREE must be included as the baseline");
    }
    if (kind == ExperimentKind::DEPHASING_VS_SE) {
        for (auto f : {SequenceFamily::XI, SequenceFamily::YI, SequenceFamily::ZI, SequenceFamily::XY4}) {
            if (!has_family(sequences, f)) {
                throw SchemaError("/sequences", "DEPHASING_VS_SE compares FREE, XI, YI, ZI and XY4");
            }
        }
    }
    if (n_values.empty()) {
        throw SchemaError("/n_values", "at least one N is required");
    }
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 0 || (i > 0 && n_values[i] <= n_values[i - 1])) {
            throw SchemaError("/n_values/" + std::to_string(i), "N values must be non-negative and strictly increasing");
        }
    }
    if (tau_multipliers.empty()) {
        throw SchemaError("/tau_multipliers", "at least one tau multiplier is required");
    }
    for (std::size_t i = 0; i < tau_multipliers.size(); ++i) {
        if (tau_multipliers[i] < 1) {
            throw SchemaError("/tau_multipliers/" + std::to_string(i), "tau multipliers are integers >= 1");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (tau_multipliers[j] == tau_multipliers[i]) {
                throw SchemaError("/tau_multipliers/" + std::to_string(i), "duplicate tau multiplier");
            }
        }
    }
    if (kind == ExperimentKind::PULSE_INTERVAL_SWEEP && tau_multipliers.size() < 2) {
        throw SchemaError("/tau_multipliers", "a pulse-interval sweep needs two or more tau values");
    }
    try {
        (void)ddlab::timing_profile(timing_profile);
    } catch (const InvalidInput &e) {
        throw SchemaError("/timing_profile", e.what());
    }
    try {
        resolved_noise().validate();
    } catch (const InvalidInput &e) {
        throw SchemaError("/noise", e.what());
    }
    if (shots < 0) {
        throw SchemaError("/shots", "shots must be >= 0 (0 means exact probabilities)");
    }
    if (kind == ExperimentKind::BELL) {
        if (qubit_pairs.empty()) {
            throw SchemaError("/qubit_pairs", "BELL experiments need qubit pairs");
        }
        if (bell_states.empty()) {
            throw SchemaError("/bell_states", "at least one Bell state is required");
        }
        for (std::size_t i = 0; i < qubit_pairs.size(); ++i) {
            if (qubit_pairs[i][0] == qubit_pairs[i][1]) {
                throw SchemaError("/qubit_pairs/" + std::to_string(i), "a pair needs two distinct qubits");
            }
        }
        if (resolved_noise().bath) {
            throw SchemaError("/noise", "spin baths are single-qubit only");
        }
    } else {
        if (qubits.empty()) {
            throw SchemaError("/qubits", "at least one qubit is required");
        }
        for (std::size_t i = 0; i < qubits.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (qubits[i] == qubits[j]) throw SchemaError("/qubits/" + std::to_string(i), "duplicate qubit");
            }
        }
    }
    auto noise_cfg = resolved_noise();
    auto check_qubit = [&](int q, const std::string &ptr) {
        try {
            if (noise_cfg.lindblad || noise_cfg.gate_depolarizing || (noise_cfg.readout && !noise_cfg.readout_flips)) {
                (void)noise_cfg.params_for(q);
            }
        } catch (const InvalidInput &e) {
            throw SchemaError(ptr, e.what());
        }
    };
    for (std::size_t i = 0; i < qubits.size(); ++i) check_qubit(qubits[i], "/qubits/" + std::to_string(i));
    for (std::size_t i = 0; i < qubit_pairs.size(); ++i) {
        check_qubit(qubit_pairs[i][0], "/qubit_pairs/" + std::to_string(i) + "/0");
        check_qubit(qubit_pairs[i][1], "/qubit_pairs/" + std::to_string(i) + "/1");
    }
}

NoiseConfiguration ExperimentSpec::resolved_noise() const {
    if (noise) return *noise;
    return ddlab::noise_preset(noise_preset);
}

std::vector<EulerAngles> type1_states() {
    std::vector<EulerAngles> out;
    for (int k = 0; k < 16; ++k) out.push_back(EulerAngles::make(k * std::numbers::pi / 15, 0, 0));
    return out;
}

std::vector<EulerAngles> type2_states(std::uint64_t seed) {
    std::vector<EulerAngles> out;
    RandomStream rng{seed, stream_tag::kHaar};
    for (int k = 0; k < 30; ++k) out.push_back(angles_for_state(haar_random_state(rng)));
    for (const auto &a : pauli_eigenstate_angles()) out.push_back(a);
    return out;
}

std::string sequence_label(const SequenceDef &def) {
    std::string name(family_name(def.family));
    if (is_ga(def.family) && !(def.p1 == Pauli::X && def.p2 == Pauli::Z)) {
        name += "(";
        name += pauli_char(def.p1);
        name += pauli_char(def.p2);
        name += ")";
    }
    return name;
}

SequenceDef parse_sequence_label(std::string_view s) {
    SequenceDef d;
    auto open = s.find('(');
    if (open == std::string_view::npos) {
        d.family = parse_family(s);
        return d;
    }
    if (s.size() != open + 4 || s.back() != ')') {
        throw InvalidInput("malformed sequence label '" + std::string(s) + "'");
    }
    d.family = parse_family(s.substr(0, open));
    d.p1 = parse_pauli(s.substr(open + 1, 1));
    d.p2 = parse_pauli(s.substr(open + 2, 1));
    d.validate();
    return d;
}

std::vector<PulseLabel> sequence_prefix(const SequenceDef &def, int n_labels) {
    if (n_labels < 0) {
        throw InvalidInput("sequence_prefix: negative label count");
    }
    SequenceDef d = def;
    int per = labels_per_repetition(def.family);
    d.repetitions = std::max(1, (n_labels + per - 1) / per);
    auto labels = build_sequence(d);
    labels.resize(static_cast<std::size_t>(n_labels));
    return labels;
}

ResultSet run_experiment(const ExperimentSpec &spec) {
    spec.validate();
    ResultSet rs;
    rs.spec = spec;
    NoiseConfiguration noise = spec.resolved_noise();
    DeviceTimingProfile profile = timing_profile(spec.timing_profile);
    int n_max = spec.n_values.back();

    // Register and initial-state list for each group of simulated qubits.
    struct Group {
        std::string name;
        std::vector<int> qubits;
        std::uint64_t key;
    };
    std::vector<Group> groups;
    if (spec.kind == ExperimentKind::BELL) {
        for (const auto &p : spec.qubit_pairs) {
            groups.push_back({std::to_string(p[0]) + "-" + std::to_string(p[1]), {p[0], p[1]},
                              static_cast<std::uint64_t>(p[0]) * 1000003ULL + static_cast<std::uint64_t>(p[1])});
        }
    } else {
        for (int q : spec.qubits) groups.push_back({std::to_string(q), {q}, static_cast<std::uint64_t>(q)});
    }

    std::vector<std::string> state_ids;
    std::vector<CMatrix> initial;
    std::vector<CMatrix> frames;
    if (spec.kind == ExperimentKind::BELL) {
        for (auto b : spec.bell_states) {
            state_ids.emplace_back(bell_kind_name(b));
            initial.push_back(DensityMatrix::from_pure(bell_state(b)).matrix());
        }
    } else {
        auto angles = spec.kind == ExperimentKind::TYPE1_SWEEP ? type1_states() : type2_states(spec.seed);
        initial = prep_states(angles, frames);
        for (std::size_t s = 0; s < angles.size(); ++s) state_ids.push_back(std::to_string(s));
    }

    for (std::size_t si = 0; si < spec.sequences.size(); ++si) {
        const auto &seq = spec.sequences[si];
        std::string label = sequence_label(seq);
        auto labels = sequence_prefix(seq, n_max);
        for (const auto &g : groups) {
            ReadoutModel readout = noise.readout_for(g.qubits);
            for (int tau : spec.tau_multipliers) {
                EvolutionRequest req;
                req.device_qubits = g.qubits;
                req.initial_states = initial;
                req.measurement_frames = frames;
                req.schedule = compile_schedule(labels, profile, tau);
                req.checkpoints = spec.n_values;
                req.noise = noise;
                req.seed = spec.seed;
                auto res = evolve(req);
                for (std::size_t s = 0; s < state_ids.size(); ++s) {
                    for (std::size_t c = 0; c < spec.n_values.size(); ++c) {
                        auto cell = measure_cell(res.states[c][s], readout, spec.shots,
                                                 {spec.seed, stream_tag::kShots, si, g.key,
                                                  static_cast<std::uint64_t>(tau), static_cast<std::uint64_t>(s),
                                                  static_cast<std::uint64_t>(spec.n_values[c])});
                        ResultRecord r;
                        r.sequence = label;
                        r.qubits = g.name;
                        r.state = state_ids[s];
                        r.n = spec.n_values[c];
                        r.tau = tau;
                        r.shots = spec.shots;
                        r.fidelity = cell.fidelity;
                        r.probabilities = cell.probabilities;
                        rs.records.push_back(std::move(r));
                    }
                }
            }
        }
    }
    // Canonical order: sequence (spec order), qubit group, state, τ, N.
    std::map<std::string, std::size_t> seq_rank, group_rank, state_rank;
    for (std::size_t i = 0; i < spec.sequences.size(); ++i) seq_rank[sequence_label(spec.sequences[i])] = i;
    for (std::size_t i = 0; i < groups.size(); ++i) group_rank[groups[i].name] = i;
    for (std::size_t i = 0; i < state_ids.size(); ++i) state_rank[state_ids[i]] = i;
    std::stable_sort(rs.records.begin(), rs.records.end(), [&](const ResultRecord &a, const ResultRecord &b) {
        auto ka = std::make_tuple(seq_rank[a.sequence], group_rank[a.qubits], state_rank[a.state], a.tau, a.n);
        auto kb = std::make_tuple(seq_rank[b.sequence], group_rank[b.qubits], state_rank[b.state], b.tau, b.n);
        return ka < kb;
    });
    return rs;
}

double free_decay_constant(const CalibrationSetup &setup, double sigma) {
    NoiseConfiguration noise = setup.base;
    noise.classical.kind = ClassicalNoiseKind::STATIC_GAUSSIAN;
    noise.classical.amplitude = sigma;
    noise.classical.realizations = setup.realizations;
    DeviceTimingProfile profile = timing_profile(setup.timing_profile);
    int qubit = noise.qubit_params.empty() ? 0 : std::max(0, noise.qubit_params.front().qubit_index);

    std::vector<CMatrix> frames;
    auto initial = prep_states(type2_states(setup.seed), frames);
    SequenceDef free_def;
    EvolutionRequest req;
    req.device_qubits = {qubit};
    req.initial_states = initial;
    req.measurement_frames = frames;
    req.schedule = compile_schedule(sequence_prefix(free_def, setup.n_values.back()), profile, 1);
    req.checkpoints = setup.n_values;
    req.noise = noise;
    req.seed = setup.seed;
    auto res = evolve(req);
    ReadoutModel readout = noise.readout_for({qubit});
    FidelityCurve curve;
    for (std::size_t c = 0; c < setup.n_values.size(); ++c) {
        double sum = 0;
        for (const auto &rho : res.states[c]) sum += measure_exact(DensityMatrix(rho), readout).fidelity;
        curve.points.push_back({static_cast<double>(setup.n_values[c]), sum / static_cast<double>(initial.size()), 0,
                                static_cast<int>(initial.size())});
    }
    return fit_decay(curve).lambda;
}

double calibrate_static_sigma(const CalibrationSetup &setup, double target_lambda, double lo, double hi,
                              int iterations) {
    if (!(lo > 0) || !(hi > lo)) {
        throw InvalidInput("calibrate_static_sigma: need 0 < lo < hi");
    }
    double f_lo = free_decay_constant(setup, lo) - target_lambda;
    double f_hi = free_decay_constant(setup, hi) - target_lambda;
    // Stronger dephasing shortens the decay constant.
    if (!(f_lo > 0 && f_hi < 0)) {
        throw InvalidInput("calibrate_static_sigma: target decay constant is not bracketed");
    }
    for (int it = 0; it < iterations; ++it) {
        double mid = std::sqrt(lo * hi);
        double f_mid = free_decay_constant(setup, mid) - target_lambda;
        if (f_mid > 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::sqrt(lo * hi);
}

BoundGrid simulate_bound_grid(const SpinBathModel &bath, const SequenceDef &seq, const DeviceTimingProfile &profile,
                              const std::vector<int> &taus, const std::vector<int> &n_values,
                              const std::vector<EulerAngles> &initial_states) {
    if (taus.empty() || n_values.empty() || initial_states.empty()) {
        throw InvalidInput("simulate_bound_grid: empty grid");
    }
    NoiseConfiguration coupled;
    coupled.name = "bound_coupled";
    coupled.bath = bath;
    NoiseConfiguration uncoupled = coupled;
    uncoupled.name = "bound_uncoupled";
    for (auto &t : uncoupled.bath->coupling) t = SpinBathModel::Tensor{};
    for (auto &g : uncoupled.bath->exchange) g = 0;

    std::vector<CMatrix> frames;
    auto initial = prep_states(initial_states, frames);
    auto labels = sequence_prefix(seq, n_values.back());

    BoundGrid grid;
    grid.taus = taus;
    grid.n_values = n_values;
    grid.fidelity.assign(n_values.size(), std::vector<double>(taus.size(), 1.0));
    for (std::size_t ti = 0; ti < taus.size(); ++ti) {
        EvolutionRequest req;
        req.device_qubits = {0};
        req.initial_states = initial;
        req.schedule = compile_schedule(labels, profile, taus[ti]);
        req.checkpoints = n_values;
        req.noise = coupled;
        auto with = evolve(req);
        req.noise = uncoupled;
        auto without = evolve(req);
        for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
            double worst = 1.0;
            for (std::size_t s = 0; s < initial.size(); ++s) {
                double f = uhlmann_fidelity(with.states[ni][s], without.states[ni][s]);
                worst = std::min(worst, std::min(f, 1.0));
            }
            grid.fidelity[ni][ti] = worst;
        }
    }
    return grid;
}

}  // namespace ddlab
