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

#include "ddlab/io.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "ddlab/bootstrap.h"
#include "ddlab/csv.h"
#include "ddlab/device_tables.h"
#include "ddlab/error.h"

#ifndef DDLAB_VERSION
#define DDLAB_VERSION "0.0.0"
#endif

namespace ddlab {

using Json = nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string child(const std::string &ptr, std::string_view key) {
    std::string out = ptr + "/";
    for (char ch : key) {
        if (ch == '~') out += "~0";
        else if (ch == '/') out += "~1";
        else out += ch;
    }
    return out;
}

std::string child(const std::string &ptr, std::size_t index) {
    return ptr + "/" + std::to_string(index);
}

// Strict object reader: every key must be consumed or explicitly allowed.
class ObjectReader {
   public:
    ObjectReader(const Json &j, std::string ptr) : j_(j), ptr_(std::move(ptr)) {
        if (!j_.is_object()) throw SchemaError(ptr_.empty() ? "/" : ptr_, "expected an object");
    }

    bool has(std::string_view key) const {
        return j_.contains(std::string(key));
    }
    const Json &at(std::string_view key) {
        seen_.insert(std::string(key));
        return j_.at(std::string(key));
    }
    std::string pointer(std::string_view key) const {
        return child(ptr_, key);
    }

    template <class T>
    T get(std::string_view key, T fallback) {
        if (!has(key)) return fallback;
        return convert<T>(at(key), pointer(key));
    }
    template <class T>
    T require(std::string_view key) {
        if (!has(key)) throw SchemaError(pointer(key), "required field is missing");
        return convert<T>(at(key), pointer(key));
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) throw SchemaError(child(ptr_, it.key()), "unknown field");
        }
    }

    template <class T>
    static T convert(const Json &v, const std::string &ptr) {
        if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) throw SchemaError(ptr, "expected a boolean");
            return v.get<bool>();
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string()) throw SchemaError(ptr, "expected a string");
            return v.get<std::string>();
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer()) throw SchemaError(ptr, "expected an integer");
            if constexpr (std::is_unsigned_v<T>) {
                if (v.is_number_unsigned()) return v.get<T>();
                if (v.get<long long>() < 0) throw SchemaError(ptr, "expected a non-negative integer");
            } else {
                if (v.is_number_unsigned() &&
                    v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<T>::max())) {
                    throw SchemaError(ptr, "integer out of range");
                }
                long long x = v.get<long long>();
                if (x < std::numeric_limits<T>::min() || x > std::numeric_limits<T>::max()) {
                    throw SchemaError(ptr, "integer out of range");
                }
            }
            return static_cast<T>(v.get<long long>());
        } else {
            static_assert(std::is_floating_point_v<T>);
            if (v.is_number()) return v.get<T>();
            if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "Infinity")) return kInf;
            throw SchemaError(ptr, "expected a number");
        }
    }

   private:
    const Json &j_;
    std::string ptr_;
    std::set<std::string> seen_;
};

template <class T>
std::vector<T> read_array(const Json &v, const std::string &ptr) {
    if (!v.is_array()) throw SchemaError(ptr, "expected an array");
    std::vector<T> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(ObjectReader::convert<T>(v[i], child(ptr, i)));
    return out;
}

Json number(double x) {
    if (std::isinf(x)) return x > 0 ? Json("inf") : Json("-inf");
    if (std::isnan(x)) return Json(nullptr);
    return Json(x);
}

Json parse_document(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error &e) {
        throw SchemaError("/", std::string("malformed JSON: ") + e.what());
    }
}

// Wraps domain parse failures (bad enum names and the like) with a pointer.
template <class F>
auto at_pointer(const std::string &ptr, F &&f) {
    try {
        return f();
    } catch (const SchemaError &) {
        throw;
    } catch (const std::exception &e) {
        throw SchemaError(ptr, e.what());
    }
}

// ---- sequences ----

Json sequence_json(const SequenceDef &d) {
    Json j;
    j["family"] = std::string(family_name(d.family));
    j["repetitions"] = d.repetitions;
    j["p1"] = std::string(1, pauli_char(d.p1));
    j["p2"] = std::string(1, pauli_char(d.p2));
    return j;
}

SequenceDef sequence_from(const Json &v, const std::string &ptr) {
    if (v.is_string()) {
        return at_pointer(ptr, [&] { return parse_sequence_label(v.get<std::string>()); });
    }
    ObjectReader r(v, ptr);
    SequenceDef d;
    auto fam = r.require<std::string>("family");
    d.family = at_pointer(r.pointer("family"), [&] { return parse_family(fam); });
    d.repetitions = r.get<int>("repetitions", 1);
    auto p1 = r.get<std::string>("p1", std::string(1, pauli_char(d.p1)));
    auto p2 = r.get<std::string>("p2", std::string(1, pauli_char(d.p2)));
    d.p1 = at_pointer(r.pointer("p1"), [&] { return parse_pauli(p1); });
    d.p2 = at_pointer(r.pointer("p2"), [&] { return parse_pauli(p2); });
    r.finish();
    return d;
}

// ---- noise ----

Json bath_json(const SpinBathModel &b) {
    Json j;
    j["system_detuning"] = b.system_detuning;
    j["bath_splittings"] = b.bath_splittings;
    Json c = Json::array();
    for (const auto &t : b.coupling) {
        Json m = Json::array();
        for (const auto &row : t) m.push_back(Json(std::vector<double>(row.begin(), row.end())));
        c.push_back(m);
    }
    j["coupling"] = c;
    j["exchange"] = b.exchange;
    return j;
}

SpinBathModel bath_from(const Json &v, const std::string &ptr) {
    ObjectReader r(v, ptr);
    SpinBathModel b;
    b.system_detuning = r.get<double>("system_detuning", 0.0);
    if (r.has("bath_splittings")) b.bath_splittings = read_array<double>(r.at("bath_splittings"), r.pointer("bath_splittings"));
    if (r.has("exchange")) b.exchange = read_array<double>(r.at("exchange"), r.pointer("exchange"));
    if (r.has("coupling")) {
        const Json &c = r.at("coupling");
        std::string cp = r.pointer("coupling");
        if (!c.is_array()) throw SchemaError(cp, "expected an array of 3x3 tensors");
        for (std::size_t k = 0; k < c.size(); ++k) {
            std::string kp = child(cp, k);
            if (!c[k].is_array() || c[k].size() != 3) throw SchemaError(kp, "expected a 3x3 tensor");
            SpinBathModel::Tensor t{};
            for (std::size_t a = 0; a < 3; ++a) {
                auto row = read_array<double>(c[k][a], child(kp, a));
                if (row.size() != 3) throw SchemaError(child(kp, a), "expected 3 entries");
                std::copy(row.begin(), row.end(), t[a].begin());
            }
            b.coupling.push_back(t);
        }
    }
    if (b.exchange.empty()) b.exchange.assign(b.bath_splittings.size(), 0.0);
    r.finish();
    at_pointer(ptr, [&] {
        b.validate();
        return 0;
    });
    return b;
}

Json noise_json(const NoiseConfiguration &n) {
    Json j;
    j["name"] = n.name;
    Json rows = Json::array();
    for (const auto &q : n.qubit_params) {
        Json row;
        row["qubit_index"] = q.qubit_index;
        row["t1_us"] = q.t1_us;
        row["t2_us"] = q.t2_us;
        row["gate_error"] = q.gate_error;
        row["readout_error"] = q.readout_error;
        rows.push_back(row);
    }
    j["qubit_params"] = rows;
    j["lindblad"] = n.lindblad;
    j["gate_depolarizing"] = n.gate_depolarizing;
    j["readout"] = n.readout;
    j["readout_flips"] = n.readout_flips ? Json({(*n.readout_flips)[0], (*n.readout_flips)[1]}) : Json(nullptr);
    Json p;
    p["mode"] = std::string(pulse_mode_name(n.pulse.mode));
    p["over_rotation_fraction"] = n.pulse.over_rotation_fraction;
    p["axis_tilt_rad"] = n.pulse.axis_tilt_rad;
    p["depolarizing_prob_per_pulse"] = n.pulse.depolarizing_prob_per_pulse;
    j["pulse"] = p;
    Json c;
    c["kind"] = std::string(classical_kind_name(n.classical.kind));
    c["amplitude"] = n.classical.amplitude;
    c["flip_rate_per_ns"] = n.classical.flip_rate_per_ns;
    c["correlation_time_ns"] = n.classical.correlation_time_ns;
    c["realizations"] = n.classical.realizations;
    j["classical"] = c;
    j["bath"] = n.bath ? bath_json(*n.bath) : Json(nullptr);
    return j;
}

NoiseConfiguration noise_from(const Json &v, const std::string &ptr) {
    ObjectReader r(v, ptr);
    NoiseConfiguration n;
    // A preset name seeds the configuration; remaining fields override it.
    if (r.has("preset")) {
        auto name = r.require<std::string>("preset");
        n = at_pointer(r.pointer("preset"), [&] { return noise_preset(name); });
    }
    n.name = r.get<std::string>("name", n.name);
    if (r.has("qubit_params")) {
        const Json &rows = r.at("qubit_params");
        std::string rp = r.pointer("qubit_params");
        if (!rows.is_array()) throw SchemaError(rp, "expected an array");
        n.qubit_params.clear();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            ObjectReader q(rows[i], child(rp, i));
            QubitNoiseParams p;
            p.qubit_index = q.get<int>("qubit_index", static_cast<int>(i));
            p.t1_us = q.require<double>("t1_us");
            p.t2_us = q.require<double>("t2_us");
            p.gate_error = q.get<double>("gate_error", 0.0);
            p.readout_error = q.get<double>("readout_error", 0.0);
            q.finish();
            n.qubit_params.push_back(p);
        }
    }
    n.lindblad = r.get<bool>("lindblad", n.lindblad);
    n.gate_depolarizing = r.get<bool>("gate_depolarizing", n.gate_depolarizing);
    n.readout = r.get<bool>("readout", n.readout);
    if (r.has("readout_flips")) {
        const Json &f = r.at("readout_flips");
        if (f.is_null()) {
            n.readout_flips.reset();
        } else {
            auto vals = read_array<double>(f, r.pointer("readout_flips"));
            if (vals.size() != 2) throw SchemaError(r.pointer("readout_flips"), "expected [p1_given_0, p0_given_1]");
            n.readout_flips = std::array<double, 2>{vals[0], vals[1]};
        }
    }
    if (r.has("pulse")) {
        ObjectReader p(r.at("pulse"), r.pointer("pulse"));
        auto mode = p.get<std::string>("mode", std::string(pulse_mode_name(n.pulse.mode)));
        n.pulse.mode = at_pointer(p.pointer("mode"), [&] { return parse_pulse_mode(mode); });
        n.pulse.over_rotation_fraction = p.get<double>("over_rotation_fraction", n.pulse.over_rotation_fraction);
        n.pulse.axis_tilt_rad = p.get<double>("axis_tilt_rad", n.pulse.axis_tilt_rad);
        n.pulse.depolarizing_prob_per_pulse =
            p.get<double>("depolarizing_prob_per_pulse", n.pulse.depolarizing_prob_per_pulse);
        p.finish();
    }
    if (r.has("classical")) {
        ObjectReader c(r.at("classical"), r.pointer("classical"));
        auto kind = c.get<std::string>("kind", std::string(classical_kind_name(n.classical.kind)));
        n.classical.kind = at_pointer(c.pointer("kind"), [&] { return parse_classical_kind(kind); });
        n.classical.amplitude = c.get<double>("amplitude", n.classical.amplitude);
        n.classical.flip_rate_per_ns = c.get<double>("flip_rate_per_ns", n.classical.flip_rate_per_ns);
        n.classical.correlation_time_ns = c.get<double>("correlation_time_ns", n.classical.correlation_time_ns);
        n.classical.realizations = c.get<int>("realizations", n.classical.realizations);
        c.finish();
    }
    if (r.has("bath")) {
        const Json &b = r.at("bath");
        if (b.is_null()) n.bath.reset();
        else n.bath = bath_from(b, r.pointer("bath"));
    }
    r.finish();
    at_pointer(ptr.empty() ? "/" : ptr, [&] {
        n.validate();
        return 0;
    });
    return n;
}

// ---- experiment spec ----

Json spec_json(const ExperimentSpec &s) {
    Json j;
    j["schema_version"] = s.schema_version;
    j["kind"] = std::string(experiment_kind_name(s.kind));
    Json seqs = Json::array();
    for (const auto &d : s.sequences) seqs.push_back(sequence_json(d));
    j["sequences"] = seqs;
    j["n_values"] = s.n_values;
    j["tau_multipliers"] = s.tau_multipliers;
    j["timing_profile"] = s.timing_profile;
    j["noise_preset"] = s.noise_preset;
    j["noise"] = s.noise ? noise_json(*s.noise) : Json(nullptr);
    j["qubits"] = s.qubits;
    Json pairs = Json::array();
    for (auto p : s.qubit_pairs) pairs.push_back(Json({p[0], p[1]}));
    j["qubit_pairs"] = pairs;
    Json bells = Json::array();
    for (auto b : s.bell_states) bells.push_back(std::string(bell_kind_name(b)));
    j["bell_states"] = bells;
    j["shots"] = s.shots;
    j["seed"] = s.seed;
    return j;
}

ExperimentSpec spec_from(const Json &v) {
    ObjectReader r(v, "");
    ExperimentSpec s;
    s.schema_version = r.require<int>("schema_version");
    if (s.schema_version != ExperimentSpec::kSchemaVersion) {
        throw SchemaError("/schema_version", "unsupported schema version " + std::to_string(s.schema_version));
    }
    auto kind = r.require<std::string>("kind");
    s.kind = at_pointer("/kind", [&] { return parse_experiment_kind(kind); });
    {
        const Json &seqs = r.at("sequences");
        if (!seqs.is_array()) throw SchemaError("/sequences", "expected an array");
        for (std::size_t i = 0; i < seqs.size(); ++i) s.sequences.push_back(sequence_from(seqs[i], child("/sequences", i)));
    }
    if (!r.has("n_values")) throw SchemaError("/n_values", "required field is missing");
    s.n_values = read_array<int>(r.at("n_values"), "/n_values");
    if (r.has("tau_multipliers")) s.tau_multipliers = read_array<int>(r.at("tau_multipliers"), "/tau_multipliers");
    s.timing_profile = r.get<std::string>("timing_profile", s.timing_profile);
    s.noise_preset = r.get<std::string>("noise_preset", s.noise_preset);
    if (r.has("noise") && !r.at("noise").is_null()) {
        const Json &n = r.at("noise");
        if (n.is_string()) {
            s.noise_preset = n.get<std::string>();
        } else {
            s.noise = noise_from(n, "/noise");
        }
    }
    if (r.has("qubits")) s.qubits = read_array<int>(r.at("qubits"), "/qubits");
    if (r.has("qubit_pairs")) {
        const Json &pairs = r.at("qubit_pairs");
        if (!pairs.is_array()) throw SchemaError("/qubit_pairs", "expected an array");
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            auto p = read_array<int>(pairs[i], child("/qubit_pairs", i));
            if (p.size() != 2) throw SchemaError(child("/qubit_pairs", i), "expected two qubit indices");
            s.qubit_pairs.push_back({p[0], p[1]});
        }
    }
    if (r.has("bell_states")) {
        auto names = read_array<std::string>(r.at("bell_states"), "/bell_states");
        s.bell_states.clear();
        for (std::size_t i = 0; i < names.size(); ++i) {
            s.bell_states.push_back(at_pointer(child("/bell_states", i), [&] { return parse_bell_kind(names[i]); }));
        }
    }
    s.shots = r.get<int>("shots", s.shots);
    s.seed = r.get<std::uint64_t>("seed", s.seed);
    r.finish();
    s.validate();
    return s;
}

// ---- analysis ----

Json fit_json(const FitResult &f) {
    Json j;
    j["variant"] = std::string(fit_variant_name(f.variant));
    j["model"] = f.model;
    j["F0"] = number(f.F0);
    j["F_Nmax"] = number(f.F_Nmax);
    j["N_max"] = number(f.n_max);
    j["lambda"] = number(f.lambda);
    j["alpha"] = number(f.alpha);
    j["gamma"] = number(f.gamma);
    j["c"] = number(f.c);
    j["c0"] = number(f.c0);
    j["residual_rms"] = number(f.residual_rms);
    Json cov = Json::array();
    for (const auto &row : f.covariance) {
        Json jr = Json::array();
        for (double x : row) jr.push_back(number(x));
        cov.push_back(jr);
    }
    j["covariance"] = cov;
    j["covariance_parameters"] = Json({"lambda", "inverse_alpha", "gamma"});
    Json flags;
    flags["alpha_infinite"] = f.alpha_infinite;
    flags["gamma_zero"] = f.gamma_zero;
    flags["lambda_infinite"] = f.lambda_infinite;
    j["flags"] = flags;
    return j;
}

std::string dump(const Json &j) {
    return j.dump(2) + "\n";
}

}  // namespace

std::string suite_version() {
    return DDLAB_VERSION;
}

std::string experiment_spec_to_json(const ExperimentSpec &spec) {
    return dump(spec_json(spec));
}

ExperimentSpec experiment_spec_from_json(std::string_view text) {
    return spec_from(parse_document(text));
}

std::string noise_to_json(const NoiseConfiguration &noise) {
    return dump(noise_json(noise));
}

NoiseConfiguration noise_from_json(std::string_view text) {
    return noise_from(parse_document(text), "");
}

std::string fit_result_to_json(const FitResult &fit) {
    return dump(fit_json(fit));
}

FitResult fit_result_from_json(std::string_view text) {
    Json j = parse_document(text);
    ObjectReader r(j, "");
    FitResult f;
    auto variant = r.get<std::string>("variant", std::string(fit_variant_name(f.variant)));
    f.variant = at_pointer("/variant", [&] { return parse_fit_variant(variant); });
    f.model = r.get<std::string>("model", f.model);
    f.F0 = r.require<double>("F0");
    f.F_Nmax = r.require<double>("F_Nmax");
    f.n_max = r.require<double>("N_max");
    f.lambda = r.require<double>("lambda");
    f.alpha = r.require<double>("alpha");
    f.gamma = r.require<double>("gamma");
    f.c = r.get<double>("c", 0.0);
    f.c0 = r.get<double>("c0", 0.0);
    f.residual_rms = r.get<double>("residual_rms", 0.0);
    if (r.has("covariance")) {
        const Json &cov = r.at("covariance");
        if (!cov.is_array() || cov.size() != 3) throw SchemaError("/covariance", "expected a 3x3 matrix");
        for (std::size_t a = 0; a < 3; ++a) {
            auto row = read_array<double>(cov[a], child("/covariance", a));
            if (row.size() != 3) throw SchemaError(child("/covariance", a), "expected 3 entries");
            for (std::size_t b = 0; b < 3; ++b) f.covariance[a][b] = row[b];
        }
    }
    if (r.has("covariance_parameters")) r.at("covariance_parameters");
    if (r.has("flags")) {
        ObjectReader fl(r.at("flags"), "/flags");
        f.alpha_infinite = fl.get<bool>("alpha_infinite", std::isinf(f.alpha));
        f.gamma_zero = fl.get<bool>("gamma_zero", f.gamma == 0);
        f.lambda_infinite = fl.get<bool>("lambda_infinite", std::isinf(f.lambda));
        fl.finish();
    } else {
        f.alpha_infinite = std::isinf(f.alpha);
        f.gamma_zero = f.gamma == 0;
        f.lambda_infinite = std::isinf(f.lambda);
    }
    r.finish();
    return f;
}

std::string bound_analysis_to_json(const BoundAnalysis &a) {
    Json j;
    j["measure"] = std::string(bound_measure_name(a.measure));
    Json rows = Json::array();
    for (const auto &row : a.rows) {
        Json jr;
        jr["N"] = row.n;
        jr["slope_a"] = number(row.slope_a);
        jr["intercept"] = number(row.intercept);
        jr["slope_se"] = number(row.slope_se);
        jr["points_used"] = row.points_used;
        rows.push_back(jr);
    }
    j["rows"] = rows;
    if (a.intercept_vs_log_n) {
        Json b;
        // intercept(N) = b log N + c_fit
        b["b"] = a.intercept_vs_log_n->slope;
        b["c_fit"] = a.intercept_vs_log_n->intercept;
        b["b_se"] = a.intercept_vs_log_n->slope_se;
        b["c_fit_se"] = a.intercept_vs_log_n->intercept_se;
        j["intercept_vs_log_N"] = b;
    } else {
        j["intercept_vs_log_N"] = nullptr;
    }
    j["c"] = number(a.c);
    j["excluded_unit_fidelity"] = a.excluded_unit_fidelity;
    j["grid_points"] = a.grid_points;
    j["worst_bound_ratio"] = number(a.worst_bound_ratio);
    j["worst_bound_ratio_sqrt"] = number(a.worst_bound_ratio_sqrt);
    j["inequality_holds"] = a.inequality_holds;
    return dump(j);
}

std::string intersection_to_json(const IntersectionResult &r) {
    Json j;
    j["found"] = r.found;
    j["t_int"] = r.found ? number(r.t_int) : Json(nullptr);
    j["two_sigma"] = r.found ? number(r.two_sigma) : Json(nullptr);
    j["resamples_with_crossing"] = r.resamples_with_crossing;
    j["diagnostic"] = r.diagnostic;
    return dump(j);
}

// ---- records ----

namespace {
const char *const kRecordHeader = "sequence,qubits,state,N,tau,shots,fidelity,p0,p1,p2,p3";
}

std::string records_to_csv(const std::vector<ResultRecord> &records) {
    std::string out = std::string(kRecordHeader) + "\n";
    for (const auto &r : records) {
        if (r.probabilities.size() > 4) {
            throw InvalidInput("records_to_csv: at most two qubits per record");
        }
        out += csv_escape(r.sequence) + "," + csv_escape(r.qubits) + "," + csv_escape(r.state) + "," +
               std::to_string(r.n) + "," + std::to_string(r.tau) + "," + std::to_string(r.shots) + "," +
               format_double(r.fidelity);
        for (std::size_t i = 0; i < 4; ++i) {
            out += ",";
            if (i < r.probabilities.size()) out += format_double(r.probabilities[i]);
        }
        out += "\n";
    }
    return out;
}

std::vector<ResultRecord> records_from_csv(std::string_view text) {
    auto rows = parse_csv(text);
    if (rows.empty()) throw ParseError("records.csv: missing header");
    std::string header;
    for (std::size_t i = 0; i < rows[0].size(); ++i) header += (i ? "," : "") + rows[0][i];
    if (header != kRecordHeader) throw ParseError("records.csv: unexpected header '" + header + "'");
    std::vector<ResultRecord> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto &row = rows[i];
        std::string where = "records.csv row " + std::to_string(i + 1);
        if (row.size() != 11) throw ParseError(where + ": expected 11 fields");
        ResultRecord r;
        r.sequence = row[0];
        r.qubits = row[1];
        r.state = row[2];
        r.n = static_cast<int>(parse_int_field(row[3], where + " N"));
        r.tau = static_cast<int>(parse_int_field(row[4], where + " tau"));
        r.shots = static_cast<int>(parse_int_field(row[5], where + " shots"));
        r.fidelity = parse_double_field(row[6], where + " fidelity");
        for (std::size_t k = 7; k < 11; ++k) {
            if (row[k].empty()) break;
            r.probabilities.push_back(parse_double_field(row[k], where + " p" + std::to_string(k - 7)));
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw InvalidInput("write failed for " + path.string());
}

void write_result_set(const std::filesystem::path &dir, const ResultSet &rs, double wall_seconds) {
    std::filesystem::create_directories(dir);
    std::string records = records_to_csv(rs.records);
    Json manifest;
    manifest["suite_version"] = suite_version();
    manifest["seed"] = rs.spec.seed;
    manifest["spec"] = spec_json(rs.spec);
    manifest["resolved_noise"] = noise_json(rs.spec.resolved_noise());
    Json sums;
    sums["records.csv"] = "fnv1a64:" + hex64(fnv1a64(records));
    for (const auto &name : device_table_names()) {
        sums["devices/" + name + ".csv"] = "fnv1a64:" + hex64(fnv1a64(embedded_device_csv(name)));
    }
    manifest["fixture_checksums"] = sums;
    manifest["record_count"] = rs.records.size();
    write_text_file(dir / "records.csv", records);
    write_text_file(dir / "manifest.json", dump(manifest));

    Json info;
    info["wall_seconds"] = wall_seconds;
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    info["finished_utc"] = stamp;
    write_text_file(dir / "run_info.json", dump(info));
}

ResultSet read_result_set(const std::filesystem::path &dir) {
    ResultSet rs;
    Json manifest = parse_document(read_text_file(dir / "manifest.json"));
    if (!manifest.is_object() || !manifest.contains("spec")) {
        throw SchemaError("/spec", "manifest.json has no embedded spec");
    }
    try {
        rs.spec = spec_from(manifest["spec"]);
    } catch (const SchemaError &e) {
        throw SchemaError("/spec" + e.pointer(), e.what());
    }
    std::string records = read_text_file(dir / "records.csv");
    if (manifest.contains("fixture_checksums") && manifest["fixture_checksums"].contains("records.csv")) {
        std::string want = manifest["fixture_checksums"]["records.csv"].get<std::string>();
        if (want != "fnv1a64:" + hex64(fnv1a64(records))) {
            throw ParseError(dir.string() + ": records.csv does not match the manifest checksum");
        }
    }
    rs.records = records_from_csv(records);
    return rs;
}

std::filesystem::path default_output_dir() {
    if (const char *env = std::getenv("DDLAB_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
    return "ddlab-results";
}

// ---- aggregation and curves ----

std::vector<AggregateRow> aggregate_records(const std::vector<ResultRecord> &records, int resamples,
                                            std::uint64_t seed) {
    // Keyed by first appearance of the sequence, then τ, then N.
    std::vector<std::string> order;
    std::map<std::tuple<std::size_t, int, int>, std::vector<double>> groups;
    for (const auto &r : records) {
        auto it = std::find(order.begin(), order.end(), r.sequence);
        std::size_t si = static_cast<std::size_t>(it - order.begin());
        if (it == order.end()) order.push_back(r.sequence);
        groups[{si, r.tau, r.n}].push_back(r.fidelity);
    }
    std::vector<AggregateRow> out;
    std::uint64_t k = 0;
    for (const auto &[key, samples] : groups) {
        AggregateRow row;
        row.sequence = order[std::get<0>(key)];
        row.tau = std::get<1>(key);
        row.n = std::get<2>(key);
        row.samples = static_cast<int>(samples.size());
        if (resamples > 0) {
            auto b = bootstrap(samples, resamples, seed + 0x9e3779b97f4a7c15ULL * ++k);
            row.mean_fidelity = b.sample_mean;
            row.ci_halfwidth = b.halfwidth;
        } else {
            double sum = 0;
            for (double x : samples) sum += x;
            row.mean_fidelity = sum / static_cast<double>(samples.size());
        }
        out.push_back(row);
    }
    return out;
}

std::string report_csv(const std::vector<AggregateRow> &rows) {
    std::string out = "sequence,N,tau,mean_fidelity,ci_halfwidth\n";
    for (const auto &r : rows) {
        out += csv_escape(r.sequence) + "," + std::to_string(r.n) + "," + std::to_string(r.tau) + "," +
               format_double(r.mean_fidelity) + "," + format_double(r.ci_halfwidth) + "\n";
    }
    return out;
}

FidelityCurve curve_from_aggregates(const std::vector<AggregateRow> &rows, std::string_view sequence, int tau) {
    FidelityCurve c;
    for (const auto &r : rows) {
        if (r.sequence != sequence || r.tau != tau) continue;
        c.points.push_back({static_cast<double>(r.n), std::clamp(r.mean_fidelity, 0.0, 1.0), r.ci_halfwidth,
                            r.samples});
    }
    std::sort(c.points.begin(), c.points.end(), [](const CurvePoint &a, const CurvePoint &b) { return a.n < b.n; });
    return c;
}

FidelityCurve curve_from_csv(std::string_view text, std::string_view sequence, int tau) {
    auto rows = parse_csv(text);
    if (rows.empty()) throw ParseError("curve CSV: missing header");
    const auto &h = rows[0];
    auto col = [&](std::initializer_list<std::string_view> names) -> int {
        for (std::size_t i = 0; i < h.size(); ++i) {
            for (auto n : names) {
                if (h[i] == n) return static_cast<int>(i);
            }
        }
        return -1;
    };
    int cn = col({"N"});
    int cf = col({"fidelity", "mean_fidelity"});
    int cc = col({"ci_halfwidth"});
    int cs = col({"samples"});
    int cseq = col({"sequence"});
    int ctau = col({"tau"});
    if (cn < 0 || cf < 0) throw ParseError("curve CSV: needs N and fidelity columns");
    FidelityCurve c;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto &row = rows[i];
        std::string where = "curve CSV row " + std::to_string(i + 1);
        if (row.size() != h.size()) throw ParseError(where + ": field count differs from header");
        if (!sequence.empty() && cseq >= 0 && row[static_cast<std::size_t>(cseq)] != sequence) continue;
        if (tau > 0 && ctau >= 0 && parse_int_field(row[static_cast<std::size_t>(ctau)], where + " tau") != tau) continue;
        CurvePoint p;
        p.n = parse_double_field(row[static_cast<std::size_t>(cn)], where + " N");
        p.fidelity = parse_double_field(row[static_cast<std::size_t>(cf)], where + " fidelity");
        if (cc >= 0) p.ci_halfwidth = parse_double_field(row[static_cast<std::size_t>(cc)], where + " ci_halfwidth");
        if (cs >= 0) p.samples = static_cast<int>(parse_int_field(row[static_cast<std::size_t>(cs)], where + " samples"));
        c.points.push_back(p);
    }
    if (cseq >= 0 && sequence.empty()) {
        std::set<std::string> seqs;
        for (std::size_t i = 1; i < rows.size(); ++i) seqs.insert(rows[i][static_cast<std::size_t>(cseq)]);
        if (seqs.size() > 1) throw ParseError("curve CSV: several sequences present; choose one");
    }
    c.validate();
    return c;
}

std::string curve_to_csv(const FidelityCurve &curve) {
    std::string out = "N,fidelity,ci_halfwidth,samples\n";
    for (const auto &p : curve.points) {
        out += format_double(p.n) + "," + format_double(p.fidelity) + "," + format_double(p.ci_halfwidth) + "," +
               std::to_string(p.samples) + "\n";
    }
    return out;
}

}  // namespace ddlab
