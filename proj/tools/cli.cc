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

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ddlab/analysis.h"
#include "ddlab/bootstrap.h"
#include "ddlab/csv.h"
#include "ddlab/error.h"
#include "ddlab/experiments.h"
#include "ddlab/io.h"
#include "ddlab/qasm.h"
#include "ddlab/toggling.h"

namespace ddlab::cli {

namespace {

namespace fs = std::filesystem;

void emit(std::ostream &out, const std::string &text, const std::string &path) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

std::vector<int> parse_int_list(const std::string &s, const std::string &what) {
    std::vector<int> out;
    for (const auto &field : parse_csv(s).empty() ? CsvRow{} : parse_csv(s).front()) {
        out.push_back(static_cast<int>(parse_int_field(field, what)));
    }
    if (out.empty()) throw InvalidInput(what + ": empty list");
    return out;
}

FidelityCurve curve_from_results(const fs::path &dir, const std::string &sequence, int tau, int resamples,
                                 std::uint64_t seed) {
    auto rs = read_result_set(dir);
    auto rows = aggregate_records(rs.records, resamples, seed);
    auto curve = curve_from_aggregates(rows, sequence, tau);
    if (curve.points.empty()) {
        throw InvalidInput("no records for sequence '" + sequence + "' at tau " + std::to_string(tau) + " in " +
                           dir.string());
    }
    return curve;
}

// ---- subcommands ----

struct SimulateArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    bool quiet = false;
};

int cmd_simulate(const SimulateArgs &a, std::ostream &out) {
    ExperimentSpec spec = experiment_spec_from_json(read_text_file(a.config));
    if (a.seed) spec.seed = *a.seed;
    fs::path dir = a.out.empty() ? default_output_dir() / (fs::path(a.config).stem().string() + "-seed" +
                                                          std::to_string(spec.seed))
                                 : fs::path(a.out);
    auto t0 = std::chrono::steady_clock::now();
    ResultSet rs = run_experiment(spec);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_result_set(dir, rs, wall);
    if (!a.quiet) out << "wrote " << rs.records.size() << " records to " << dir.string() << "\n";
    return 0;
}

struct FitArgs {
    std::string curve;
    std::string results;
    std::string sequence = "FREE";
    int tau = 1;
    std::string variant = "SELF_CONSISTENT";
    bool no_model_selection = false;
    int resamples = 2000;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_fit(const FitArgs &a, std::ostream &out) {
    FidelityCurve curve;
    if (!a.curve.empty()) {
        curve = curve_from_csv(read_text_file(a.curve), a.sequence == "FREE" ? "" : a.sequence, 0);
    } else {
        curve = curve_from_results(a.results, a.sequence, a.tau, a.resamples, a.seed);
    }
    FitOptions opts;
    opts.model_selection = !a.no_model_selection;
    FitResult fit = fit_decay(curve, parse_fit_variant(a.variant), opts);
    emit(out, fit_result_to_json(fit), a.out);
    return 0;
}

struct IntersectArgs {
    std::string free_fit;
    std::string dd_fit;
    std::string results;
    std::string dd_sequence = "XY4";
    int tau = 1;
    int resamples = 1000;
    std::uint64_t seed = 0;
    double n_transient = 5;
    std::string out;
};

int cmd_intersect(const IntersectArgs &a, std::ostream &out) {
    FitResult ff, fd;
    if (!a.results.empty()) {
        ff = fit_decay(curve_from_results(a.results, "FREE", a.tau, 2000, a.seed));
        fd = fit_decay(curve_from_results(a.results, a.dd_sequence, a.tau, 2000, a.seed));
    } else {
        if (a.free_fit.empty() || a.dd_fit.empty()) {
            throw InvalidInput("intersect needs --free and --dd fit files, or --results");
        }
        ff = fit_result_from_json(read_text_file(a.free_fit));
        fd = fit_result_from_json(read_text_file(a.dd_fit));
    }
    RandomStream rng({a.seed, stream_tag::kResample});
    auto r = intersection_time(ff, fd, a.resamples, rng, a.n_transient);
    emit(out, intersection_to_json(r), a.out);
    return 0;
}

struct BoundArgs {
    std::string bath;
    int bath_qubits = 2;
    double coupling = 1e-4;
    double omega = 2e-4;
    std::uint64_t bath_seed = 11;
    std::string sequence = "XY4";
    std::string taus = "1,2,3,4,5,6";
    std::string n_values = "4,8,16,32,64";
    std::string timing = "ibmqx5";
    std::string measure = "sqrt_one_minus_F";
    std::uint64_t states_seed = 5;
    std::string out;
};

int cmd_bound(const BoundArgs &a, std::ostream &out) {
    SpinBathModel bath;
    if (!a.bath.empty()) {
        NoiseConfiguration holder = noise_from_json("{\"bath\": " + read_text_file(a.bath) + "}");
        bath = *holder.bath;
    } else {
        RandomStream rng({a.bath_seed, stream_tag::kBath});
        bath = SpinBathModel::random(a.bath_qubits, a.coupling, a.omega, rng);
        bath.system_detuning = a.omega / 2;
    }
    SequenceDef seq = parse_sequence_label(a.sequence);
    auto profile = timing_profile(a.timing);
    auto grid = simulate_bound_grid(bath, seq, profile, parse_int_list(a.taus, "--taus"),
                                    parse_int_list(a.n_values, "--n-values"), type2_states(a.states_seed));
    double c = bound_constant(bath, labels_per_repetition(seq.family));
    auto analysis = bound_analysis(grid, c, profile.identity_slot_ns, parse_bound_measure(a.measure));
    emit(out, bound_analysis_to_json(analysis), a.out);
    return 0;
}

struct BootstrapArgs {
    std::string input;
    std::string column;
    std::string results;
    std::string sequence = "FREE";
    int n = -1;
    int tau = 1;
    int resamples = 5000;
    std::uint64_t seed = 0;
};

int cmd_bootstrap(const BootstrapArgs &a, std::ostream &out) {
    std::vector<double> samples;
    if (!a.results.empty()) {
        if (a.n < 0) throw InvalidInput("bootstrap --results needs --n");
        for (const auto &r : read_result_set(a.results).records) {
            if (r.sequence == a.sequence && r.n == a.n && r.tau == a.tau) samples.push_back(r.fidelity);
        }
    } else {
        auto rows = parse_csv(read_text_file(a.input));
        if (rows.empty()) throw InvalidInput("bootstrap: empty input");
        std::size_t col = 0;
        std::size_t first = 0;
        bool numeric_header = true;
        try {
            parse_double_field(rows[0][0], "value");
        } catch (const ParseError &) {
            numeric_header = false;
        }
        if (!numeric_header) {
            first = 1;
            if (!a.column.empty()) {
                auto it = std::find(rows[0].begin(), rows[0].end(), a.column);
                if (it == rows[0].end()) throw InvalidInput("bootstrap: no column '" + a.column + "'");
                col = static_cast<std::size_t>(it - rows[0].begin());
            }
        }
        for (std::size_t i = first; i < rows.size(); ++i) {
            if (col >= rows[i].size()) throw ParseError("bootstrap: short row " + std::to_string(i + 1));
            samples.push_back(parse_double_field(rows[i][col], "row " + std::to_string(i + 1)));
        }
    }
    if (samples.empty()) throw InvalidInput("bootstrap: no samples selected");
    auto b = bootstrap(samples, a.resamples, a.seed);
    out << "{\n  \"samples\": " << samples.size() << ",\n  \"resamples\": " << a.resamples
        << ",\n  \"mean\": " << format_double(b.mean) << ",\n  \"sample_mean\": " << format_double(b.sample_mean)
        << ",\n  \"lo\": " << format_double(b.lo) << ",\n  \"hi\": " << format_double(b.hi)
        << ",\n  \"ci_halfwidth\": " << format_double(b.halfwidth)
        << ",\n  \"standard_error\": " << format_double(b.standard_error) << "\n}\n";
    return 0;
}

struct VerifyArgs {
    std::string sequence = "XY4";
    std::string coupling = "random";
    int trials = 100;
    int bath_dim = 2;
    std::uint64_t seed = 0;
};

int cmd_verify_dd(const VerifyArgs &a, std::ostream &out) {
    if (a.trials < 1) throw InvalidInput("--trials must be >= 1");
    if (a.bath_dim < 1) throw InvalidInput("--bath-dim must be >= 1");
    SequenceDef def = parse_sequence_label(a.sequence);
    auto labels = build_sequence(def);
    std::map<std::string, int> axes{{"x", 1}, {"y", 2}, {"z", 3}};
    if (a.coupling != "random" && !axes.count(a.coupling)) {
        throw InvalidInput("--coupling must be random, x, y or z");
    }
    RandomStream rng({a.seed, stream_tag::kCoupling});
    double max_norm = 0, max_rel = 0, min_rel = std::numeric_limits<double>::infinity();
    for (int t = 0; t < a.trials; ++t) {
        CMatrix h = a.coupling == "random" ? random_single_qubit_coupling(a.bath_dim, rng)
                                           : random_axis_coupling(axes[a.coupling], a.bath_dim, rng);
        double norm = toggling_frame_first_order(labels, h);
        double rel = norm / spectral_norm(h);
        max_norm = std::max(max_norm, norm);
        max_rel = std::max(max_rel, rel);
        min_rel = std::min(min_rel, rel);
    }
    out << "{\n  \"sequence\": \"" << sequence_label(def) << "\",\n  \"coupling\": \"" << a.coupling
        << "\",\n  \"trials\": " << a.trials << ",\n  \"bath_dim\": " << a.bath_dim
        << ",\n  \"max_norm\": " << format_double(max_norm) << ",\n  \"max_relative_norm\": " << format_double(max_rel)
        << ",\n  \"min_relative_norm\": " << format_double(min_rel)
        << ",\n  \"decoupled\": " << (max_rel < 1e-12 ? "true" : "false") << "\n}\n";
    return 0;
}

struct QasmArgs {
    std::string sequence = "XY4";
    int n = -1;
    double theta = 0, phi = 0, lambda = 0;
    std::string bell;
    int tau = 1;
    std::string out;
};

int cmd_export_qasm(const QasmArgs &a, std::ostream &out) {
    QasmCell cell;
    cell.sequence = parse_sequence_label(a.sequence);
    cell.n_labels = a.n >= 0 ? a.n : labels_per_repetition(cell.sequence.family);
    cell.tau_multiplier = a.tau;
    if (!a.bell.empty()) {
        cell.initial = parse_bell_kind(a.bell);
    } else {
        cell.initial = EulerAngles::make(a.theta, a.phi, a.lambda);
    }
    emit(out, export_qasm(cell), a.out);
    return 0;
}

struct ReportArgs {
    std::string results;
    int resamples = 5000;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_report(const ReportArgs &a, std::ostream &out) {
    auto rs = read_result_set(a.results);
    emit(out, report_csv(aggregate_records(rs.records, a.resamples, a.seed)), a.out);
    return 0;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"ddlab: dynamical decoupling simulation and analysis"};
    app.name("ddlab");
    app.set_version_flag("--version", suite_version());
    app.require_subcommand(1);

    SimulateArgs sim;
    auto *s = app.add_subcommand("simulate", "run an experiment config and write a result directory");
    s->add_option("--config", sim.config, "experiment JSON")->required()->check(CLI::ExistingFile);
    s->add_option("--seed", sim.seed, "override the master seed");
    s->add_option("--out", sim.out, "result directory (default: $DDLAB_OUTPUT_DIR/<config>-seed<seed>)");
    s->add_flag("--quiet", sim.quiet);

    FitArgs fit;
    auto *f = app.add_subcommand("fit", "fit the decay model to a curve");
    auto *fc = f->add_option("--curve", fit.curve, "curve CSV (N,fidelity[,ci_halfwidth,samples])")
                   ->check(CLI::ExistingFile);
    auto *fr = f->add_option("--results", fit.results, "result directory")->check(CLI::ExistingDirectory);
    fc->excludes(fr);
    f->add_option("--sequence", fit.sequence, "sequence label to fit");
    f->add_option("--tau", fit.tau, "tau multiplier");
    f->add_option("--variant", fit.variant, "AS_WRITTEN or SELF_CONSISTENT");
    f->add_flag("--no-model-selection", fit.no_model_selection, "always fit all of lambda, alpha, gamma");
    f->add_option("--resamples", fit.resamples, "bootstrap resamples for the CI weights");
    f->add_option("--seed", fit.seed);
    f->add_option("--out", fit.out, "write JSON here instead of stdout");

    IntersectArgs inter;
    auto *i = app.add_subcommand("intersect", "crossing point of the free and DD fits");
    i->add_option("--free", inter.free_fit, "free-evolution fit JSON")->check(CLI::ExistingFile);
    i->add_option("--dd", inter.dd_fit, "DD fit JSON")->check(CLI::ExistingFile);
    i->add_option("--results", inter.results, "fit both curves from a result directory")
        ->check(CLI::ExistingDirectory);
    i->add_option("--dd-sequence", inter.dd_sequence);
    i->add_option("--tau", inter.tau);
    i->add_option("--resamples", inter.resamples);
    i->add_option("--seed", inter.seed);
    i->add_option("--n-transient", inter.n_transient);
    i->add_option("--out", inter.out);

    BoundArgs bound;
    auto *b = app.add_subcommand("bound", "infidelity scaling against the free reference over a spin bath");
    b->add_option("--bath", bound.bath, "spin bath JSON")->check(CLI::ExistingFile);
    b->add_option("--bath-qubits", bound.bath_qubits);
    b->add_option("--coupling", bound.coupling, "random coupling strength, rad/ns");
    b->add_option("--omega", bound.omega, "bath splitting scale, rad/ns");
    b->add_option("--bath-seed", bound.bath_seed);
    b->add_option("--sequence", bound.sequence);
    b->add_option("--taus", bound.taus, "comma-separated tau multipliers");
    b->add_option("--n-values", bound.n_values, "comma-separated pulse counts");
    b->add_option("--timing", bound.timing);
    b->add_option("--measure", bound.measure, "sqrt_one_minus_F or one_minus_sqrt_F");
    b->add_option("--states-seed", bound.states_seed);
    b->add_option("--out", bound.out);

    BootstrapArgs boot;
    auto *bs = app.add_subcommand("bootstrap", "percentile bootstrap CI of a sample mean");
    auto *bi = bs->add_option("--input", boot.input, "CSV of samples")->check(CLI::ExistingFile);
    auto *br = bs->add_option("--results", boot.results)->check(CLI::ExistingDirectory);
    bi->excludes(br);
    bs->add_option("--column", boot.column);
    bs->add_option("--sequence", boot.sequence);
    bs->add_option("--n", boot.n);
    bs->add_option("--tau", boot.tau);
    bs->add_option("--resamples", boot.resamples);
    bs->add_option("--seed", boot.seed);

    VerifyArgs ver;
    auto *v = app.add_subcommand("verify-dd", "first-order toggling-frame norms for random couplings");
    v->add_option("--sequence", ver.sequence);
    v->add_option("--coupling", ver.coupling, "random, x, y or z");
    v->add_option("--trials", ver.trials);
    v->add_option("--bath-dim", ver.bath_dim);
    v->add_option("--seed", ver.seed);

    QasmArgs qa;
    auto *q = app.add_subcommand("export-qasm", "emit OpenQASM 2.0 for one experiment cell");
    q->add_option("--sequence", qa.sequence);
    q->add_option("--n", qa.n, "pulse count (default: one repetition)");
    q->add_option("--theta", qa.theta);
    q->add_option("--phi", qa.phi);
    q->add_option("--lambda", qa.lambda);
    q->add_option("--bell", qa.bell, "PhiPlus or PsiPlus");
    q->add_option("--tau", qa.tau);
    q->add_option("--out", qa.out);

    ReportArgs rep;
    auto *r = app.add_subcommand("report", "plot-ready CSV of per-(sequence, N, tau) means");
    r->add_option("--results", rep.results)->required()->check(CLI::ExistingDirectory);
    r->add_option("--resamples", rep.resamples);
    r->add_option("--seed", rep.seed);
    r->add_option("--out", rep.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion &) {
        out << suite_version() << "\n";
        return 0;
    } catch (const CLI::ParseError &e) {
        std::string first = argc > 1 ? argv[1] : "";
        bool known = false;
        for (const auto *sub : app.get_subcommands({})) known = known || sub->get_name() == first;
        if (!first.empty() && first[0] != '-' && !known) {
            err << "error: unknown subcommand '" << first << "'\n\n" << app.help();
        } else {
            err << "error: " << e.what() << "\n\n" << app.help();
        }
        return 2;
    }

    try {
        if (s->parsed()) return cmd_simulate(sim, out);
        if (f->parsed()) {
            if (fit.curve.empty() && fit.results.empty()) throw InvalidInput("fit needs --curve or --results");
            return cmd_fit(fit, out);
        }
        if (i->parsed()) return cmd_intersect(inter, out);
        if (b->parsed()) return cmd_bound(bound, out);
        if (bs->parsed()) {
            if (boot.input.empty() && boot.results.empty()) throw InvalidInput("bootstrap needs --input or --results");
            return cmd_bootstrap(boot, out);
        }
        if (v->parsed()) return cmd_verify_dd(ver, out);
        if (q->parsed()) return cmd_export_qasm(qa, out);
        if (r->parsed()) return cmd_report(rep, out);
    } catch (const SchemaError &e) {
        err << "schema error at " << e.pointer() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << app.help();
    return 2;
}

}  // namespace ddlab::cli
