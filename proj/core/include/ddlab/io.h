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

#ifndef DDLAB_IO_H
#define DDLAB_IO_H

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ddlab/analysis.h"
#include "ddlab/experiments.h"
#include "ddlab/noise.h"

namespace ddlab {

std::string suite_version();

// JSON documents. Parsers throw SchemaError carrying a JSON pointer; unknown
// keys are rejected so that typos do not silently fall back to defaults.
std::string experiment_spec_to_json(const ExperimentSpec &spec);
ExperimentSpec experiment_spec_from_json(std::string_view text);

std::string noise_to_json(const NoiseConfiguration &noise);
NoiseConfiguration noise_from_json(std::string_view text);

// Infinite λ or α are written as the string "inf".
std::string fit_result_to_json(const FitResult &fit);
FitResult fit_result_from_json(std::string_view text);

std::string bound_analysis_to_json(const BoundAnalysis &analysis);

std::string intersection_to_json(const IntersectionResult &r);

// records.csv: sequence,qubits,state,N,tau,shots,fidelity,p0,p1,p2,p3.
std::string records_to_csv(const std::vector<ResultRecord> &records);
std::vector<ResultRecord> records_from_csv(std::string_view text);

std::uint64_t fnv1a64(std::string_view bytes);

// A result directory holds manifest.json (deterministic: spec, seed,
// version, checksums), records.csv, and run_info.json with the wall-clock
// details that would otherwise break byte-identical reruns.
void write_result_set(const std::filesystem::path &dir, const ResultSet &rs, double wall_seconds);
ResultSet read_result_set(const std::filesystem::path &dir);

/// $DDLAB_OUTPUT_DIR, or "ddlab-results" when unset.
std::filesystem::path default_output_dir();

// One row per (sequence, N, τ): mean over qubits and initial states, with a
// bootstrap 2σ halfwidth.
struct AggregateRow {
    std::string sequence;
    int n = 0;
    int tau = 1;
    double mean_fidelity = 0;
    double ci_halfwidth = 0;
    int samples = 0;
};

std::vector<AggregateRow> aggregate_records(const std::vector<ResultRecord> &records, int resamples,
                                            std::uint64_t seed);
/// sequence,N,tau,mean_fidelity,ci_halfwidth
std::string report_csv(const std::vector<AggregateRow> &rows);
FidelityCurve curve_from_aggregates(const std::vector<AggregateRow> &rows, std::string_view sequence, int tau);

/// Header row required; columns N and fidelity, optionally ci_halfwidth and
/// samples (mean_fidelity is accepted for fidelity, so report output can be
/// fed back with a sequence/tau filter).
FidelityCurve curve_from_csv(std::string_view text, std::string_view sequence = {}, int tau = 0);
std::string curve_to_csv(const FidelityCurve &curve);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);

}  // namespace ddlab

#endif
