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

// Regenerates the derived fixtures: the synthetic decay curve and the
// calibrated static dephasing strength.

#include <cstdio>
#include <iostream>
#include <limits>

#include <CLI11.hpp>

#include "ddlab/analysis.h"
#include "ddlab/csv.h"
#include "ddlab/experiments.h"
#include "ddlab/io.h"

namespace {

using namespace ddlab;

int write_curve(const std::string &out, std::uint64_t seed) {
    // IBMQX5 free-evolution parameters from fixtures/fits/decay_fits.csv.
    auto model = FitResult::from_parameters(FitVariant::SELF_CONSISTENT, 0.965, 0.556, 592, 28.9, 910, 0.73);
    std::vector<double> n;
    for (int k = 0; k <= 592; k += 4) n.push_back(k);
    RandomStream rng({seed, stream_tag::kShots});
    auto curve = synthesize_curve(model, n, 8192, &rng);
    write_text_file(out, curve_to_csv(curve));
    std::cout << "wrote " << curve.points.size() << " points to " << out << "\n";
    return 0;
}

int calibrate(double target, std::uint64_t seed) {
    CalibrationSetup setup;
    setup.base = noise_preset("ibmqx5_mean_calibrated");
    setup.timing_profile = "ibmqx5";
    for (int k = 0; k <= 592; k += 4) setup.n_values.push_back(k);
    setup.seed = seed;
    double sigma = calibrate_static_sigma(setup, target, 1e-4, 2e-3, 40);
    std::printf("sigma %.8g rad/ns gives lambda %.4f\n", sigma, free_decay_constant(setup, sigma));
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"ddlab_fixtures: regenerate derived fixtures"};
    app.require_subcommand(1);
    std::string out = "fixtures/curves/ibmqx5_free.csv";
    std::uint64_t seed = 1;
    auto *c = app.add_subcommand("curve", "synthetic free-evolution curve with 8192-shot noise");
    c->add_option("--out", out);
    c->add_option("--seed", seed);
    double target = 29;
    std::uint64_t cal_seed = 7;
    auto *k = app.add_subcommand("calibrate", "static dephasing sigma for a target free decay constant");
    k->add_option("--target", target);
    k->add_option("--seed", cal_seed);
    CLI11_PARSE(app, argc, argv);
    try {
        if (c->parsed()) return write_curve(out, seed);
        return calibrate(target, cal_seed);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
