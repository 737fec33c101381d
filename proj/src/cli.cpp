// Copyright 2026 The QIRB Authors
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

#include "qirb/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "qirb/errors.hpp"
#include "qirb/io.hpp"

namespace qirb {

namespace {

namespace fs = std::filesystem;

std::size_t default_threads() {
  if (const char *env = std::getenv("QIRB_THREADS")) {
    return static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
  }
  return 0;
}

std::vector<Edge> read_edges(const std::string &path) {
  json j = read_json_file(path);
  std::vector<Edge> edges;
  try {
    for (const json &e : j) {
      edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
    }
  } catch (const json::exception &e) {
    throw SchemaError("Edge file must be a JSON list of [a, b] pairs: " + std::string(e.what()));
  }
  return edges;
}

struct SamplingFlags {
  std::size_t n = 2;
  double p_cnot = 0.35;
  double p_mcm = 0.1;
  bool reset = true;
  std::string edges_file;
  std::string mode = "at-most-one";

  void attach(CLI::App *cmd) {
    cmd->add_option("--n", n, "Number of qubits")->capture_default_str();
    cmd->add_option("--p-cnot", p_cnot, "Probability of a CNOT per core layer")->capture_default_str();
    cmd->add_option("--p-mcm", p_mcm, "Probability of a mid-circuit measurement per core layer")
        ->capture_default_str();
    cmd->add_flag("--reset,!--no-reset", reset, "Reset measured qubits after each MCM (default on)");
    cmd->add_option("--edges", edges_file, "JSON list of [a, b] pairs restricting CNOT placement");
    cmd->add_option("--mode", mode, "Layer sampling mode: at-most-one or density")->capture_default_str();
  }

  SamplingConfig config() const {
    SamplingConfig c;
    c.num_wires = n;
    c.p_cnot = p_cnot;
    c.p_mcm = p_mcm;
    c.reset = reset;
    if (!edges_file.empty()) {
      c.edges = read_edges(edges_file);
    }
    if (mode == "at-most-one") {
      c.mode = SamplingMode::kAtMostOne;
    } else if (mode == "density") {
      c.mode = SamplingMode::kDensity;
    } else {
      throw UsageError("Unknown sampling mode \"" + mode + "\"");
    }
    c.validate();
    return c;
  }
};

struct NoiseFlags {
  std::string noise_file;
  double f1q = 0.999;
  double f2q = 0.995;
  double mcm_flip = 0.02;
  std::optional<double> readout_flip;

  void attach(CLI::App *cmd) {
    cmd->add_option("--noise", noise_file, "Noise model JSON file (overrides the shorthand flags)");
    cmd->add_option("--f1q", f1q, "Single-qubit gate process fidelity")->capture_default_str();
    cmd->add_option("--f2q", f2q, "CNOT process fidelity")->capture_default_str();
    cmd->add_option("--mcm-flip", mcm_flip, "Bit-flip probability before each measurement")->capture_default_str();
    cmd->add_option("--readout-flip", readout_flip, "Final readout flip probability (default: --mcm-flip)");
  }

  NoiseModel model() const {
    NoiseModel noise;
    if (!noise_file.empty()) {
      noise = parse_noise_document(read_json_file(noise_file));
    } else {
      noise = NoiseModel::depolarizing(f1q, f2q, 0.0);
      noise.mcm.pre_flip = mcm_flip;
    }
    if (readout_flip) {
      noise.final_readout_flip = *readout_flip;
    }
    noise.validate();
    return noise;
  }
};

int cmd_design(const SamplingFlags &sampling, const std::vector<std::size_t> &depths, std::size_t per_depth,
               std::size_t shots, std::uint64_t seed, const std::string &out_dir, std::ostream &out) {
  ExperimentDesign design;
  design.sampling = sampling.config();
  design.depths = depths;
  design.circuits_per_depth = per_depth;
  design.shots = shots;
  design.seed = seed;
  design.validate();
  std::vector<DesignedCircuit> circuits = generate_circuits(design);
  fs::create_directories(out_dir);
  write_json_file(fs::path(out_dir) / "design.json", design_document(design));
  write_json_file(fs::path(out_dir) / "circuits.json", circuits_document(design, circuits));
  out << "Wrote " << circuits.size() << " circuits to " << (fs::path(out_dir) / "circuits.json").string() << "\n";
  return kExitOk;
}

int cmd_simulate(std::string circuits_path, const NoiseFlags &noise_flags, const std::string &mode,
                 std::size_t threads, std::optional<std::uint64_t> seed, const std::string &out_path,
                 std::ostream &out) {
  if (fs::is_directory(circuits_path)) {
    circuits_path = (fs::path(circuits_path) / "circuits.json").string();
  }
  ExperimentDesign design;
  std::vector<DesignedCircuit> circuits = parse_circuits_document(read_json_file(circuits_path), &design);
  NoiseModel noise = noise_flags.model();
  SimulationOptions options;
  options.reset_free_mode = parse_reset_free_mode(mode);
  options.threads = threads;
  ResultsData results =
      run_simulation(design, circuits, noise, options, seed.value_or(default_simulation_seed(design)));
  write_json_file(out_path, results_document(results));
  std::uint64_t s = 0, f = 0;
  for (const CircuitResult &c : results.circuits) {
    s += c.successes;
    f += c.failures;
  }
  out << "Simulated " << results.circuits.size() << " circuits x " << design.shots << " shots; overall F = "
      << compute_f(s, f) << "\n";
  return kExitOk;
}

int cmd_analyze(const std::vector<std::string> &inputs, const AnalysisOptions &options, const std::string &out_path,
                const std::string &csv_path, std::ostream &out) {
  std::vector<ResultsData> data;
  for (const std::string &path : inputs) {
    data.push_back(parse_results_document(read_json_file(path)));
  }
  AnalysisReport report = analyze_results(data, inputs, options);
  write_json_file(out_path, report_document(report));
  if (!csv_path.empty()) {
    for (std::size_t i = 0; i < report.datasets.size(); i++) {
      fs::path path = csv_path;
      if (i > 0) {
        path = path.parent_path() / (path.stem().string() + "_" + std::to_string(i) + path.extension().string());
      }
      write_file_atomic(path, curve_csv(report.datasets[i]));
    }
  }
  out << std::setprecision(6);
  for (const DatasetAnalysis &ds : report.datasets) {
    out << ds.source << ": r_Omega = " << 100.0 * ds.fit.r_omega << "% +- " << 100.0 * ds.fit.r_bootstrap.sigma
        << "%, A = " << ds.fit.amplitude << "\n";
  }
  if (report.erm) {
    const ErmParams &p = report.erm->params;
    out << "ERM: eps_1q = " << p.eps_1q << ", eps_2q = " << p.eps_2q << ", eps_mcm = " << p.eps_mcm
        << ", eps_spam = " << p.eps_spam << "\n";
  }
  for (const std::string &note : report.notes) {
    out << "note: " << note << "\n";
  }
  return kExitOk;
}

int cmd_predict(const SamplingFlags &sampling, const std::string &design_path, const NoiseFlags &noise_flags,
                const std::vector<std::size_t> &depths, double amplitude, const std::string &out_path,
                std::ostream &out) {
  SamplingConfig config =
      design_path.empty() ? sampling.config() : parse_design_document(read_json_file(design_path)).sampling;
  NoiseModel noise = noise_flags.model();
  TheoryPrediction prediction = predict_r_omega(noise, config);
  json doc = prediction_document(prediction, config, noise, amplitude, depths);
  if (out_path.empty() || out_path == "-") {
    out << doc.dump(1) << "\n";
  } else {
    write_json_file(out_path, doc);
    out << "r_Omega = " << 100.0 * prediction.r_omega << "% (eps_Omega = " << 100.0 * prediction.eps_omega
        << "%)\n";
  }
  return kExitOk;
}

int cmd_cliffords(std::ostream &out) {
  out << "index  name    X ->  Z ->\n";
  for (std::size_t k = 0; k < kNumSingleQubitCliffords; k++) {
    SingleQubitClifford c = SingleQubitClifford::from_index(k);
    auto show = [](PauliImage img) { return std::string(img.negative ? "-" : "+") + pauli_char(img.code); };
    out << std::setw(5) << k << "  " << std::left << std::setw(6) << c.name() << std::right << "  "
        << show(c.image(PauliCode::X)) << "    " << show(c.image(PauliCode::Z)) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Quantum instrument randomized benchmarking toolkit", "qirb"};
  app.require_subcommand(1);

  SamplingFlags design_sampling;
  std::vector<std::size_t> depths{0, 1, 4, 32, 128};
  std::size_t per_depth = 15;
  std::size_t shots = 100;
  std::uint64_t design_seed = 1;
  std::string design_out = ".";
  CLI::App *design = app.add_subcommand("design", "Sample circuits and write design.json and circuits.json");
  design_sampling.attach(design);
  design->add_option("--depths", depths, "Comma-separated circuit depths")->delimiter(',')->capture_default_str();
  design->add_option("--circuits-per-depth", per_depth, "Circuits sampled at each depth")->capture_default_str();
  design->add_option("--shots", shots, "Shots per circuit")->capture_default_str();
  design->add_option("--seed", design_seed, "Master seed")->capture_default_str();
  design->add_option("--out", design_out, "Output directory")->capture_default_str();

  std::string circuits_path;
  NoiseFlags sim_noise;
  std::string sim_mode = "frame-correction";
  std::size_t sim_threads = default_threads();
  std::optional<std::uint64_t> sim_seed;
  std::string sim_out;
  CLI::App *simulate = app.add_subcommand("simulate", "Simulate a circuits file and write results.json");
  simulate->add_option("--circuits", circuits_path, "circuits.json or the directory holding it")->required();
  sim_noise.attach(simulate);
  simulate->add_option("--reset-free-mode", sim_mode, "frame-correction or feedforward-x")->capture_default_str();
  simulate->add_option("--threads", sim_threads, "Worker threads (0 = all cores; env QIRB_THREADS)");
  simulate->add_option("--seed", sim_seed, "Simulation seed (default: derived from the design seed)");
  simulate->add_option("--out", sim_out, "Results file")->required();

  std::vector<std::string> inputs;
  AnalysisOptions analysis;
  analysis.threads = default_threads();
  bool no_erm = false;
  std::string report_out;
  std::string csv_out;
  CLI::App *analyze = app.add_subcommand("analyze", "Fit decay curves and error-rate models");
  analyze->add_option("results", inputs, "One or more results.json files")->required();
  analyze->add_option("--bootstrap", analysis.bootstrap, "Bootstrap resamples for r_Omega")->capture_default_str();
  analyze->add_option("--erm-bootstrap", analysis.erm_bootstrap, "Bootstrap resamples for the ERM fit")
      ->capture_default_str();
  analyze->add_option("--erm-starts", analysis.erm_starts, "Simplex starts per ERM fit")->capture_default_str();
  analyze->add_flag("--no-erm", no_erm, "Skip the error-rate-model fit");
  analyze->add_option("--seed", analysis.seed, "Bootstrap seed")->capture_default_str();
  analyze->add_option("--threads", analysis.threads, "Worker threads (0 = all cores)");
  analyze->add_option("--out", report_out, "Report file")->required();
  analyze->add_option("--csv", csv_out, "Depth table CSV (one file per dataset)");

  SamplingFlags predict_sampling;
  std::string predict_design;
  NoiseFlags predict_noise;
  std::vector<std::size_t> predict_depths{0, 1, 4, 32, 128};
  double amplitude = 1.0;
  std::string predict_out;
  CLI::App *predict = app.add_subcommand("predict", "Predict r_Omega for a sampling configuration and noise model");
  predict_sampling.attach(predict);
  predict->add_option("--design", predict_design, "Take the sampling configuration from a design.json");
  predict_noise.attach(predict);
  predict->add_option("--depths", predict_depths, "Depths for the predicted curve")->delimiter(',');
  predict->add_option("--amplitude", amplitude, "Amplitude A of the predicted curve")->capture_default_str();
  predict->add_option("--out", predict_out, "Prediction file (default: stdout)");

  CLI::App *cliffords = app.add_subcommand("cliffords", "Print the single-qubit Clifford naming table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (design->parsed()) {
      return cmd_design(design_sampling, depths, per_depth, shots, design_seed, design_out, out);
    }
    if (simulate->parsed()) {
      return cmd_simulate(circuits_path, sim_noise, sim_mode, sim_threads, sim_seed, sim_out, out);
    }
    if (analyze->parsed()) {
      analysis.erm = !no_erm;
      return cmd_analyze(inputs, analysis, report_out, csv_out, out);
    }
    if (predict->parsed()) {
      return cmd_predict(predict_sampling, predict_design, predict_noise, predict_depths, amplitude, predict_out, out);
    }
    if (cliffords->parsed()) {
      return cmd_cliffords(out);
    }
  } catch (const SchemaError &e) {
    err << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const FitDegenerateError &e) {
    err << "fit failed: " << e.what() << "\n";
    return kExitFitDegenerate;
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedModelError &e) {
    err << "unsupported model: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace qirb
