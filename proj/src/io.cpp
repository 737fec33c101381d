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

#include "qirb/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "qirb/errors.hpp"

namespace qirb {

namespace {

std::string two_qubit_label(std::size_t k) {
  return std::string{pauli_char(static_cast<PauliCode>(k & 3)), pauli_char(static_cast<PauliCode>(k >> 2))};
}

std::string bits_to_string(const std::vector<std::uint8_t> &bits) {
  std::string s;
  for (auto b : bits) {
    s.push_back(b ? '1' : '0');
  }
  return s;
}

std::vector<std::uint8_t> bits_from_string(const std::string &s) {
  std::vector<std::uint8_t> bits;
  for (char c : s) {
    if (c != '0' && c != '1') {
      throw SchemaError("Bit string may only contain 0 and 1: \"" + s + "\"");
    }
    bits.push_back(c == '1');
  }
  return bits;
}

json layer_to_json(const CircuitLayer &layer) {
  json records = json::array();
  for (const Gate &g : layer.gates) {
    if (g.is_cnot()) {
      records.push_back({{"gate", "cnot"}, {"wires", {g.wire, g.target}}});
    } else {
      records.push_back({{"gate", std::string(g.clifford.name())}, {"wires", {g.wire}}});
    }
  }
  for (std::size_t w : layer.mcm_wires) {
    records.push_back({{"gate", "measure"}, {"wires", {w}}, {"reset", layer.reset}});
  }
  return records;
}

CircuitLayer layer_from_json(const json &records, std::size_t n, bool reset) {
  CircuitLayer layer;
  layer.num_wires = n;
  layer.reset = reset;
  for (const json &rec : records) {
    const std::string name = rec.at("gate").get<std::string>();
    const auto wires = rec.at("wires").get<std::vector<std::size_t>>();
    if (name == "cnot") {
      if (wires.size() != 2) {
        throw SchemaError("cnot record needs two wires");
      }
      layer.gates.push_back(Gate::cnot(wires[0], wires[1]));
    } else if (name == "measure") {
      if (wires.size() != 1) {
        throw SchemaError("measure record needs one wire");
      }
      layer.mcm_wires.push_back(wires[0]);
      if (rec.contains("reset") && rec.at("reset").get<bool>() != reset) {
        throw SchemaError("measure record reset flag disagrees with its circuit");
      }
    } else {
      auto c = SingleQubitClifford::from_name(name);
      if (!c || wires.size() != 1) {
        throw SchemaError("Unknown gate record \"" + name + "\"");
      }
      layer.gates.push_back(Gate::single(*c, wires[0]));
    }
  }
  try {
    layer.validate();
  } catch (const UsageError &e) {
    throw SchemaError(std::string("Invalid layer: ") + e.what());
  }
  return layer;
}

SignedPauli pauli_from_json(const json &j, std::size_t n) {
  SignedPauli p = SignedPauli::from_string(j.get<std::string>());
  if (p.num_wires() != n) {
    throw SchemaError("Pauli \"" + j.get<std::string>() + "\" should act on " + std::to_string(n) + " wires");
  }
  return p;
}

template <typename Fn>
auto wrap_schema(std::string_view what, Fn &&fn) {
  try {
    return fn();
  } catch (const json::exception &e) {
    throw SchemaError("Malformed " + std::string(what) + ": " + e.what());
  } catch (const UsageError &e) {
    throw SchemaError("Invalid " + std::string(what) + ": " + e.what());
  }
}

json bootstrap_json(const BootstrapSummary &s) {
  return {{"sigma", s.sigma}, {"interval", {s.interval.first, s.interval.second}}, {"resamples", s.samples.size()}};
}

json erm_params_json(const ErmParams &p) {
  return {{"eps_1q", p.eps_1q}, {"eps_2q", p.eps_2q}, {"eps_mcm", p.eps_mcm}, {"eps_spam", p.eps_spam}};
}

}  // namespace

std::string_view reset_free_mode_name(ResetFreeMode mode) {
  return mode == ResetFreeMode::kFrameCorrection ? "frame-correction" : "feedforward-x";
}

ResetFreeMode parse_reset_free_mode(std::string_view name) {
  if (name == "frame-correction" || name == "frame") {
    return ResetFreeMode::kFrameCorrection;
  }
  if (name == "feedforward-x" || name == "feedforward") {
    return ResetFreeMode::kFeedforwardX;
  }
  throw UsageError("Unknown reset-free mode \"" + std::string(name) + "\"");
}

void check_schema(const json &j, std::string_view kind) {
  if (!j.is_object() || !j.contains("schema") || !j.at("schema").is_string()) {
    throw SchemaError("Expected a " + std::string(kind) + " document, found no schema tag");
  }
  const std::string found = j.at("schema").get<std::string>();
  if (found != kind) {
    throw SchemaError("Expected a " + std::string(kind) + " document, found " + found);
  }
  if (!j.contains("version") || !j.at("version").is_number_integer()) {
    throw SchemaError(std::string(kind) + " document has no integer version");
  }
  const int version = j.at("version").get<int>();
  if (version != kSchemaVersion) {
    throw SchemaError("Unsupported " + std::string(kind) + " version " + std::to_string(version) +
                      " (this build reads version " + std::to_string(kSchemaVersion) + ")");
  }
}

void to_json(json &j, const SamplingConfig &c) {
  json edges = json::array();
  for (const Edge &e : c.edges) {
    edges.push_back({e.first, e.second});
  }
  j = {{"n", c.num_wires},
       {"p_cnot", c.p_cnot},
       {"p_mcm", c.p_mcm},
       {"edges", edges},
       {"reset", c.reset},
       {"mode", c.mode == SamplingMode::kAtMostOne ? "at-most-one" : "density"}};
}

void from_json(const json &j, SamplingConfig &c) {
  c.num_wires = j.at("n").get<std::size_t>();
  c.p_cnot = j.at("p_cnot").get<double>();
  c.p_mcm = j.at("p_mcm").get<double>();
  c.edges.clear();
  for (const json &e : j.value("edges", json::array())) {
    c.edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
  }
  c.reset = j.value("reset", true);
  const std::string mode = j.value("mode", "at-most-one");
  if (mode == "at-most-one") {
    c.mode = SamplingMode::kAtMostOne;
  } else if (mode == "density") {
    c.mode = SamplingMode::kDensity;
  } else {
    throw SchemaError("Unknown sampling mode \"" + mode + "\"");
  }
  c.validate();
}

void to_json(json &j, const NoiseModel &n) {
  json twoq = json::object();
  for (std::size_t k = 1; k < 16; k++) {
    twoq[two_qubit_label(k)] = n.twoq.probs[k];
  }
  json mcm = {{"pre_flip", n.mcm.pre_flip},
              {"post_flip", n.mcm.post_flip},
              {"unmeasured_depolarizing", n.mcm.unmeasured_depolarizing}};
  if (n.mcm.table) {
    json entries = json::array();
    for (const auto &e : n.mcm.table->entries) {
      entries.push_back({{"pre", bits_to_string(e.pre_flip)},
                         {"unmeasured", e.unmeasured},
                         {"post", bits_to_string(e.post_flip)},
                         {"p", e.probability}});
    }
    mcm["table"] = {{"num_measured", n.mcm.table->num_measured},
                    {"num_unmeasured", n.mcm.table->num_unmeasured},
                    {"entries", entries}};
  }
  j = {{"oneq", {{"px", n.oneq.px}, {"py", n.oneq.py}, {"pz", n.oneq.pz}}}, {"twoq", twoq}, {"mcm", mcm}};
  if (n.final_readout_flip) {
    j["final_readout_flip"] = *n.final_readout_flip;
  }
}

void from_json(const json &j, NoiseModel &n) {
  n = NoiseModel{};
  if (j.contains("f1q") || j.contains("f2q") || j.contains("mcm_flip")) {
    n = NoiseModel::depolarizing(j.value("f1q", 1.0), j.value("f2q", 1.0), j.value("mcm_flip", 0.0));
  }
  if (j.contains("oneq")) {
    const json &o = j.at("oneq");
    if (o.contains("depolarizing")) {
      n.oneq = OneQubitPauliChannel::depolarizing(o.at("depolarizing").get<double>());
    } else if (o.contains("fidelity")) {
      n.oneq = OneQubitPauliChannel::from_fidelity(o.at("fidelity").get<double>());
    } else {
      n.oneq = {o.value("px", 0.0), o.value("py", 0.0), o.value("pz", 0.0)};
    }
  }
  if (j.contains("twoq")) {
    const json &t = j.at("twoq");
    if (t.contains("depolarizing")) {
      n.twoq = TwoQubitPauliChannel::depolarizing(t.at("depolarizing").get<double>());
    } else if (t.contains("fidelity")) {
      n.twoq = TwoQubitPauliChannel::from_fidelity(t.at("fidelity").get<double>());
    } else {
      n.twoq = TwoQubitPauliChannel{};
      for (auto it = t.begin(); it != t.end(); ++it) {
        std::size_t k = 16;
        for (std::size_t c = 1; c < 16; c++) {
          if (two_qubit_label(c) == it.key()) {
            k = c;
          }
        }
        if (k == 16) {
          throw SchemaError("Unknown two-qubit Pauli label \"" + it.key() + "\"");
        }
        n.twoq.probs[k] = it.value().get<double>();
      }
    }
  }
  if (j.contains("mcm")) {
    const json &m = j.at("mcm");
    n.mcm.pre_flip = m.value("pre_flip", n.mcm.pre_flip);
    n.mcm.post_flip = m.value("post_flip", n.mcm.post_flip);
    n.mcm.unmeasured_depolarizing = m.value("unmeasured_depolarizing", 0.0);
    if (m.contains("table")) {
      const json &t = m.at("table");
      InstrumentTable table;
      table.num_measured = t.at("num_measured").get<std::size_t>();
      table.num_unmeasured = t.at("num_unmeasured").get<std::size_t>();
      for (const json &e : t.at("entries")) {
        table.entries.push_back({bits_from_string(e.at("pre").get<std::string>()), e.at("unmeasured").get<std::string>(),
                                 bits_from_string(e.at("post").get<std::string>()), e.at("p").get<double>()});
      }
      n.mcm.table = std::move(table);
    }
  }
  if (j.contains("final_readout_flip")) {
    n.final_readout_flip = j.at("final_readout_flip").get<double>();
  }
  n.validate();
}

void to_json(json &j, const QirbCircuit &c) {
  json dressed = json::array();
  for (const DressedLayer &dl : c.dressed) {
    dressed.push_back({{"l1", layer_to_json(dl.l1)},
                       {"l2", layer_to_json(dl.l2)},
                       {"l3", layer_to_json(dl.l3)},
                       {"pre_meas", dl.pre_meas_component.str()},
                       {"post_meas", dl.post_meas_component.str()}});
  }
  json order = json::array();
  for (const McmSlot &s : c.mcm_bit_order) {
    order.push_back({s.layer, s.wire});
  }
  j = {{"n", c.num_wires},
       {"m", c.num_mcms},
       {"reset", c.reset},
       {"initial", c.initial.str()},
       {"prep", layer_to_json(c.prep)},
       {"dressed", dressed},
       {"final", layer_to_json(c.final_layer)},
       {"target", c.target.str()},
       {"discard_mask", bits_to_string(c.discard_mask)},
       {"mcm_bit_order", order}};
}

void from_json(const json &j, QirbCircuit &c) {
  c = QirbCircuit{};
  c.num_wires = j.at("n").get<std::size_t>();
  c.num_mcms = j.at("m").get<std::size_t>();
  c.reset = j.at("reset").get<bool>();
  const std::size_t n = c.num_wires;
  c.initial = pauli_from_json(j.at("initial"), n);
  c.prep = layer_from_json(j.at("prep"), n, true);
  std::size_t mcms = 0;
  for (const json &d : j.at("dressed")) {
    DressedLayer dl;
    dl.l1 = layer_from_json(d.at("l1"), n, true);
    dl.l2 = layer_from_json(d.at("l2"), n, c.reset);
    dl.l3 = layer_from_json(d.at("l3"), n, true);
    std::sort(dl.l2.mcm_wires.begin(), dl.l2.mcm_wires.end());
    dl.pre_meas_component = pauli_from_json(d.at("pre_meas"), n);
    dl.post_meas_component = pauli_from_json(d.at("post_meas"), n);
    mcms += dl.l2.mcm_wires.size();
    c.dressed.push_back(std::move(dl));
  }
  c.final_layer = layer_from_json(j.at("final"), n, true);
  c.target = TargetPauli::from_string(j.at("target").get<std::string>());
  c.discard_mask = bits_from_string(j.at("discard_mask").get<std::string>());
  for (const json &s : j.at("mcm_bit_order")) {
    c.mcm_bit_order.push_back({s.at(0).get<std::size_t>(), s.at(1).get<std::size_t>()});
  }
  if (mcms != c.num_mcms || c.mcm_bit_order.size() != mcms || c.target.size() != n + mcms ||
      c.discard_mask.size() != n + mcms) {
    throw SchemaError("Circuit record is inconsistent: m, bit order, target and discard mask sizes disagree");
  }
}

void to_json(json &j, const ExperimentDesign &d) {
  j = {{"n", d.sampling.num_wires},
       {"depths", d.depths},
       {"circuits_per_depth", d.circuits_per_depth},
       {"shots", d.shots},
       {"sampling", d.sampling},
       {"reset", d.sampling.reset},
       {"seed", d.seed}};
}

void from_json(const json &j, ExperimentDesign &d) {
  d.sampling = j.at("sampling").get<SamplingConfig>();
  d.depths = j.at("depths").get<std::vector<std::size_t>>();
  d.circuits_per_depth = j.at("circuits_per_depth").get<std::size_t>();
  d.shots = j.at("shots").get<std::size_t>();
  d.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("n") && j.at("n").get<std::size_t>() != d.sampling.num_wires) {
    throw SchemaError("Design wire count disagrees with its sampling block");
  }
  if (j.contains("reset") && j.at("reset").get<bool>() != d.sampling.reset) {
    throw SchemaError("Design reset flag disagrees with its sampling block");
  }
  d.validate();
}

void to_json(json &j, const ResultsData &r) {
  json circuits = json::array();
  for (const CircuitResult &c : r.circuits) {
    circuits.push_back({{"id", c.id},
                        {"depth", c.depth},
                        {"circuit", c.circuit},
                        {"counts", c.counts},
                        {"n_success", c.successes},
                        {"n_fail", c.failures}});
  }
  j = {{"design", r.design},
       {"noise", r.noise},
       {"reset_free_mode", reset_free_mode_name(r.reset_free_mode)},
       {"simulation_seed", r.simulation_seed},
       {"circuits", circuits}};
}

void from_json(const json &j, ResultsData &r) {
  r.design = j.at("design").get<ExperimentDesign>();
  r.noise = j.at("noise").get<NoiseModel>();
  r.reset_free_mode = parse_reset_free_mode(j.at("reset_free_mode").get<std::string>());
  r.simulation_seed = j.at("simulation_seed").get<std::uint64_t>();
  r.circuits.clear();
  for (const json &c : j.at("circuits")) {
    CircuitResult res;
    res.id = c.at("id").get<std::size_t>();
    res.depth = c.at("depth").get<std::size_t>();
    res.circuit = c.at("circuit").get<QirbCircuit>();
    res.counts = c.at("counts").get<std::map<std::string, std::uint64_t>>();
    res.successes = c.at("n_success").get<std::uint64_t>();
    res.failures = c.at("n_fail").get<std::uint64_t>();
    std::uint64_t total = 0;
    for (const auto &[bits, count] : res.counts) {
      if (bits.size() != res.circuit.num_outcome_bits()) {
        throw SchemaError("Outcome string length does not match circuit " + std::to_string(res.id));
      }
      total += count;
    }
    if (total != res.successes + res.failures) {
      throw SchemaError("Counts of circuit " + std::to_string(res.id) + " do not sum to n_success + n_fail");
    }
    r.circuits.push_back(std::move(res));
  }
}

json design_document(const ExperimentDesign &design) {
  json j = {{"schema", kDesignSchema}, {"version", kSchemaVersion}};
  j.update(json(design));
  return j;
}

json circuits_document(const ExperimentDesign &design, std::span<const DesignedCircuit> circuits) {
  json list = json::array();
  for (const DesignedCircuit &dc : circuits) {
    list.push_back({{"id", dc.id}, {"depth", dc.depth}, {"circuit", dc.circuit}});
  }
  return {{"schema", kCircuitsSchema}, {"version", kSchemaVersion}, {"design", design}, {"circuits", list}};
}

json noise_document(const NoiseModel &noise) {
  json j = {{"schema", kNoiseSchema}, {"version", kSchemaVersion}};
  j.update(json(noise));
  return j;
}

json results_document(const ResultsData &results) {
  json j = {{"schema", kResultsSchema}, {"version", kSchemaVersion}};
  j.update(json(results));
  return j;
}

json report_document(const AnalysisReport &report) {
  json datasets = json::array();
  for (const DatasetAnalysis &ds : report.datasets) {
    json depths = json::array();
    for (const DepthStats &s : ds.depths) {
      depths.push_back({{"depth", s.depth},
                        {"mean", s.mean},
                        {"stderr", s.stderr_mean},
                        {"n_circuits", s.circuit_f.size()},
                        {"circuit_f", s.circuit_f}});
    }
    datasets.push_back({{"source", ds.source},
                        {"sampling", ds.sampling},
                        {"fit",
                         {{"amplitude", ds.fit.amplitude},
                          {"r_omega", ds.fit.r_omega},
                          {"residual", ds.fit.residual},
                          {"weighted", ds.fit.weighted},
                          {"r_omega_bootstrap", bootstrap_json(ds.fit.r_bootstrap)},
                          {"amplitude_bootstrap", bootstrap_json(ds.fit.amplitude_bootstrap)}}},
                        {"depths", depths}});
  }
  json j = {{"schema", kReportSchema}, {"version", kSchemaVersion}, {"datasets", datasets}, {"notes", report.notes}};
  if (report.erm) {
    j["erm"] = {{"params", erm_params_json(report.erm->params)},
                {"sigma", erm_params_json(report.erm->sigma)},
                {"bootstrap_resamples", report.erm->bootstrap.size()},
                {"mse", report.erm->mse},
                {"converged", report.erm->converged},
                {"starts", report.erm->starts},
                {"diagnostics", report.erm->diagnostics}};
  }
  return j;
}

json prediction_document(const TheoryPrediction &prediction, const SamplingConfig &config, const NoiseModel &noise,
                         double amplitude, std::span<const std::size_t> depths) {
  json classes = json::array();
  for (const LayerClass &c : prediction.classes) {
    classes.push_back({{"k1", c.counts.k1},
                       {"k2", c.counts.k2},
                       {"km", c.counts.km},
                       {"probability", c.probability},
                       {"p_trans", c.p_trans}});
  }
  json curve = json::array();
  std::vector<double> values = predict_fbar_curve(amplitude, 0.5 * prediction.r_omega, depths);
  for (std::size_t i = 0; i < depths.size(); i++) {
    curve.push_back({{"depth", depths[i]}, {"fbar", values[i]}});
  }
  return {{"schema", kPredictionSchema},
          {"version", kSchemaVersion},
          {"sampling", config},
          {"noise", noise},
          {"method", prediction.method},
          {"r_omega", prediction.r_omega},
          {"r_omega_stderr", prediction.r_omega_stderr},
          {"eps_omega", prediction.eps_omega},
          {"bound", {{"lower", prediction.lower_bound}, {"upper", prediction.upper_bound}}},
          {"layer_classes", classes},
          {"amplitude", amplitude},
          {"curve", curve},
          {"warnings", prediction.warnings}};
}

ExperimentDesign parse_design_document(const json &j) {
  check_schema(j, kDesignSchema);
  return wrap_schema("design", [&] { return j.get<ExperimentDesign>(); });
}

std::vector<DesignedCircuit> parse_circuits_document(const json &j, ExperimentDesign *design) {
  check_schema(j, kCircuitsSchema);
  return wrap_schema("circuits file", [&] {
    if (design) {
      *design = j.at("design").get<ExperimentDesign>();
    }
    std::vector<DesignedCircuit> out;
    for (const json &c : j.at("circuits")) {
      out.push_back({c.at("id").get<std::size_t>(), c.at("depth").get<std::size_t>(),
                     c.at("circuit").get<QirbCircuit>()});
    }
    return out;
  });
}

NoiseModel parse_noise_document(const json &j) {
  check_schema(j, kNoiseSchema);
  return wrap_schema("noise model", [&] { return j.get<NoiseModel>(); });
}

ResultsData parse_results_document(const json &j) {
  check_schema(j, kResultsSchema);
  return wrap_schema("results file", [&] { return j.get<ResultsData>(); });
}

std::string curve_csv(const DatasetAnalysis &dataset) {
  std::ostringstream out;
  out.precision(17);
  out << "depth,mean,stderr,n_circuits\n";
  for (const DepthStats &s : dataset.depths) {
    out << s.depth << ',' << s.mean << ',' << s.stderr_mean << ',' << s.circuit_f.size() << '\n';
  }
  return out.str();
}

json read_json_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("Cannot open " + path.string());
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw SchemaError(path.string() + " is not valid JSON: " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path &path, const std::string &contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("Cannot write " + tmp.string());
    }
    out << contents;
    out.flush();
    if (!out) {
      throw std::runtime_error("Failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

void write_json_file(const std::filesystem::path &path, const json &j) {
  write_file_atomic(path, j.dump(1) + "\n");
}

}  // namespace qirb
