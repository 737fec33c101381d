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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qirb/pipeline.hpp"
#include "qirb/theory.hpp"

namespace qirb {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kDesignSchema = "qirb.design";
inline constexpr std::string_view kCircuitsSchema = "qirb.circuits";
inline constexpr std::string_view kNoiseSchema = "qirb.noise";
inline constexpr std::string_view kResultsSchema = "qirb.results";
inline constexpr std::string_view kReportSchema = "qirb.report";
inline constexpr std::string_view kPredictionSchema = "qirb.prediction";

void to_json(json &j, const SamplingConfig &c);
void from_json(const json &j, SamplingConfig &c);
void to_json(json &j, const NoiseModel &n);
void from_json(const json &j, NoiseModel &n);
void to_json(json &j, const QirbCircuit &c);
void from_json(const json &j, QirbCircuit &c);
void to_json(json &j, const ExperimentDesign &d);
void from_json(const json &j, ExperimentDesign &d);
void to_json(json &j, const ResultsData &r);
void from_json(const json &j, ResultsData &r);

json design_document(const ExperimentDesign &design);
json circuits_document(const ExperimentDesign &design, std::span<const DesignedCircuit> circuits);
json noise_document(const NoiseModel &noise);
json results_document(const ResultsData &results);
json report_document(const AnalysisReport &report);
json prediction_document(const TheoryPrediction &prediction, const SamplingConfig &config, const NoiseModel &noise,
                         double amplitude, std::span<const std::size_t> depths);

ExperimentDesign parse_design_document(const json &j);
std::vector<DesignedCircuit> parse_circuits_document(const json &j, ExperimentDesign *design = nullptr);
NoiseModel parse_noise_document(const json &j);
ResultsData parse_results_document(const json &j);

/// Throws SchemaError unless `j` declares schema `kind` at kSchemaVersion.
void check_schema(const json &j, std::string_view kind);

/// Depth table as CSV with header depth,mean,stderr,n_circuits.
std::string curve_csv(const DatasetAnalysis &dataset);

json read_json_file(const std::filesystem::path &path);
/// Writes via a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::filesystem::path &path, const std::string &contents);
void write_json_file(const std::filesystem::path &path, const json &j);

std::string_view reset_free_mode_name(ResetFreeMode mode);
ResetFreeMode parse_reset_free_mode(std::string_view name);

}  // namespace qirb
