// Copyright 2026 The qmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Parameter sweeps over the Ising model, CSV tables and SVG heatmaps.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmem/detect.hpp"
#include "qmem/process.hpp"

namespace qmem::cli {

enum class ExitCode : int { success = 0, usage = 1, inconclusive = 2, solver_failure = 3 };

/// Inclusive grid min, min + step, ..., max. A step that does not divide the
/// span is rounded to the nearest whole number of intervals.
struct Range {
  double min = 0.0;
  double max = 10.0;
  double step = 1.0 / 15.0;

  std::vector<double> points() const;
  std::size_t count() const;
};

/// "a:b:step"; each field is a number, a fraction p/q, or a multiple of pi
/// ("pi", "2pi", "pi/2").
Range parse_range(const std::string& text);
double parse_number(const std::string& text);

enum class SweepMethod { ppt, ppt_sdp, dps2, markov_distance };

std::string to_string(SweepMethod m);
SweepMethod sweep_method_from_string(const std::string& s);

struct SweepConfig {
  Range j_range;
  Range h_range;
  double t = 1.0;
  std::vector<SweepMethod> methods{SweepMethod::ppt};
  std::string out;
  std::uint64_t seed = 0;
  int workers = 1;
  Norm norm = Norm::trace;
  /// Keep every stride-th grid point along each axis.
  int stride = 1;
  /// Directory receiving one JSON file per SDP solved; empty disables.
  std::string dump_sdp;

  /// Throws std::invalid_argument on an unusable configuration.
  void validate() const;
};

/// Flat "key = value" lines, '#' comments. Keys: j-range, h-range, t, method
/// (comma separated), seed, workers, norm, stride, out, dump-sdp.
void apply_config_text(SweepConfig& config, const std::string& text);
void apply_config_file(SweepConfig& config, const std::string& path);

struct SweepRow {
  double j = 0.0;
  double h = 0.0;
  double t = 0.0;
  std::string method;
  double value = 0.0;
  std::string verdict;
  std::string status;
};

using SweepTable = std::vector<SweepRow>;

/// One row per grid point per method, J-major then h, methods in config
/// order. Independent of the worker count.
SweepTable sweep(const SweepConfig& config);

/// Rows for a single (J, h) point.
std::vector<SweepRow> evaluate_point(double j, double h, const SweepConfig& config);

/// Header J,h,t,method,value,verdict,status; 12 significant digits.
std::string format_number(double v);
void write_csv(std::ostream& os, const SweepTable& table);
std::string to_csv(const SweepTable& table);
SweepTable read_csv(std::istream& is);
SweepTable read_csv_file(const std::string& path);

struct HeatmapOptions {
  int cell = 4;
  std::string title;
};

/// SVG heatmap of the value column for one method: one rect per cell, J
/// horizontal, h vertical (up), ticks at multiples of pi, gradient legend.
/// Throws std::invalid_argument when the table has no rows for `column`.
std::string render_heatmap(const SweepTable& table, const std::string& column,
                           const HeatmapOptions& options = {});

struct WitnessExport {
  ExitCode code = ExitCode::success;
  std::string message;
  nlohmann::json document;
};

/// Builds the witness at (J, h, t) with `method`; code is inconclusive when
/// no witness exists and solver_failure when the SDP did not terminate
/// cleanly. A non-empty dump_sdp path receives the SDP and its result.
WitnessExport export_witness(double j, double h, double t, Method method,
                             const std::string& dump_sdp = {});

/// {"problem": ..., "result": ...} for the SDP behind `method` at W; null
/// for the eigenvalue test.
nlohmann::json sdp_dump(const ProcessMatrix& w, Method method);

/// Tr(Z W(J, h, t)) for a witness document produced by export_witness.
double evaluate_witness_document(const nlohmann::json& document, double j, double h, double t);

}  // namespace qmem::cli
