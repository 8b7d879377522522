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

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qmem/acceptance.hpp"
#include "qmem/cli.hpp"

namespace {

using qmem::cli::ExitCode;

int code(ExitCode c) { return static_cast<int>(c); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-memory detection in Ising-model processes"};
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Evaluate methods over a (J, h) grid and write CSV");
  std::string config_path;
  std::string j_range;
  std::string h_range;
  std::string t_text;
  std::vector<std::string> methods;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string norm;
  int stride = 1;
  std::string out;
  std::string dump_sdp;
  sweep->add_option("--config", config_path, "Flat key = value file; flags override it");
  auto* o_j = sweep->add_option("--j-range", j_range, "a:b:step (default 0:10:1/15)");
  auto* o_h = sweep->add_option("--h-range", h_range, "a:b:step (default 0:10:1/15)");
  auto* o_t = sweep->add_option("--t", t_text, "Evolution time (default 1)");
  auto* o_m = sweep->add_option("--method", methods, "ppt, ppt_sdp, dps2 or markov_distance; repeatable")
                  ->check(CLI::IsMember({"ppt", "ppt_sdp", "dps2", "markov_distance"}));
  auto* o_seed = sweep->add_option("--seed", seed, "Seed recorded with the run");
  auto* o_w = sweep->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  auto* o_n = sweep->add_option("--norm", norm, "Norm for markov_distance")->check(CLI::IsMember({"trace", "frobenius"}));
  auto* o_s = sweep->add_option("--stride", stride, "Keep every n-th grid point per axis")->check(CLI::PositiveNumber);
  auto* o_out = sweep->add_option("--out", out, "CSV path (default stdout)");
  auto* o_d = sweep->add_option("--dump-sdp", dump_sdp, "Directory for per-point SDP dumps");

  // heatmap
  auto* heatmap = app.add_subcommand("heatmap", "Render one method of a sweep CSV as SVG");
  std::string heat_in;
  std::string column;
  std::string heat_out;
  qmem::cli::HeatmapOptions heat_opts;
  heatmap->add_option("--in", heat_in, "Sweep CSV")->required();
  heatmap->add_option("--column", column, "Method whose values are drawn")->required();
  heatmap->add_option("--out", heat_out, "SVG path (default stdout)");
  heatmap->add_option("--cell", heat_opts.cell, "Cell size in pixels")->check(CLI::PositiveNumber);
  heatmap->add_option("--title", heat_opts.title, "Title text");

  // witness
  auto* witness = app.add_subcommand("witness", "Export a quantum-memory witness as JSON");
  witness->set_help_flag("--help", "Print this help message and exit");
  std::string w_j = "1";
  std::string w_h = "1";
  std::string w_t = "1";
  std::string w_method = "ppt";
  std::string w_out;
  std::string w_dump;
  witness->add_option("--j", w_j, "Coupling J");
  witness->add_option("--h", w_h, "Field h");
  witness->add_option("--t", w_t, "Evolution time");
  witness->add_option("--method", w_method, "ppt, ppt_sdp or dps2")->check(CLI::IsMember({"ppt", "ppt_sdp", "dps2"}));
  witness->add_option("--out", w_out, "JSON path (default stdout)");
  witness->add_option("--dump-sdp", w_dump, "Write the SDP and its result to this file");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  qmem::acceptance::Options acc;
  verify->add_option("--seed", acc.seed, "Seed for random points and samples");
  verify->add_option("--workers", acc.workers, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  verify->add_option("--criterion", acc.only, "Run only these criteria; repeatable")->check(CLI::Range(1, 8));
  bool quiet = false;
  verify->add_flag("--quiet", quiet, "Only print the summary lines");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) {
      qmem::cli::SweepConfig config;
      if (!config_path.empty()) qmem::cli::apply_config_file(config, config_path);
      if (o_j->count()) config.j_range = qmem::cli::parse_range(j_range);
      if (o_h->count()) config.h_range = qmem::cli::parse_range(h_range);
      if (o_t->count()) config.t = qmem::cli::parse_number(t_text);
      if (o_m->count()) {
        config.methods.clear();
        for (const auto& m : methods) config.methods.push_back(qmem::cli::sweep_method_from_string(m));
      }
      if (o_seed->count()) config.seed = seed;
      if (o_w->count()) config.workers = workers;
      if (o_n->count()) config.norm = norm == "frobenius" ? qmem::Norm::frobenius : qmem::Norm::trace;
      if (o_s->count()) config.stride = stride;
      if (o_out->count()) config.out = out;
      if (o_d->count()) config.dump_sdp = dump_sdp;
      const auto table = qmem::cli::sweep(config);
      if (config.out.empty()) {
        qmem::cli::write_csv(std::cout, table);
      } else {
        write_file(config.out, qmem::cli::to_csv(table));
      }
      bool failed = false;
      for (const auto& row : table) failed = failed || row.status == "error" || row.status.find("unverified") != std::string::npos ||
                                           row.status == "numerical_failure" || row.status == "max_iterations";
      if (failed) {
        std::cerr << "qmem: some grid points had solver failures (see status column)\n";
        return code(ExitCode::solver_failure);
      }
      return code(ExitCode::success);
    }
    if (heatmap->parsed()) {
      const auto svg = qmem::cli::render_heatmap(qmem::cli::read_csv_file(heat_in), column, heat_opts);
      if (heat_out.empty()) {
        std::cout << svg;
      } else {
        write_file(heat_out, svg);
      }
      return code(ExitCode::success);
    }
    if (witness->parsed()) {
      const auto result =
          qmem::cli::export_witness(qmem::cli::parse_number(w_j), qmem::cli::parse_number(w_h),
                                    qmem::cli::parse_number(w_t), qmem::method_from_string(w_method), w_dump);
      if (result.code != ExitCode::success) {
        std::cerr << "qmem: " << result.message << '\n';
        return code(result.code);
      }
      const auto text = result.document.dump(2) + "\n";
      if (w_out.empty()) {
        std::cout << text;
      } else {
        write_file(w_out, text);
      }
      std::cerr << result.message << '\n';
      return code(ExitCode::success);
    }
    if (verify->parsed()) {
      const auto results = qmem::acceptance::run(acc, quiet ? nullptr : &std::cout);
      bool all = true;
      for (const auto& r : results) {
        std::cout << qmem::acceptance::summary_line(r) << '\n';
        all = all && r.passed;
      }
      return all ? code(ExitCode::success) : code(ExitCode::usage);
    }
  } catch (const std::exception& e) {
    std::cerr << "qmem: " << e.what() << '\n';
    return code(ExitCode::usage);
  }
  return code(ExitCode::usage);
}
