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

#include "qmem/cli.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qmem/ising.hpp"

namespace qmem::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_plain(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

std::string point_tag(double j, double h) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "J%.12g_h%.12g", j, h);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
}

std::string status_label(const WitnessReport& r) {
  if (!r.diagnostics) return "ok";
  std::string s = sdp::to_string(r.diagnostics->status);
  if (!r.diagnostics->verified) s += "_unverified";
  return s;
}

// Five-stop palette, dark (low) to light (high).
constexpr std::array<std::array<double, 3>, 5> kPalette{{
    {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};

std::string color_at(double u) {
  u = std::clamp(std::isfinite(u) ? u : 0.0, 0.0, 1.0);
  const double pos = u * (kPalette.size() - 1);
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(pos), kPalette.size() - 2);
  const double f = pos - k;
  char buf[16];
  int rgb[3];
  for (int c = 0; c < 3; ++c) {
    rgb[c] = static_cast<int>(std::lround(kPalette[k][c] + f * (kPalette[k + 1][c] - kPalette[k][c])));
  }
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string pi_label(int k) {
  if (k == 0) return "0";
  if (k == 1) return "π";
  return std::to_string(k) + "π";
}

}  // namespace

std::size_t Range::count() const {
  if (max == min) return 1;
  return static_cast<std::size_t>(std::llround((max - min) / step)) + 1;
}

std::vector<double> Range::points() const {
  const std::size_t n = count();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = n == 1 ? min : min + (max - min) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

double parse_number(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw std::invalid_argument("empty number");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const double den = parse_plain(trim(text.substr(slash + 1)));
    if (den == 0.0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return parse_number(text.substr(0, slash)) / den;
  }
  const auto pi_pos = text.find("pi");
  if (pi_pos != std::string::npos) {
    if (pi_pos + 2 != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
    std::string factor = trim(text.substr(0, pi_pos));
    if (!factor.empty() && factor.back() == '*') factor = trim(factor.substr(0, factor.size() - 1));
    const double f = factor.empty() ? 1.0 : factor == "-" ? -1.0 : parse_plain(factor);
    return f * std::numbers::pi;
  }
  return parse_plain(text);
}

Range parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw std::invalid_argument("range must be a:b:step, got '" + text + "'");
  Range r{parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2])};
  if (!std::isfinite(r.min) || !std::isfinite(r.max) || !std::isfinite(r.step)) {
    throw std::invalid_argument("range must be finite: '" + text + "'");
  }
  if (r.max < r.min) throw std::invalid_argument("range max below min: '" + text + "'");
  if (r.max > r.min && !(r.step > 0.0)) throw std::invalid_argument("range step must be positive: '" + text + "'");
  return r;
}

std::string to_string(SweepMethod m) {
  switch (m) {
    case SweepMethod::ppt: return "ppt";
    case SweepMethod::ppt_sdp: return "ppt_sdp";
    case SweepMethod::dps2: return "dps2";
    case SweepMethod::markov_distance: return "markov_distance";
  }
  return "unknown";
}

SweepMethod sweep_method_from_string(const std::string& s) {
  if (s == "ppt") return SweepMethod::ppt;
  if (s == "ppt_sdp") return SweepMethod::ppt_sdp;
  if (s == "dps2") return SweepMethod::dps2;
  if (s == "markov_distance") return SweepMethod::markov_distance;
  throw std::invalid_argument("unknown method '" + s + "'");
}

void SweepConfig::validate() const {
  for (const auto* r : {&j_range, &h_range}) {
    if (!std::isfinite(r->min) || !std::isfinite(r->max) || r->max < r->min) {
      throw std::invalid_argument("invalid range");
    }
    if (r->max > r->min && !(r->step > 0.0)) throw std::invalid_argument("range step must be positive");
  }
  if (!std::isfinite(t)) throw std::invalid_argument("t must be finite");
  if (methods.empty()) throw std::invalid_argument("at least one method is required");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
}

void apply_config_text(SweepConfig& config, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  bool methods_set = false;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string value = trim(line.substr(eq + 1));
    if (key == "j-range") {
      config.j_range = parse_range(value);
    } else if (key == "h-range") {
      config.h_range = parse_range(value);
    } else if (key == "t") {
      config.t = parse_number(value);
    } else if (key == "method" || key == "methods") {
      if (!methods_set) config.methods.clear();
      methods_set = true;
      for (const auto& m : split(value, ',')) config.methods.push_back(sweep_method_from_string(trim(m)));
    } else if (key == "seed") {
      config.seed = std::stoull(value);
    } else if (key == "workers") {
      config.workers = std::stoi(value);
    } else if (key == "norm") {
      if (value == "trace") {
        config.norm = Norm::trace;
      } else if (value == "frobenius") {
        config.norm = Norm::frobenius;
      } else {
        throw std::invalid_argument("unknown norm '" + value + "'");
      }
    } else if (key == "stride") {
      config.stride = std::stoi(value);
    } else if (key == "out") {
      config.out = value;
    } else if (key == "dump-sdp") {
      config.dump_sdp = value;
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
}

void apply_config_file(SweepConfig& config, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read config " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  apply_config_text(config, ss.str());
}

nlohmann::json sdp_dump(const ProcessMatrix& w, Method method) {
  sdp::Problem problem;
  switch (method) {
    case Method::ppt: return nullptr;
    case Method::ppt_sdp: problem = witness_sdp_problem(w.op()); break;
    case Method::dps2: problem = dps2_problem(w.op()).problem; break;
  }
  const auto result = sdp::solve(problem);
  return {{"method", to_string(method)}, {"problem", sdp::to_json(problem)}, {"result", sdp::to_json(result)}};
}

std::vector<SweepRow> evaluate_point(double j, double h, const SweepConfig& config) {
  std::vector<SweepRow> rows;
  std::optional<ProcessMatrix> w;
  std::string build_error;
  try {
    w = ising::process_matrix(j, h, config.t);
  } catch (const std::exception& e) {
    build_error = e.what();
  }
  for (auto m : config.methods) {
    SweepRow row{j, h, config.t, to_string(m), std::nan(""), "inconclusive", "error"};
    if (m == SweepMethod::markov_distance) row.verdict = "undetermined";
    if (!w) {
      rows.push_back(row);
      continue;
    }
    try {
      switch (m) {
        case SweepMethod::markov_distance: {
          row.value = markov_distance(*w, config.norm);
          row.verdict = row.value <= kProcessTol ? "markovian" : "non_markovian";
          row.status = "ok";
          break;
        }
        case SweepMethod::ppt:
        case SweepMethod::ppt_sdp:
        case SweepMethod::dps2: {
          WitnessReport r;
          Method method = Method::ppt;
          if (m == SweepMethod::ppt) {
            r = ppt_witness(*w);
          } else if (m == SweepMethod::ppt_sdp) {
            method = Method::ppt_sdp;
            r = witness_sdp(*w);
          } else {
            method = Method::dps2;
            r = dps2_feasibility(*w);
          }
          row.value = r.value;
          row.verdict = to_string(r.verdict);
          row.status = status_label(r);
          if (!config.dump_sdp.empty() && method != Method::ppt) {
            std::filesystem::create_directories(config.dump_sdp);
            const auto path = std::filesystem::path(config.dump_sdp) /
                              (point_tag(j, h) + "_" + to_string(method) + ".json");
            write_text(path.string(), sdp_dump(*w, method).dump());
          }
          break;
        }
      }
    } catch (const std::exception&) {
      row.status = "error";
    }
    rows.push_back(row);
  }
  return rows;
}

SweepTable sweep(const SweepConfig& config) {
  config.validate();
  std::vector<std::pair<double, double>> grid;
  const auto js = config.j_range.points();
  const auto hs = config.h_range.points();
  for (std::size_t a = 0; a < js.size(); a += config.stride) {
    for (std::size_t b = 0; b < hs.size(); b += config.stride) grid.emplace_back(js[a], hs[b]);
  }
  std::vector<std::vector<SweepRow>> slots(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < grid.size(); k = next++) {
      slots[k] = evaluate_point(grid[k].first, grid[k].second, config);
    }
  };
  const int n_threads = std::min<int>(config.workers, static_cast<int>(std::max<std::size_t>(grid.size(), 1)));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  SweepTable table;
  table.reserve(grid.size() * config.methods.size());
  for (auto& s : slots) {
    for (auto& row : s) table.push_back(std::move(row));
  }
  return table;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& os, const SweepTable& table) {
  os << "J,h,t,method,value,verdict,status\n";
  for (const auto& r : table) {
    os << format_number(r.j) << ',' << format_number(r.h) << ',' << format_number(r.t) << ',' << r.method << ','
       << format_number(r.value) << ',' << r.verdict << ',' << r.status << '\n';
  }
}

std::string to_csv(const SweepTable& table) {
  std::ostringstream os;
  write_csv(os, table);
  return os.str();
}

SweepTable read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != "J,h,t,method,value,verdict,status") {
    throw std::invalid_argument("unexpected CSV header");
  }
  SweepTable table;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 7) throw std::invalid_argument("CSV line " + std::to_string(line_no) + ": expected 7 fields");
    auto num = [](const std::string& s) { return s == "nan" ? std::nan("") : std::stod(s); };
    table.push_back({num(f[0]), num(f[1]), num(f[2]), f[3], num(f[4]), f[5], f[6]});
  }
  return table;
}

SweepTable read_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  return read_csv(is);
}

std::string render_heatmap(const SweepTable& table, const std::string& column, const HeatmapOptions& options) {
  std::vector<const SweepRow*> rows;
  for (const auto& r : table) {
    if (r.method == column) rows.push_back(&r);
  }
  if (rows.empty()) throw std::invalid_argument("no rows for column '" + column + "'");

  std::vector<double> js;
  std::vector<double> hs;
  for (const auto* r : rows) {
    js.push_back(r->j);
    hs.push_back(r->h);
  }
  std::sort(js.begin(), js.end());
  js.erase(std::unique(js.begin(), js.end()), js.end());
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());

  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -vmin;
  for (const auto* r : rows) {
    if (!std::isfinite(r->value)) continue;
    vmin = std::min(vmin, r->value);
    vmax = std::max(vmax, r->value);
  }
  if (!std::isfinite(vmin)) vmin = vmax = 0.0;
  const double span = vmax > vmin ? vmax - vmin : 1.0;

  const int cell = std::max(1, options.cell);
  const int nj = static_cast<int>(js.size());
  const int nh = static_cast<int>(hs.size());
  const int left = 56;
  const int top = 32;
  const int pw = nj * cell;
  const int ph = nh * cell;
  const int legend_x = left + pw + 24;
  const int width = legend_x + 90;
  const int height = top + ph + 48;

  auto x_of = [&](double j) {
    if (nj == 1) return left + 0.5 * cell;
    return left + 0.5 * cell + (j - js.front()) / (js.back() - js.front()) * (nj - 1) * cell;
  };
  auto y_of = [&](double h) {
    if (nh == 1) return top + 0.5 * cell;
    return top + ph - 0.5 * cell - (h - hs.front()) / (hs.back() - hs.front()) * (nh - 1) * cell;
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<defs><linearGradient id=\"scale\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">";
  for (int k = 0; k <= 4; ++k) {
    os << "<stop offset=\"" << fmt("%.2f", k / 4.0) << "\" stop-color=\"" << color_at(k / 4.0) << "\"/>";
  }
  os << "</linearGradient></defs>\n";
  const std::string title = options.title.empty() ? column : options.title;
  os << "<text x=\"" << left << "\" y=\"" << top - 12 << "\" font-size=\"13\">" << title << "</text>\n";

  os << "<g shape-rendering=\"crispEdges\">\n";
  for (const auto* r : rows) {
    const auto a = std::lower_bound(js.begin(), js.end(), r->j) - js.begin();
    const auto b = std::lower_bound(hs.begin(), hs.end(), r->h) - hs.begin();
    const std::string fill = std::isfinite(r->value) ? color_at((r->value - vmin) / span) : "#ffffff";
    os << "<rect x=\"" << left + a * cell << "\" y=\"" << top + (nh - 1 - b) * cell << "\" width=\"" << cell
       << "\" height=\"" << cell << "\" fill=\"" << fill << "\"/>\n";
  }
  os << "</g>\n";

  // Axes and ticks at multiples of pi.
  os << "<path d=\"M" << left << ' ' << top << "V" << top + ph << "H" << left + pw
     << "\" fill=\"none\" stroke=\"#000\"/>\n";
  const double pi = std::numbers::pi;
  for (int k = static_cast<int>(std::ceil(js.front() / pi - 1e-12)); k * pi <= js.back() + 1e-12; ++k) {
    const double x = x_of(k * pi);
    os << "<line x1=\"" << fmt("%.2f", x) << "\" y1=\"" << top + ph << "\" x2=\"" << fmt("%.2f", x) << "\" y2=\""
       << top + ph + 5 << "\" stroke=\"#000\"/>";
    os << "<text x=\"" << fmt("%.2f", x) << "\" y=\"" << top + ph + 17 << "\" text-anchor=\"middle\">"
       << pi_label(k) << "</text>\n";
  }
  for (int k = static_cast<int>(std::ceil(hs.front() / pi - 1e-12)); k * pi <= hs.back() + 1e-12; ++k) {
    const double y = y_of(k * pi);
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << fmt("%.2f", y) << "\" x2=\"" << left << "\" y2=\""
       << fmt("%.2f", y) << "\" stroke=\"#000\"/>";
    os << "<text x=\"" << left - 8 << "\" y=\"" << fmt("%.2f", y + 4) << "\" text-anchor=\"end\">" << pi_label(k)
       << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << top + ph + 34 << "\" text-anchor=\"middle\">J</text>\n";
  os << "<text x=\"" << left - 40 << "\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\">h</text>\n";

  const int lh = std::max(ph, 60);
  os << "<path d=\"M" << legend_x << ' ' << top << "h14v" << lh << "h-14z\" fill=\"url(#scale)\" stroke=\"#000\"/>\n";
  os << "<text x=\"" << legend_x + 18 << "\" y=\"" << top + 8 << "\">" << fmt("%.4g", vmax) << "</text>\n";
  os << "<text x=\"" << legend_x + 18 << "\" y=\"" << top + lh << "\">" << fmt("%.4g", vmin) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

WitnessExport export_witness(double j, double h, double t, Method method, const std::string& dump_sdp) {
  const auto w = ising::process_matrix(j, h, t);
  WitnessReport r;
  switch (method) {
    case Method::ppt: r = ppt_witness(w); break;
    case Method::ppt_sdp: r = witness_sdp(w); break;
    case Method::dps2: r = dps2_feasibility(w); break;
  }
  if (!dump_sdp.empty() && method != Method::ppt) write_text(dump_sdp, sdp_dump(w, method).dump(1));

  WitnessExport out;
  out.document = witness_to_json(r, w.op());
  out.document["parameters"] = {{"J", j}, {"h", h}, {"t", t}};
  if (r.diagnostics) {
    const auto s = r.diagnostics->status;
    const bool clean = (s == sdp::Status::optimal || s == sdp::Status::infeasible) && r.diagnostics->verified;
    if (!clean) {
      out.code = ExitCode::solver_failure;
      out.message = "solver failure: " + sdp::to_string(s) + (r.diagnostics->verified ? "" : " (not verified)");
      return out;
    }
  }
  if (r.verdict != Verdict::quantum_memory) {
    out.code = ExitCode::inconclusive;
    out.message = "inconclusive: no witness at J=" + format_number(j) + " h=" + format_number(h) +
                  " t=" + format_number(t) + " (value " + format_number(r.value) + ")";
    return out;
  }
  out.message = "witness written, Tr(ZW) = " + format_number(out.document["value"].get<double>());
  return out;
}

double evaluate_witness_document(const nlohmann::json& document, double j, double h, double t) {
  const auto z = operator_from_json(document.at("witness"));
  return hs_inner(z, ising::process_matrix(j, h, t).op()).real();
}

}  // namespace qmem::cli
