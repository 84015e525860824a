#pragma once

// d-B sweep engine and the plot-ready output formats.  Rows are emitted in
// ascending d within ascending B, formatted with 17 significant digits so a
// round trip through the text form is bit-exact and reruns are
// byte-deterministic.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "bosecasimir/casimir.hpp"
#include "bosecasimir/errors.hpp"
#include "bosecasimir/physics.hpp"
#include "bosecasimir/types.hpp"

namespace bosecasimir::sweep {

enum class OutputFormat { Csv, Jsonl };

inline OutputFormat format_from_label(const std::string& label) {
  if (label == "csv") return OutputFormat::Csv;
  if (label == "jsonl") return OutputFormat::Jsonl;
  throw ConfigError("unknown format '" + label + "' (expected csv|jsonl)");
}

struct SweepConfig {
  double d_min = 0.1;
  double d_max = 3.0;
  int points = 600;
  std::vector<double> b_values = {0.02, 0.04, 0.06, 0.08};
  casimir::Term term = casimir::Term::All;
  bool emit_imaginary = true;
  OutputFormat format = OutputFormat::Csv;

  void validate() const {
    if (!(d_min > 0.0)) throw ConfigError("sweep: d_min must be > 0");
    if (!(d_max > d_min)) throw ConfigError("sweep: d_max must exceed d_min");
    if (points < 2) throw ConfigError("sweep: points must be >= 2");
    if (b_values.empty()) throw ConfigError("sweep: B list must be nonempty");
    for (double b : b_values) {
      if (!(b > 0.0)) throw ConfigError("sweep: every B must be > 0");
    }
  }
};

struct SweepRow {
  double d;
  double magnetic_field;
  casimir::Term term;
  Complex potential;
  Complex force;
  physics::Regime regime;
};

inline std::vector<double> linear_grid(double lo, double hi, int points) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = lo + i * step;
  grid.back() = hi;
  return grid;
}

/// One row per (d, B) from the closed potential and force, B ascending
/// outer, d ascending inner.  Deterministic across runs.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg,
                                       physics::PhysicalParams params,
                                       int points_override = 0) {
  cfg.validate();
  const int points = points_override > 0 ? points_override : cfg.points;
  std::vector<double> fields = cfg.b_values;
  std::sort(fields.begin(), fields.end());
  const std::vector<double> grid = linear_grid(cfg.d_min, cfg.d_max, points);

  std::vector<SweepRow> rows;
  rows.reserve(fields.size() * grid.size());
  for (double b : fields) {
    params.magnetic_field = b;
    const physics::Regime regime = physics::classify_regime(params);
    for (double d : grid) {
      rows.push_back({d, b, cfg.term,
                      casimir::potential_closed(params, d, cfg.term).value,
                      casimir::force_closed(params, d, cfg.term).analytic,
                      regime});
    }
  }
  return rows;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline constexpr const char* kCsvHeader =
    "d,B,term,potential_re,potential_im,force_re,force_im,regime";

inline std::string to_csv_line(const SweepRow& row) {
  std::string line;
  line.reserve(160);
  line += format_double(row.d);
  line += ',';
  line += format_double(row.magnetic_field);
  line += ',';
  line += casimir::term_label(row.term);
  line += ',';
  line += format_double(row.potential.real());
  line += ',';
  line += format_double(row.potential.imag());
  line += ',';
  line += format_double(row.force.real());
  line += ',';
  line += format_double(row.force.imag());
  line += ',';
  line += physics::regime_name(row.regime);
  line += '\n';
  return line;
}

inline std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const SweepRow& row : rows) out += to_csv_line(row);
  return out;
}

inline std::string to_jsonl_line(const SweepRow& row, bool emit_imaginary) {
  nlohmann::ordered_json j;
  j["d"] = row.d;
  j["B"] = row.magnetic_field;
  j["term"] = casimir::term_label(row.term);
  j["potential_re"] = row.potential.real();
  if (emit_imaginary) j["potential_im"] = row.potential.imag();
  j["force_re"] = row.force.real();
  if (emit_imaginary) j["force_im"] = row.force.imag();
  j["regime"] = physics::regime_name(row.regime);
  return j.dump() + "\n";
}

inline std::string to_jsonl(const std::vector<SweepRow>& rows,
                            bool emit_imaginary) {
  std::string out;
  for (const SweepRow& row : rows) out += to_jsonl_line(row, emit_imaginary);
  return out;
}

inline std::string render(const std::vector<SweepRow>& rows,
                          const SweepConfig& cfg) {
  return cfg.format == OutputFormat::Csv ? to_csv(rows)
                                         : to_jsonl(rows, cfg.emit_imaginary);
}

/// Sign changes across the sample sequence; exact zeros are skipped so a
/// crossing that lands on a grid point still counts once.
inline int zero_crossings(const std::vector<double>& samples) {
  int count = 0;
  double last_sign = 0.0;
  for (double v : samples) {
    if (v == 0.0) continue;
    const double sign = v > 0.0 ? 1.0 : -1.0;
    if (last_sign != 0.0 && sign != last_sign) ++count;
    last_sign = sign;
  }
  return count;
}

/// Oscillation wavelength in d for A > 0 is 2 pi / (sqrt(2 pi) |u(d=1)|);
/// returns the point count needed for 20 samples per period across the
/// fastest-oscillating B, or the configured count if already denser.
inline int nyquist_points(const SweepConfig& cfg,
                          physics::PhysicalParams params) {
  int needed = cfg.points;
  for (double b : cfg.b_values) {
    params.magnetic_field = b;
    if (physics::classify_regime(params) != physics::Regime::Oscillatory) {
      continue;
    }
    const double phase_rate = std::sqrt(2.0 * std::numbers::pi) *
                              std::abs(physics::u_parameter(params, 1.0).imag());
    const double period = 2.0 * std::numbers::pi / phase_rate;
    const double want =
        std::ceil(20.0 * (cfg.d_max - cfg.d_min) / period) + 1.0;
    if (want > needed) needed = static_cast<int>(want);
  }
  return needed;
}

struct FigureSummary {
  std::string file;
  casimir::Term term;
  // parallel to the sorted B list
  std::vector<double> b_values;
  std::vector<int> crossings;
  std::vector<double> max_abs_re_force;
};

struct FiguresResult {
  int points = 0;
  std::vector<FigureSummary> figures;
};

inline nlohmann::ordered_json summary_to_json(const FiguresResult& result,
                                              const SweepConfig& cfg) {
  nlohmann::ordered_json root;
  root["d_min"] = cfg.d_min;
  root["d_max"] = cfg.d_max;
  root["points"] = result.points;
  root["figures"] = nlohmann::ordered_json::array();
  for (const FigureSummary& fig : result.figures) {
    nlohmann::ordered_json jf;
    jf["file"] = fig.file;
    jf["term"] = casimir::term_label(fig.term);
    jf["per_B"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < fig.b_values.size(); ++i) {
      nlohmann::ordered_json jb;
      jb["B"] = fig.b_values[i];
      jb["zero_crossings"] = fig.crossings[i];
      jb["max_abs_re_force"] = fig.max_abs_re_force[i];
      jf["per_B"].push_back(std::move(jb));
    }
    root["figures"].push_back(std::move(jf));
  }
  return root;
}

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& content) {
  std::ofstream out(path, std::ios::binary);  // LF endings everywhere
  out << content;
  out.flush();
  if (!out.good()) {
    throw IoError("failed to write " + path.string());
  }
}

/// Emits fig1..fig4 CSV datasets (terms n5, n4, n3, all) plus summary.json
/// with per-B zero-crossing counts and force amplitudes.  The d-grid is
/// densified to 20 samples per estimated oscillation period when the
/// configured count would undersample.
inline FiguresResult write_figures(const SweepConfig& cfg,
                                   const physics::PhysicalParams& params,
                                   const std::filesystem::path& out_dir) {
  cfg.validate();
  std::filesystem::create_directories(out_dir);

  const int points = nyquist_points(cfg, params);
  const struct {
    const char* file;
    casimir::Term term;
  } figures[] = {{"fig1.csv", casimir::Term::OrderN5},
                 {"fig2.csv", casimir::Term::OrderN4},
                 {"fig3.csv", casimir::Term::OrderN3},
                 {"fig4.csv", casimir::Term::All}};

  FiguresResult result;
  result.points = points;
  for (const auto& fig : figures) {
    SweepConfig fig_cfg = cfg;
    fig_cfg.term = fig.term;
    const std::vector<SweepRow> rows = run_sweep(fig_cfg, params, points);
    write_text_file(out_dir / fig.file, to_csv(rows));

    FigureSummary summary;
    summary.file = fig.file;
    summary.term = fig.term;
    std::vector<double> fields = cfg.b_values;
    std::sort(fields.begin(), fields.end());
    const std::size_t stride = static_cast<std::size_t>(points);
    for (std::size_t bi = 0; bi < fields.size(); ++bi) {
      std::vector<double> re(stride);
      double max_abs = 0.0;
      for (std::size_t i = 0; i < stride; ++i) {
        re[i] = rows[bi * stride + i].force.real();
        max_abs = std::max(max_abs, std::abs(re[i]));
      }
      summary.b_values.push_back(fields[bi]);
      summary.crossings.push_back(zero_crossings(re));
      summary.max_abs_re_force.push_back(max_abs);
    }
    result.figures.push_back(std::move(summary));
  }
  write_text_file(out_dir / "summary.json",
                  summary_to_json(result, cfg).dump(2) + "\n");
  return result;
}

}  // namespace bosecasimir::sweep
