// Command-line front end: parameter/config ingestion, d-B sweeps, the
// verification suite, and figure-dataset emission.
//
// Exit codes (stable contract):
//   0 success, 1 verification failure, 2 configuration error,
//   3 numerical domain error, 4 I/O error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bosecasimir/bosecasimir.hpp"

namespace {

using bosecasimir::Complex;
using bosecasimir::ConfigError;
namespace casimir = bosecasimir::casimir;
namespace oracles = bosecasimir::oracles;
namespace physics = bosecasimir::physics;
namespace sweep = bosecasimir::sweep;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

// One entry per flag that a JSON config file may mirror (key = long flag
// name without the leading dashes).  Explicit command-line flags win.
struct ConfigBinding {
  std::string key;
  CLI::Option* option;
  std::function<void(const nlohmann::json&)> apply;
};

void apply_config_file(const std::string& path,
                       const std::vector<ConfigBinding>& bindings) {
  std::ifstream in(path);
  if (!in.good()) {
    throw ConfigError("config file '" + path + "' is not readable");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config file '" + path + "' must hold a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const ConfigBinding& b : bindings) {
      if (b.key != key) continue;
      known = true;
      if (b.option == nullptr || b.option->count() == 0) {  // flags win
        try {
          b.apply(value);
        } catch (const nlohmann::json::exception& e) {
          throw ConfigError("config key '" + key + "': " + e.what());
        }
      }
      break;
    }
    if (!known) throw ConfigError("config file: unknown key '" + key + "'");
  }
}

struct ParamOptions {
  physics::PhysicalParams params;
  std::vector<ConfigBinding> bindings;
};

void add_param_options(CLI::App* cmd, ParamOptions& po) {
  struct Field {
    const char* flag;
    const char* key;
    double* target;
    const char* help;
  };
  const Field fields[] = {
      {"--mass", "mass", &po.params.mass, "Particle mass m"},
      {"--charge", "charge", &po.params.charge, "Particle charge q"},
      {"--light-speed", "light-speed", &po.params.light_speed,
       "Speed of light c"},
      {"--planck-h", "planck-h", &po.params.planck_h,
       "Planck constant h (unreduced)"},
      {"--boltzmann-k", "boltzmann-k", &po.params.boltzmann_k,
       "Boltzmann constant k_B"},
      {"--temperature", "temperature", &po.params.temperature,
       "Temperature T (the figures fix T = T_c = 1)"},
      {"--electric-field", "electric-field", &po.params.electric_field,
       "Electric field F"},
  };
  for (const Field& f : fields) {
    CLI::Option* opt = cmd->add_option(f.flag, *f.target, f.help);
    double* target = f.target;
    po.bindings.push_back(
        {f.key, opt, [target](const nlohmann::json& v) { *target = v.get<double>(); }});
  }
}

std::string report_to_jsonl(const oracles::OracleReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["lhs_re"] = r.lhs.real();
  j["lhs_im"] = r.lhs.imag();
  j["rhs_re"] = r.rhs.real();
  j["rhs_im"] = r.rhs.imag();
  j["abs_error"] = r.abs_error;
  j["rel_error"] = r.rel_error;
  j["passed"] = r.passed;
  j["tolerance"] = r.tolerance;
  j["erratum"] = r.erratum;
  j["skipped"] = r.skipped;
  j["validity_flagged"] = r.validity_flagged;
  j["detail"] = r.detail;
  return j.dump() + "\n";
}

int run_sweep_command(const sweep::SweepConfig& cfg,
                      const physics::PhysicalParams& params) {
  cfg.validate();
  const std::string out = sweep::render(sweep::run_sweep(cfg, params), cfg);
  std::fwrite(out.data(), 1, out.size(), stdout);
  return kExitOk;
}

int run_verify_command(const physics::PhysicalParams& params,
                       double tolerance_override, bool strict_regime) {
  oracles::VerifyConfig vcfg;
  vcfg.tolerance_override = tolerance_override;
  const auto reports = oracles::run_verification_suite(params, vcfg);
  for (const auto& r : reports) {
    const std::string line = report_to_jsonl(r);
    std::fwrite(line.data(), 1, line.size(), stdout);
  }
  if (strict_regime) {
    // Audit: a skip is only legitimate when the regime actually forbids the
    // oracle; in the decaying regime nothing may be skipped.
    const bool decaying =
        physics::classify_regime(params) == physics::Regime::Decaying;
    for (const auto& r : reports) {
      if (r.skipped && decaying) {
        std::fprintf(stderr, "strict-regime: '%s' skipped without cause\n",
                     r.name.c_str());
        return kExitVerifyFailed;
      }
    }
  }
  return oracles::suite_passed(reports) ? kExitOk : kExitVerifyFailed;
}

int run_figures_command(const sweep::SweepConfig& cfg,
                        const physics::PhysicalParams& params,
                        const std::string& out_dir) {
  cfg.validate();
  const sweep::FiguresResult result =
      sweep::write_figures(cfg, params, out_dir);
  std::printf("wrote fig1.csv fig2.csv fig3.csv fig4.csv summary.json to %s "
              "(%d points per B)\n",
              out_dir.c_str(), result.points);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir potential and force of a charged, trapped Bose gas "
               "between parallel plates in crossed electric and magnetic "
               "fields"};
  app.require_subcommand(1);

  // ---- sweep ----
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Evaluate potential and force over a d grid for each B");
  sweep::SweepConfig sweep_cfg;
  ParamOptions sweep_po;
  std::string sweep_config_file, sweep_term = "all", sweep_format = "csv";
  add_param_options(sweep_cmd, sweep_po);
  auto* opt_b = sweep_cmd->add_option("--B", sweep_cfg.b_values,
                                      "Magnetic field values")
                    ->delimiter(',');
  auto* opt_dmin = sweep_cmd->add_option("--d-min", sweep_cfg.d_min,
                                         "Smallest plate separation");
  auto* opt_dmax = sweep_cmd->add_option("--d-max", sweep_cfg.d_max,
                                         "Largest plate separation");
  auto* opt_points =
      sweep_cmd->add_option("--points", sweep_cfg.points, "Grid size");
  auto* opt_term = sweep_cmd->add_option(
      "--term", sweep_term, "Summand family: n3|n4|n5|all");
  auto* opt_format =
      sweep_cmd->add_option("--format", sweep_format, "Output: csv|jsonl");
  auto* opt_imag = sweep_cmd->add_option(
      "--emit-imaginary", sweep_cfg.emit_imaginary,
      "Include imaginary parts in JSONL output (CSV always carries them)");
  sweep_cmd->add_option("--config", sweep_config_file,
                        "JSON file mirroring the flag names");
  sweep_po.bindings.push_back({"B", opt_b, [&](const nlohmann::json& v) {
    sweep_cfg.b_values = v.is_array() ? v.get<std::vector<double>>()
                                      : std::vector<double>{v.get<double>()};
  }});
  sweep_po.bindings.push_back({"d-min", opt_dmin, [&](const nlohmann::json& v) {
    sweep_cfg.d_min = v.get<double>();
  }});
  sweep_po.bindings.push_back({"d-max", opt_dmax, [&](const nlohmann::json& v) {
    sweep_cfg.d_max = v.get<double>();
  }});
  sweep_po.bindings.push_back({"points", opt_points, [&](const nlohmann::json& v) {
    sweep_cfg.points = v.get<int>();
  }});
  sweep_po.bindings.push_back({"term", opt_term, [&](const nlohmann::json& v) {
    sweep_term = v.get<std::string>();
  }});
  sweep_po.bindings.push_back({"format", opt_format, [&](const nlohmann::json& v) {
    sweep_format = v.get<std::string>();
  }});
  sweep_po.bindings.push_back({"emit-imaginary", opt_imag,
                               [&](const nlohmann::json& v) {
    sweep_cfg.emit_imaginary = v.get<bool>();
  }});

  // ---- verify ----
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Run the oracle suite and stream JSON-line reports");
  ParamOptions verify_po;
  double verify_b = 2.0, verify_tolerance = 0.0;
  bool strict_regime = false;
  std::string verify_config_file;
  add_param_options(verify_cmd, verify_po);
  auto* opt_vb = verify_cmd->add_option("--B", verify_b,
                                        "Magnetic field for the suite");
  auto* opt_vtol = verify_cmd->add_option(
      "--tolerance", verify_tolerance,
      "Override every oracle tolerance (testing hook)");
  auto* opt_strict = verify_cmd->add_flag(
      "--strict-regime", strict_regime,
      "Fail if any oracle was skipped without a regime justification");
  verify_cmd->add_option("--config", verify_config_file,
                         "JSON file mirroring the flag names");
  verify_po.bindings.push_back({"B", opt_vb, [&](const nlohmann::json& v) {
    verify_b = v.get<double>();
  }});
  verify_po.bindings.push_back({"tolerance", opt_vtol,
                                [&](const nlohmann::json& v) {
    verify_tolerance = v.get<double>();
  }});
  verify_po.bindings.push_back({"strict-regime", opt_strict,
                                [&](const nlohmann::json& v) {
    strict_regime = v.get<bool>();
  }});

  // ---- figures ----
  CLI::App* figures_cmd = app.add_subcommand(
      "figures", "Write fig1..fig4 datasets plus a zero-crossing summary");
  sweep::SweepConfig fig_cfg;
  ParamOptions fig_po;
  std::string fig_out = "figures_out", fig_config_file;
  add_param_options(figures_cmd, fig_po);
  auto* opt_fb = figures_cmd->add_option("--B", fig_cfg.b_values,
                                         "Magnetic field values")
                     ->delimiter(',');
  auto* opt_fdmin = figures_cmd->add_option("--d-min", fig_cfg.d_min,
                                            "Smallest plate separation");
  auto* opt_fdmax = figures_cmd->add_option("--d-max", fig_cfg.d_max,
                                            "Largest plate separation");
  auto* opt_fpoints = figures_cmd->add_option(
      "--points", fig_cfg.points,
      "Grid size (densified to 20 samples per oscillation period)");
  auto* opt_fout =
      figures_cmd->add_option("--out", fig_out, "Output directory");
  figures_cmd->add_option("--config", fig_config_file,
                          "JSON file mirroring the flag names");
  fig_po.bindings.push_back({"B", opt_fb, [&](const nlohmann::json& v) {
    fig_cfg.b_values = v.is_array() ? v.get<std::vector<double>>()
                                    : std::vector<double>{v.get<double>()};
  }});
  fig_po.bindings.push_back({"d-min", opt_fdmin, [&](const nlohmann::json& v) {
    fig_cfg.d_min = v.get<double>();
  }});
  fig_po.bindings.push_back({"d-max", opt_fdmax, [&](const nlohmann::json& v) {
    fig_cfg.d_max = v.get<double>();
  }});
  fig_po.bindings.push_back({"points", opt_fpoints, [&](const nlohmann::json& v) {
    fig_cfg.points = v.get<int>();
  }});
  fig_po.bindings.push_back({"out", opt_fout, [&](const nlohmann::json& v) {
    fig_out = v.get<std::string>();
  }});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (sweep_cmd->parsed()) {
      if (!sweep_config_file.empty()) {
        apply_config_file(sweep_config_file, sweep_po.bindings);
      }
      sweep_cfg.term = casimir::term_from_label(sweep_term);
      sweep_cfg.format = sweep::format_from_label(sweep_format);
      return run_sweep_command(sweep_cfg, sweep_po.params);
    }
    if (verify_cmd->parsed()) {
      if (!verify_config_file.empty()) {
        apply_config_file(verify_config_file, verify_po.bindings);
      }
      verify_po.params.magnetic_field = verify_b;
      verify_po.params.validate();
      return run_verify_command(verify_po.params, verify_tolerance,
                                strict_regime);
    }
    if (figures_cmd->parsed()) {
      if (!fig_config_file.empty()) {
        apply_config_file(fig_config_file, fig_po.bindings);
      }
      return run_figures_command(fig_cfg, fig_po.params, fig_out);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const bosecasimir::DomainError& e) {
    std::fprintf(stderr, "numerical domain error: %s\n", e.what());
    return kExitNumerical;
  } catch (const bosecasimir::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitOk;
}
