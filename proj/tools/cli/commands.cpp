#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "cli/cli.hpp"
#include "cli/config.hpp"
#include "cli/format.hpp"
#include "idpart/idpart.hpp"

namespace idpart::cli {

namespace {

enum class Format { kCsv, kJson };

struct Options {
  std::string config_path;
  std::string output_path;
  Format format = Format::kCsv;
  bool baseline = false;
};

constexpr long long kMaxCount = 1'000'000;

Json json_number(double value) { return Json(round12(value)); }

Json json_complex(Complex c) { return Json::array({round12(c.real()), round12(c.imag())}); }

Json interleaved(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(round12(v[i].real()));
    out.push_back(round12(v[i].imag()));
  }
  return out;
}

std::string join_ints(const std::vector<int>& values, char sep) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(values[i]);
  }
  return s;
}

OneParticleBasis basis_from_config(const Json& cfg, std::optional<long long> d) {
  if (auto labels = optional_string_list(cfg, "labels")) {
    if (d && static_cast<std::size_t>(*d) != labels->size()) {
      throw ConfigError("'labels' must list exactly d mode names");
    }
    try {
      return OneParticleBasis(std::move(*labels));
    } catch (const Error& e) {
      throw ConfigError(std::string("'labels': ") + e.what());
    }
  }
  if (!d) throw ConfigError("either 'd' or 'labels' is required");
  return OneParticleBasis::numbered(static_cast<std::size_t>(*d));
}

ExchangeSector sector_from_config(const Json& cfg, bool required) {
  auto name = optional_string(cfg, "sector");
  if (!name) {
    if (required) throw ConfigError("'sector' is required (symmetric | antisymmetric)");
    return ExchangeSector::kSymmetric;
  }
  try {
    return parse_exchange_sector(*name);
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
}

// ---------------------------------------------------------------------------
// count

void cmd_count(const Json& cfg, const Options& opt, std::ostream& out) {
  require_known_keys(cfg, {"N", "P", "n", "d", "kinds", "k", "epsilon", "enumerate", "cap"}, "");
  const auto big_n = optional_int(cfg, "N", 1, kMaxCount);
  const auto big_p = optional_int(cfg, "P", 0, kMaxCount);
  const auto n = optional_int(cfg, "n", 0, kMaxCount);
  const auto d = optional_int(cfg, "d", 1, kMaxCount);
  const double k = optional_number(cfg, "k").value_or(1.0);
  const double epsilon = optional_number(cfg, "epsilon").value_or(1.0);
  const bool enumerate = optional_bool(cfg, "enumerate").value_or(false);
  const auto cap = static_cast<std::size_t>(
      optional_int(cfg, "cap", 1, std::numeric_limits<int>::max()).value_or(kDefaultEnumerationCap));

  if (big_n.has_value() != big_p.has_value()) throw ConfigError("'N' and 'P' must be given together");
  if (n.has_value() != d.has_value()) throw ConfigError("'n' and 'd' must be given together");
  if (!big_n && !n) throw ConfigError("nothing to count: give 'N' and 'P', or 'n' and 'd'");
  if (cfg.contains("kinds") && !n) throw ConfigError("'kinds' requires 'n' and 'd'");

  std::vector<StatisticsKind> kinds;
  if (auto names = optional_string_list(cfg, "kinds")) {
    for (const auto& name : *names) {
      try {
        kinds.push_back(parse_statistics_kind(name));
      } catch (const ParseError& e) {
        throw ConfigError(e.what());
      }
    }
  } else if (n) {
    kinds = {StatisticsKind::kBoltzmann, StatisticsKind::kBoseEinstein, StatisticsKind::kFermiDirac};
  }

  struct Row {
    std::string statistics;
    long long modes;
    long long particles;
    BigInt w;
  };
  std::vector<Row> rows;
  std::optional<CountingProblem> problem;
  if (big_n) {
    problem = CountingProblem{static_cast<int>(*big_n), static_cast<int>(*big_p), epsilon};
    try {
      problem->validate();
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    rows.push_back({"planck", *big_n, *big_p, planck_count(*problem)});
  }
  for (auto kind : kinds) {
    rows.push_back({std::string(to_string(kind)), *d, *n,
                    count_microstates(kind, static_cast<int>(*n), static_cast<int>(*d))});
  }

  std::vector<SymbolString> symbols;
  std::vector<std::pair<StatisticsKind, std::vector<std::vector<int>>>> distributions;
  if (enumerate) {
    if (problem) symbols = enumerate_symbols(*problem, cap);
    for (auto kind : kinds) {
      distributions.emplace_back(
          kind, enumerate_distributions(kind, static_cast<int>(*n), static_cast<int>(*d), cap));
    }
  }

  if (opt.format == Format::kJson) {
    Json report;
    report["counts"] = Json::array();
    for (const auto& r : rows) {
      Json row{{"statistics", r.statistics}, {"modes", r.modes}, {"particles", r.particles},
               {"W", r.w.str()}};
      row["S"] = r.w > 0 ? json_number(entropy(r.w, k)) : Json(nullptr);
      if (r.statistics == "planck") row["total_energy"] = json_number(static_cast<double>(r.particles) * epsilon);
      report["counts"].push_back(row);
    }
    if (enumerate && problem) {
      report["symbols"] = Json::array();
      for (const auto& s : symbols) report["symbols"].push_back({{"symbol", s.to_string()}, {"energies", s.energies()}});
    }
    if (enumerate && !distributions.empty()) {
      report["distributions"] = Json::object();
      for (const auto& [kind, configs] : distributions) report["distributions"][std::string(to_string(kind))] = configs;
    }
    out << report.dump(2) << "\n";
    return;
  }

  out << "statistics,modes,particles,W,S\n";
  for (const auto& r : rows) {
    out << r.statistics << ',' << r.modes << ',' << r.particles << ',' << r.w.str() << ','
        << (r.w > 0 ? fmt12(entropy(r.w, k)) : std::string()) << '\n';
  }
  if (enumerate && problem) {
    out << "\nsymbol,energies\n";
    for (const auto& s : symbols) out << s.to_string() << ',' << join_ints(s.energies(), ' ') << '\n';
  }
  for (const auto& [kind, configs] : distributions) {
    out << "\nstatistics,configuration\n";
    for (const auto& c : configs) out << to_string(kind) << ',' << join_ints(c, ' ') << '\n';
  }
}

// ---------------------------------------------------------------------------
// basis

void cmd_basis(const Json& cfg, const Options& opt, std::ostream& out, std::ostream& err) {
  require_known_keys(cfg, {"d", "n", "sector", "labels"}, "");
  const auto d = optional_int(cfg, "d", 1, 64);
  const auto n = optional_int(cfg, "n", 1, 64);
  if (!n) throw ConfigError("'n' is required");
  const ExchangeSector sector = sector_from_config(cfg, true);
  const OneParticleBasis basis = basis_from_config(cfg, d);
  const auto states = sector_basis(basis, static_cast<int>(*n), sector);
  const auto kind = sector == ExchangeSector::kSymmetric ? StatisticsKind::kBoseEinstein
                                                         : StatisticsKind::kFermiDirac;
  const auto occupations =
      enumerate_distributions(kind, static_cast<int>(*n), static_cast<int>(basis.dimension()));
  if (states.empty()) {
    err << "note: the " << to_string(sector) << " sector is empty for n = " << *n
        << " particles in d = " << basis.dimension() << " modes\n";
  }

  auto component_modes = [&](const LabeledState& s, std::size_t flat) {
    std::vector<std::string> labels;
    for (std::size_t m : s.digits(flat)) labels.push_back(basis.label(m));
    return labels;
  };

  if (opt.format == Format::kJson) {
    Json report{{"sector", std::string(to_string(sector))},
                {"d", basis.dimension()},
                {"n", *n},
                {"labels", basis.labels()},
                {"states", Json::array()}};
    for (std::size_t i = 0; i < states.size(); ++i) {
      Json components = Json::array();
      for (std::size_t flat = 0; flat < states[i].dimension(); ++flat) {
        if (states[i][flat] == Complex{}) continue;
        components.push_back({{"modes", component_modes(states[i], flat)},
                              {"amplitude", json_number(states[i][flat].real())}});
      }
      report["states"].push_back({{"occupation", occupations[i]},
                                  {"symbol", format_symbol(OccupationState(occupations[i], sector))},
                                  {"components", components}});
    }
    out << report.dump(2) << "\n";
    return;
  }

  out << "index,occupation,symbol,terms,components\n";
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::string components;
    int terms = 0;
    for (std::size_t flat = 0; flat < states[i].dimension(); ++flat) {
      if (states[i][flat] == Complex{}) continue;
      if (terms++) components += ';';
      std::string key;
      for (const auto& label : component_modes(states[i], flat)) key += (key.empty() ? "" : ".") + label;
      components += key + ':' + fmt12(states[i][flat].real());
    }
    out << i << ',' << join_ints(occupations[i], ' ') << ','
        << format_symbol(OccupationState(occupations[i], sector)) << ',' << terms << ',' << components
        << '\n';
  }
}

// ---------------------------------------------------------------------------
// analyze

LabeledState state_from_config(const Json& cfg, ExchangeSector sector) {
  const auto d = optional_int(cfg, "d", 1, 64);
  const auto symbol = optional_string(cfg, "symbol");
  const bool has_amplitudes = cfg.contains("amplitudes");
  if (symbol.has_value() == has_amplitudes) {
    throw ConfigError("give exactly one of 'symbol' or 'amplitudes'");
  }
  const OneParticleBasis basis = basis_from_config(cfg, d);
  if (symbol) {
    if (cfg.contains("n_slots")) throw ConfigError("'n_slots' is implied by 'symbol'");
    const OccupationState occ = parse_symbol(*symbol, static_cast<int>(basis.dimension()), sector);
    if (occ.total() == 0) throw ConfigError("the vacuum symbol has no particles to analyze");
    return occupation_to_labeled(occ, basis);
  }
  const auto amplitudes = parse_complex_list(cfg["amplitudes"], "amplitudes");
  const auto n_slots = optional_int(cfg, "n_slots", 1, 24);
  if (!n_slots) throw ConfigError("'n_slots' is required with 'amplitudes'");
  const std::size_t expected = checked_dimension(basis.dimension(), static_cast<std::size_t>(*n_slots));
  if (amplitudes.size() != expected) {
    throw ConfigError("'amplitudes' must have d^n_slots = " + std::to_string(expected) + " entries");
  }
  try {
    return LabeledState::normalized(basis, static_cast<std::size_t>(*n_slots), amplitudes);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("'amplitudes': ") + e.what());
  }
}

void cmd_analyze(const Json& cfg, std::ostream& out) {
  require_known_keys(cfg, {"sector", "symbol", "amplitudes", "n_slots", "d", "labels"}, "");
  const ExchangeSector sector = sector_from_config(cfg, true);
  const LabeledState state = state_from_config(cfg, sector);
  const EmergenceReport report = detect_emergent_particles(state, sector);

  Json j;
  j["sector"] = std::string(to_string(sector));
  j["n_slots"] = state.n_slots();
  j["labels"] = state.basis().labels();
  j["verdict"] = std::string(to_string(report.verdict));
  j["fidelity"] = json_number(report.fidelity);
  j["natural_spectrum"] = Json::array();
  for (double lambda : report.natural_spectrum) j["natural_spectrum"].push_back(json_number(lambda));
  j["defining_states"] = Json::array();
  for (const auto& s : report.defining_states) {
    j["defining_states"].push_back({{"occupation", s.occupation}, {"amplitudes", interleaved(s.state)}});
  }
  if (sector == ExchangeSector::kAntisymmetric && state.n_slots() == 2) {
    j["slater_rank"] = slater_rank_two_fermions(state);
  }
  out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// hom

struct Stage {
  std::string name;
  LabeledState state;
};

std::string outcome_label(const OneParticleBasis& basis, const DetectionOutcome& o) {
  return basis.label(BeamSplitterScenario::mode(o.port, o.spin));
}

void cmd_hom(const Json& cfg, const Options& opt, std::ostream& out) {
  require_known_keys(cfg, {"splitter", "baseline"}, "");
  BeamSplitterScenario scenario;
  if (cfg.contains("splitter")) {
    scenario.splitter = parse_complex_matrix(cfg["splitter"], "splitter");
    try {
      scenario.validate();
    } catch (const Error& e) {
      throw ConfigError(std::string("invalid 'splitter': ") + e.what());
    }
  }
  const bool baseline = opt.baseline || optional_bool(cfg, "baseline").value_or(false);

  const LabeledState initial = build_initial_state(scenario);
  std::vector<Stage> stages;
  if (baseline) stages.push_back({"baseline", initial});
  stages.push_back({"final", evolve_through_splitter(initial, scenario)});

  static constexpr const char* kSpinPairs[4] = {"up,up", "up,down", "down,up", "down,down"};

  if (opt.format == Format::kJson) {
    Json report{{"stages", Json::array()}};
    for (const auto& stage : stages) {
      const ExperimentResult r = measure_ports_and_spins(stage.state, scenario);
      Json joint = Json::array();
      for (const auto& jp : r.joint_probabilities) {
        joint.push_back({{"first", outcome_label(stage.state.basis(), jp.first)},
                         {"second", outcome_label(stage.state.basis(), jp.second)},
                         {"probability", json_number(jp.probability)}});
      }
      Json conditional = Json::array();
      for (const auto& c : r.conditional_coincidence_spin_state) conditional.push_back(json_complex(c));
      Json correlators = Json::object();
      for (const auto& [name, value] : r.correlators) correlators[name] = json_number(value);
      report["stages"].push_back({{"stage", stage.name},
                                  {"joint_probabilities", joint},
                                  {"p_both_left", json_number(r.p_both_left)},
                                  {"p_both_right", json_number(r.p_both_right)},
                                  {"p_coincidence", json_number(r.p_coincidence)},
                                  {"conditional_coincidence_spin_state", conditional},
                                  {"correlators", correlators}});
    }
    out << report.dump(2) << "\n";
    return;
  }

  out << "stage,quantity,value\n";
  for (const auto& stage : stages) {
    const ExperimentResult r = measure_ports_and_spins(stage.state, scenario);
    for (const auto& jp : r.joint_probabilities) {
      out << stage.name << ",P(" << outcome_label(stage.state.basis(), jp.first) << ' '
          << outcome_label(stage.state.basis(), jp.second) << ")," << fmt12(jp.probability) << '\n';
    }
    out << stage.name << ",p_both_left," << fmt12(r.p_both_left) << '\n';
    out << stage.name << ",p_both_right," << fmt12(r.p_both_right) << '\n';
    out << stage.name << ",p_coincidence," << fmt12(r.p_coincidence) << '\n';
    for (std::size_t i = 0; i < 4; ++i) {
      const Complex c = r.conditional_coincidence_spin_state[i];
      out << stage.name << ",\"conditional(" << kSpinPairs[i] << ").re\"," << fmt12(c.real()) << '\n';
      out << stage.name << ",\"conditional(" << kSpinPairs[i] << ").im\"," << fmt12(c.imag()) << '\n';
    }
    for (const auto& [name, value] : r.correlators) {
      out << stage.name << ",<" << name << ">," << fmt12(value) << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// density

GaussianPacket packet_from_config(const Json& j, std::string_view context, GaussianPacket fallback) {
  require_known_keys(j, {"center", "width", "wave_number"}, context);
  GaussianPacket p = fallback;
  if (auto v = optional_number(j, "center")) p.center = *v;
  if (auto v = optional_number(j, "width")) p.width = *v;
  if (auto v = optional_number(j, "wave_number")) p.wave_number = *v;
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string(context) + ": " + e.what());
  }
  return p;
}

void write_density_csv(const DensityGrid& grid, std::ostream& os) {
  os << "x1,x2,rho\n";
  for (int i = 0; i < grid.grid.n_points; ++i) {
    const std::string x1 = fmt12(grid.grid.x(i));
    for (int j = 0; j < grid.grid.n_points; ++j) {
      os << x1 << ',' << fmt12(grid.grid.x(j)) << ',' << fmt12(grid.at(i, j)) << '\n';
    }
  }
}

void cmd_density(const Json& cfg, const Options& opt, std::ostream& out, std::ostream& err) {
  require_known_keys(cfg, {"packet_s", "packet_n", "separation", "width", "grid", "output"}, "");
  GaussianPacket s{-5.0, 1.0, 0.0};
  GaussianPacket n{5.0, 1.0, 0.0};
  if (auto sep = optional_number(cfg, "separation")) {
    if (cfg.contains("packet_s") || cfg.contains("packet_n")) {
      throw ConfigError("'separation' cannot be combined with explicit packets");
    }
    const double width = optional_number(cfg, "width").value_or(1.0);
    if (!(width > 0.0)) throw ConfigError("'width' must be positive");
    s = {-0.5 * *sep * width, width, 0.0};
    n = {0.5 * *sep * width, width, 0.0};
  } else {
    if (cfg.contains("width")) throw ConfigError("'width' is only used together with 'separation'");
    if (cfg.contains("packet_s")) s = packet_from_config(cfg["packet_s"], "packet_s", s);
    if (cfg.contains("packet_n")) n = packet_from_config(cfg["packet_n"], "packet_n", n);
  }

  GridSpec grid = GridSpec::covering(s, n);
  if (cfg.contains("grid")) {
    const Json& g = cfg["grid"];
    require_known_keys(g, {"x_min", "x_max", "n_points"}, "grid");
    if (auto v = optional_number(g, "x_min")) grid.x_min = *v;
    if (auto v = optional_number(g, "x_max")) grid.x_max = *v;
    if (auto v = optional_int(g, "n_points", 2, 4096)) grid.n_points = static_cast<int>(*v);
  }
  try {
    grid.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }

  std::string path = opt.output_path;
  if (path.empty()) path = optional_string(cfg, "output").value_or("");

  const DensityGrid density = joint_spatial_density(s, n, grid);

  if (path.empty()) {
    write_density_csv(density, out);
    err << "cross_term_max," << fmt12(density.cross_term_max) << "\n";
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write density grid to '" + path + "'");
  write_density_csv(density, file);
  file.close();
  if (!file) throw IoError("failed while writing '" + path + "'");

  if (opt.format == Format::kJson) {
    Json report{{"cross_term_max", json_number(density.cross_term_max)},
                {"integral", json_number(density.integral)},
                {"n_points", density.grid.n_points},
                {"x_min", json_number(density.grid.x_min)},
                {"x_max", json_number(density.grid.x_max)}};
    out << report.dump(2) << "\n";
    return;
  }
  out << "quantity,value\n";
  out << "cross_term_max," << fmt12(density.cross_term_max) << '\n';
  out << "integral," << fmt12(density.integral) << '\n';
  out << "n_points," << density.grid.n_points << '\n';
  out << "x_min," << fmt12(density.grid.x_min) << '\n';
  out << "x_max," << fmt12(density.grid.x_max) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Identical-particle state toolkit: counting, sector bases, emergence analysis, "
               "beam-splitter interference and two-packet densities"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  std::string format = "csv";
  app.add_option("--config", opt.config_path, "JSON scenario file");
  app.add_option("--output", opt.output_path, "write the report (density: the CSV grid) here");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "json"}));

  auto* count = app.add_subcommand("count", "count and enumerate microstates");
  auto* basis = app.add_subcommand("basis", "orthonormal basis of a symmetry sector");
  auto* analyze = app.add_subcommand("analyze", "decompose a sector state into particles");
  auto* hom = app.add_subcommand("hom", "two-electron beam-splitter experiment");
  hom->add_flag("--baseline", opt.baseline, "also report the state before the splitter");
  auto* density = app.add_subcommand("density", "joint position density of two packets");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  opt.format = format == "json" ? Format::kJson : Format::kCsv;

  std::ostringstream report;
  try {
    const Json cfg = load_config(opt.config_path);
    if (count->parsed()) {
      cmd_count(cfg, opt, report);
    } else if (basis->parsed()) {
      cmd_basis(cfg, opt, report, err);
    } else if (analyze->parsed()) {
      cmd_analyze(cfg, report);
    } else if (hom->parsed()) {
      cmd_hom(cfg, opt, report);
    } else if (density->parsed()) {
      cmd_density(cfg, opt, report, err);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DimensionError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const CapExceeded& e) {
    err << "resource cap: " << e.what() << "\n";
    return kResourceCap;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoError;
  }

  // density writes its grid to --output itself; its summary goes to stdout
  if (!opt.output_path.empty() && !density->parsed()) {
    std::ofstream file(opt.output_path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << report.str()) || !file.flush()) {
      err << "i/o error: cannot write '" << opt.output_path << "'\n";
      return kIoError;
    }
    return kOk;
  }
  out << report.str();
  return kOk;
}

}  // namespace idpart::cli
