// mazer: command-line front end for the mazer library.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "mazer/oracle.hpp"
#include "mazer/pump.hpp"
#include "mazer/scattering.hpp"
#include "mazer/selection.hpp"
#include "mazer/ultracold.hpp"

using namespace mazer;

namespace {

constexpr double pi = std::numbers::pi;

// Tables

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return fmt::format("{}", *i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "1" : "0";
  return std::get<std::string>(c);
}

std::string json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? number(*d) : "null";
  if (const auto* i = std::get_if<long long>(&c)) return fmt::format("{}", *i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return "\"" + std::get<std::string>(c) + "\"";
}

std::string render_csv(const Table& t) {
  std::string out;
  for (std::size_t j = 0; j < t.columns.size(); ++j) out += (j ? "," : "") + t.columns[j];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? "," : "") + csv_cell(row[j]);
    out += '\n';
  }
  return out;
}

std::string render_json(const Table& t) {
  if (t.rows.empty()) return "[]\n";
  std::string out = "[\n";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    out += "  {";
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
      out += fmt::format("{}\"{}\": {}", j ? ", " : "", t.columns[j], json_cell(t.rows[i][j]));
    }
    out += i + 1 < t.rows.size() ? "},\n" : "}\n";
  }
  return out + "]\n";
}

// Columns

struct Column {
  const char* name;
  const char* doc;
};

// Documented columns per subcommand. "detuning_hz" follows "detuning" and
// "width_hz" follows "width" only when --g-hz is given.
const std::map<std::string, std::vector<Column>>& column_docs() {
  static const std::map<std::string, std::vector<Column>> docs = {
      {"transmission",
       {{"k", "incident wavenumber k/kappa"},
        {"detuning", "detuning delta/g"},
        {"detuning_hz", "detuning in Hz, (delta/g) g_hz / 2pi (with --g-hz)"},
        {"T_a", "probability to leave forward in the upper state"},
        {"T_b", "probability to leave forward in the lower state"},
        {"T_total", "T_a + T_b"},
        {"T_ultracold", "small-k approximation of T_total"},
        {"ultracold_valid", "1 when the small-k approximation applies"}}},
      {"resonances",
       {{"detuning", "detuning delta/g"},
        {"detuning_hz", "detuning in Hz (with --g-hz)"},
        {"photons", "photon number n"},
        {"m", "resonance index"},
        {"position", "peak wavenumber k/kappa"},
        {"amplitude", "peak transmission"},
        {"width", "full width at half maximum in k/kappa, inf if unresolved"},
        {"width_hz", "width as a kinetic-energy width in Hz, 2 k dk g_hz / 2pi (with --g-hz)"},
        {"refined", "1 when the position was found by maximization"}}},
      {"amplitude",
       {{"detuning", "detuning delta/g"},
        {"detuning_hz", "detuning in Hz (with --g-hz)"},
        {"m", "resonance index"},
        {"position", "peak wavenumber k/kappa"},
        {"amplitude", "peak transmission"},
        {"amplitude_estimate", "closed-form amplitude estimate"},
        {"refined", "1 when the position was found by maximization"},
        {"closed_channel", "1 when the lower-state channel is closed at the peak"}}},
      {"pump",
       {{"photons", "photon number n"},
        {"probability", "stationary probability P(n)"},
        {"mean_emission", "beam-averaged emission probability for n photons"}}},
      {"select",
       {{"detuning", "detuning delta/g"},
        {"detuning_hz", "detuning in Hz (with --g-hz)"},
        {"k", "wavenumber k/kappa"},
        {"initial", "initial velocity density"},
        {"final", "transmitted velocity density (not renormalized)"}}},
      {"oracle-check",
       {{"samples", "number of random parameter points"},
        {"max_dT_a", "max |T_a closed form - T_a oracle|"},
        {"max_dT_b", "max |T_b closed form - T_b oracle|"},
        {"max_dT_total", "max |T_total closed form - T_total oracle|"},
        {"max_flux_error", "max |oracle flux sum - 1|"},
        {"tolerance", "pass threshold"},
        {"pass", "1 when every maximum is below the tolerance"}}},
  };
  return docs;
}

std::vector<std::string> columns_for(const std::string& command, bool with_hz) {
  std::vector<std::string> out;
  for (const auto& c : column_docs().at(command)) {
    const std::string name = c.name;
    if (!with_hz && name.ends_with("_hz")) continue;
    out.push_back(name);
  }
  return out;
}

std::string columns_help(const std::string& command) {
  std::string s = "Columns:\n";
  for (const auto& c : column_docs().at(command)) s += fmt::format("  {:<20}{}\n", c.name, c.doc);
  return s;
}

// Settings

// Options as given by the user; unset ones fall back to the preset, then to
// the subcommand defaults.
struct Given {
  std::optional<std::string> preset;
  std::string format = "csv";
  std::string out;
  std::optional<double> g_hz;
  std::vector<double> detuning;
  std::optional<double> length, k, k_min, k_max, detuning_min, detuning_max;
  std::optional<int> photons, k_points, detuning_points, index;
  std::optional<std::string> sweep, kernel;
  std::optional<double> thermal_photons, pump_ratio, k0, grid_max;
  std::optional<int> truncation, grid_points;
  std::optional<bool> jacobian;
  std::optional<int> samples, photons_max;
  std::optional<long long> seed;
  std::optional<double> tolerance, length_min, length_max;
};

struct Settings {
  std::vector<double> detuning{0.0};
  double length = 1000 * pi;
  int photons = 0;
  std::string sweep = "k";
  double k = 0.05;
  double k_min = 1e-4, k_max = 0.1;
  int k_points = 2001;
  double detuning_min = -0.01, detuning_max = 0.01;
  int detuning_points = 2001;
  int index = 1001;
  double thermal_photons = 0.2, pump_ratio = 100.0, k0 = 0.05, grid_max = 0.2;
  int truncation = 64, grid_points = 4001;
  std::string kernel = "ultracold";
  bool jacobian = false;
  int samples = 1000, photons_max = 3;
  long long seed = 20030101;
  double tolerance = 1e-9, length_min = 1e2, length_max = 1e4;
};

Settings defaults_for(const std::string& command) {
  Settings s;
  if (command == "oracle-check") {
    s.k_min = 1e-3;
    s.k_max = 1.0;
    s.detuning_min = -500.0;
    s.detuning_max = 10.0;
  } else if (command == "pump" || command == "select") {
    s.length = 200 * pi;
  }
  return s;
}

void apply_preset(Settings& s, const std::string& name) {
  if (name == "fig1a" || name == "fig1b") {
    s.detuning = name == "fig1a" ? std::vector<double>{0.0} : std::vector<double>{0.005, -0.005};
    s.length = 1000 * pi;
    s.photons = 0;
    s.sweep = "k";
    s.k_min = 1e-4;
    s.k_max = 0.1;
    s.k_points = 20001;
  } else if (name == "fig2") {
    s.length = 1000 * pi;
    s.photons = 0;
    s.index = 1001;
    s.detuning_min = -0.01;
    s.detuning_max = 0.01;
    s.detuning_points = 2001;
  } else if (name == "fig3a" || name == "fig3b") {
    s.k = 0.05;
    s.length = 1000.0;
    s.photons = 0;
    s.sweep = "detuning";
    s.detuning_min = name == "fig3a" ? -0.05 : -1000.0;
    s.detuning_max = name == "fig3a" ? 0.05 : 1000.0;
    s.detuning_points = 20001;
  } else if (name == "fig4a" || name == "fig4b") {
    s.detuning = name == "fig4a" ? std::vector<double>{0.0} : std::vector<double>{0.004, 0.0045, 0.005};
    s.length = 200 * pi;
    s.photons = 0;
    s.thermal_photons = 0.2;
    s.pump_ratio = 100.0;
    s.k0 = 0.05;
    s.grid_max = 0.2;
    s.grid_points = 4001;
  }
}

template <class T>
void take(T& dst, const std::optional<T>& src) {
  if (src) dst = *src;
}

Settings resolve(const std::string& command, const Given& g) {
  Settings s = defaults_for(command);
  if (g.preset) apply_preset(s, *g.preset);
  if (!g.detuning.empty()) s.detuning = g.detuning;
  take(s.length, g.length);
  take(s.photons, g.photons);
  take(s.sweep, g.sweep);
  take(s.k, g.k);
  take(s.k_min, g.k_min);
  take(s.k_max, g.k_max);
  take(s.k_points, g.k_points);
  take(s.detuning_min, g.detuning_min);
  take(s.detuning_max, g.detuning_max);
  take(s.detuning_points, g.detuning_points);
  take(s.index, g.index);
  take(s.thermal_photons, g.thermal_photons);
  take(s.pump_ratio, g.pump_ratio);
  take(s.k0, g.k0);
  take(s.grid_max, g.grid_max);
  take(s.truncation, g.truncation);
  take(s.grid_points, g.grid_points);
  take(s.kernel, g.kernel);
  take(s.jacobian, g.jacobian);
  take(s.samples, g.samples);
  take(s.photons_max, g.photons_max);
  take(s.seed, g.seed);
  take(s.tolerance, g.tolerance);
  take(s.length_min, g.length_min);
  take(s.length_max, g.length_max);
  return s;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

bool finite_all(std::initializer_list<double> xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void validate(const std::string& command, const Settings& s, const Given& g) {
  require(!g.g_hz || (*g.g_hz > 0.0 && std::isfinite(*g.g_hz)), "g-hz must be finite and > 0");
  require(!s.detuning.empty(), "at least one detuning is required");
  for (double d : s.detuning) SystemParams{d, s.length, s.photons}.validate();
  require(finite_all({s.k, s.k_min, s.k_max, s.detuning_min, s.detuning_max}),
          "sweep bounds must be finite");
  require(s.k_points >= 0 && s.detuning_points >= 0, "point counts must be >= 0");
  require(s.sweep == "k" || s.sweep == "detuning", "sweep must be k or detuning");
  if (command == "transmission") {
    if (s.sweep == "k") {
      require(s.k_points == 0 || (s.k_min > 0.0 && s.k_max >= s.k_min), "need 0 < k-min <= k-max");
    } else {
      require(s.k > 0.0, "k must be > 0");
      require(s.detuning_max >= s.detuning_min, "need detuning-min <= detuning-max");
    }
  } else if (command == "resonances") {
    require(s.k_min >= 0.0, "k-min must be >= 0");
  } else if (command == "amplitude") {
    require(s.index >= 1, "index must be >= 1");
    require(s.detuning_max >= s.detuning_min, "need detuning-min <= detuning-max");
  } else if (command == "pump" || command == "select") {
    require(command == "select" || s.detuning.size() == 1, "pump takes a single detuning");
    PumpParams{s.thermal_photons, s.pump_ratio, s.truncation}.validate();
    require(s.k0 > 0.0 && std::isfinite(s.k0), "k0 must be finite and > 0");
    require(s.grid_max > 0.0 && std::isfinite(s.grid_max), "grid-max must be finite and > 0");
    require(s.grid_points >= 2, "grid-points must be >= 2");
    require(s.kernel == "ultracold" || s.kernel == "local-phase" || s.kernel == "exact",
            "kernel must be ultracold, local-phase or exact");
  } else if (command == "oracle-check") {
    require(s.samples >= 0, "samples must be >= 0");
    require(s.k_min > 0.0 && s.k_max >= s.k_min, "need 0 < k-min <= k-max");
    require(s.length_min > 0.0 && s.length_max >= s.length_min, "need 0 < length-min <= length-max");
    require(s.detuning_max >= s.detuning_min, "need detuning-min <= detuning-max");
    require(s.photons_max >= 0, "photons-max must be >= 0");
    require(s.tolerance > 0.0, "tolerance must be > 0");
  }
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> x(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) x[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  if (count > 1) x.back() = hi;
  return x;
}

EmissionKernel kernel_of(const std::string& name) {
  if (name == "local-phase") return EmissionKernel::UltracoldLocalPhase;
  if (name == "exact") return EmissionKernel::ExactTransmittedB;
  return EmissionKernel::Ultracold;
}

// Commands

struct Context {
  const Settings& s;
  std::optional<double> g_hz;

  // Detuning cells, with the Hz conversion when requested.
  void detuning(std::vector<Cell>& row, double d) const {
    row.emplace_back(d);
    if (g_hz) row.emplace_back(d * *g_hz / (2 * pi));
  }
};

Table cmd_transmission(const Context& c) {
  const Settings& s = c.s;
  Table t{columns_for("transmission", c.g_hz.has_value()), {}};
  auto emit = [&](double k, double d) {
    const SystemParams p{d, s.length, s.photons};
    const auto r = scatter(k, p);
    const auto u = transmission_ultracold(k, p);
    std::vector<Cell> row{k};
    c.detuning(row, d);
    row.insert(row.end(), {r.T_a, r.T_b, r.T_total, u.value, u.valid});
    t.rows.push_back(std::move(row));
  };
  if (s.sweep == "k") {
    const auto ks = linspace(s.k_min, s.k_max, s.k_points);
    for (double d : s.detuning) {
      for (double k : ks) emit(k, d);
    }
  } else {
    for (double d : linspace(s.detuning_min, s.detuning_max, s.detuning_points)) emit(s.k, d);
  }
  return t;
}

Table cmd_resonances(const Context& c) {
  const Settings& s = c.s;
  Table t{columns_for("resonances", c.g_hz.has_value()), {}};
  for (double d : s.detuning) {
    const SystemParams p{d, s.length, s.photons};
    for (const auto& pk : resonance_positions(p, resonance_indices(p, s.k_min, s.k_max))) {
      std::vector<Cell> row;
      c.detuning(row, d);
      row.insert(row.end(), {static_cast<long long>(s.photons), static_cast<long long>(pk.index),
                             pk.position, pk.amplitude, pk.width});
      if (c.g_hz) row.emplace_back(2 * pk.position * pk.width * *c.g_hz / (2 * pi));
      row.emplace_back(pk.refined);
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table cmd_amplitude(const Context& c) {
  const Settings& s = c.s;
  Table t{columns_for("amplitude", c.g_hz.has_value()), {}};
  for (double d : linspace(s.detuning_min, s.detuning_max, s.detuning_points)) {
    const SystemParams p{d, s.length, s.photons};
    const auto peaks = resonance_positions(p, {s.index, s.index});
    if (peaks.empty()) continue;
    const auto& pk = peaks.front();
    std::vector<Cell> row;
    c.detuning(row, d);
    row.insert(row.end(), {static_cast<long long>(pk.index), pk.position, pk.amplitude,
                           resonance_amplitude_estimate(pk.position, p), pk.refined,
                           pk.position * pk.position <= d});
    t.rows.push_back(std::move(row));
  }
  return t;
}

QuadratureOptions quadrature(const Settings& s) {
  QuadratureOptions q;
  q.kernel = kernel_of(s.kernel);
  return q;
}

Table cmd_pump(const Context& c) {
  const Settings& s = c.s;
  const SystemParams p{s.detuning.front(), s.length, s.photons};
  const auto beam = maxwell_boltzmann_initial(s.k0, uniform_grid(0.0, s.grid_max, s.grid_points));
  const auto q = quadrature(s);
  std::vector<double> cache;
  auto em = [&](int n) {
    while (static_cast<int>(cache.size()) <= n) {
      cache.push_back(mean_p_em(static_cast<int>(cache.size()), beam, p, q));
    }
    return cache[static_cast<std::size_t>(n)];
  };
  const auto dist = stationary_distribution({s.thermal_photons, s.pump_ratio, s.truncation}, em);
  Table t{columns_for("pump", false), {}};
  for (int n = 0; n <= dist.max_photons(); ++n) {
    t.rows.push_back({static_cast<long long>(n), dist.probabilities[n], em(n)});
  }
  return t;
}

Table cmd_select(const Context& c) {
  const Settings& s = c.s;
  Table t{columns_for("select", c.g_hz.has_value()), {}};
  for (double d : s.detuning) {
    PipelineConfig cfg;
    cfg.params_base = {d, s.length, s.photons};
    cfg.pump = {s.thermal_photons, s.pump_ratio, s.truncation};
    cfg.k0 = s.k0;
    cfg.grid = uniform_grid(0.0, s.grid_max, s.grid_points);
    cfg.quadrature = quadrature(s);
    cfg.selection.jacobian = s.jacobian;
    const auto r = run_velocity_selection(cfg);
    const auto& ks = r.final.grid();
    for (std::size_t i = 0; i < ks.size(); ++i) {
      std::vector<Cell> row;
      c.detuning(row, d);
      row.insert(row.end(), {ks[i], r.initial(ks[i]), r.final.density()[i]});
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table cmd_oracle_check(const Context& c, bool& passed) {
  const Settings& s = c.s;
  std::mt19937_64 rng(static_cast<std::uint64_t>(s.seed));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) {
    return lo * std::pow(hi / lo, u(rng));
  };
  double da = 0.0, db = 0.0, dt = 0.0, flux = 0.0;
  for (int i = 0; i < s.samples; ++i) {
    const double k = log_uniform(s.k_min, s.k_max);
    const double d = s.detuning_min + (s.detuning_max - s.detuning_min) * u(rng);
    const int n = static_cast<int>((s.photons_max + 1) * u(rng));
    const double L = log_uniform(s.length_min, s.length_max);
    const SystemParams p{d, L, std::min(n, s.photons_max)};
    const auto closed = scatter(k, p);
    const auto o = solve(ModeFunction::mesa(L), k, p);
    const double ta = o.T_a(), tb = o.T_b(k, p);
    da = std::max(da, std::abs(closed.T_a - ta));
    db = std::max(db, std::abs(closed.T_b - tb));
    dt = std::max(dt, std::abs(closed.T_total - ta - tb));
    flux = std::max(flux, std::abs(o.flux_sum - 1.0));
  }
  passed = da < s.tolerance && db < s.tolerance && dt < s.tolerance && flux < s.tolerance;
  Table t{columns_for("oracle-check", false), {}};
  t.rows.push_back({static_cast<long long>(s.samples), da, db, dt, flux, s.tolerance, passed});
  return t;
}

// Main

constexpr int kExitError = 1;
constexpr int kExitOracleFailure = 2;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + path);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw std::runtime_error("cannot write output file " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transmission, resonance, photon-statistics and velocity-selection tables for "
               "two-level atoms crossing a micromaser cavity.",
               "mazer"};
  app.set_config("--config", "", "Read options from a key = value file (unknown keys are errors)");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.footer(
      "Exit status: 0 on success, 1 on invalid configuration or numerical error, 2 when "
      "oracle-check exceeds its tolerance.\nRun 'mazer <command> --help' for the columns of each "
      "table.");

  Given g;
  const std::vector<std::string> presets{"fig1a", "fig1b", "fig2", "fig3a", "fig3b", "fig4a", "fig4b"};
  app.add_option("--preset", g.preset, "Parameter preset")->check(CLI::IsMember(presets));
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--g-hz", g.g_hz, "Coupling g as a rate in s^-1; adds Hz columns");

  auto* phys = "Physics";
  app.add_option("--detuning", g.detuning, "Detuning(s) delta/g, comma separated")
      ->delimiter(',')->group(phys);
  app.add_option("--length", g.length, "Interaction length kappa L")->group(phys);
  app.add_option("--photons", g.photons, "Photon number n")->group(phys);

  auto* sweep = "Sweeps";
  app.add_option("--sweep", g.sweep, "transmission sweep axis: k or detuning")->group(sweep);
  app.add_option("--k", g.k, "Fixed k/kappa for detuning sweeps")->group(sweep);
  app.add_option("--k-min", g.k_min, "Lower k/kappa bound")->group(sweep);
  app.add_option("--k-max", g.k_max, "Upper k/kappa bound")->group(sweep);
  app.add_option("--k-points", g.k_points, "Points in a k sweep (0 gives an empty table)")
      ->group(sweep);
  app.add_option("--detuning-min", g.detuning_min, "Lower delta/g bound")->group(sweep);
  app.add_option("--detuning-max", g.detuning_max, "Upper delta/g bound")->group(sweep);
  app.add_option("--detuning-points", g.detuning_points,
                 "Points in a detuning sweep (0 gives an empty table)")->group(sweep);
  app.add_option("--index", g.index, "Resonance index m for amplitude")->group(sweep);

  auto* beam = "Beam and pump";
  app.add_option("--thermal-photons", g.thermal_photons, "Thermal photon number n_b")->group(beam);
  app.add_option("--pump-ratio", g.pump_ratio, "Pump ratio r/C")->group(beam);
  app.add_option("--truncation", g.truncation, "Initial photon-number cutoff")->group(beam);
  app.add_option("--k0", g.k0, "Most probable k/kappa of the beam")->group(beam);
  app.add_option("--grid-max", g.grid_max, "Upper end of the beam k grid")->group(beam);
  app.add_option("--grid-points", g.grid_points, "Points in the beam k grid")->group(beam);
  app.add_option("--kernel", g.kernel, "Emission kernel: ultracold, local-phase or exact")
      ->group(beam);
  app.add_option("--jacobian", g.jacobian, "Apply k/k' to the remapped lower-state term")
      ->group(beam);

  auto* oracle = "Oracle check";
  app.add_option("--samples", g.samples, "Random parameter points")->group(oracle);
  app.add_option("--seed", g.seed, "Random seed")->group(oracle);
  app.add_option("--tolerance", g.tolerance, "Maximum allowed difference")->group(oracle);
  app.add_option("--length-min", g.length_min, "Lower kappa L bound")->group(oracle);
  app.add_option("--length-max", g.length_max, "Upper kappa L bound")->group(oracle);
  app.add_option("--photons-max", g.photons_max, "Largest photon number sampled")->group(oracle);

  const std::vector<std::pair<std::string, std::string>> commands{
      {"transmission", "Transmission probabilities along a k or detuning sweep"},
      {"resonances", "Resonance catalog in a k window"},
      {"amplitude", "Height of resonance m along a detuning sweep"},
      {"pump", "Stationary photon distribution of a beam-pumped cavity"},
      {"select", "Initial and transmitted velocity distributions"},
      {"oracle-check", "Closed form against the coupled-channel solver at random points"},
  };
  for (const auto& [name, description] : commands) {
    auto* sub = app.add_subcommand(name, description);
    sub->fallthrough();
    sub->footer(columns_help(name));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const Settings s = resolve(command, g);
    validate(command, s, g);
    const Context ctx{s, g.g_hz};
    Table table;
    bool passed = true;
    if (command == "transmission") table = cmd_transmission(ctx);
    else if (command == "resonances") table = cmd_resonances(ctx);
    else if (command == "amplitude") table = cmd_amplitude(ctx);
    else if (command == "pump") table = cmd_pump(ctx);
    else if (command == "select") table = cmd_select(ctx);
    else table = cmd_oracle_check(ctx, passed);
    write_output(g.format == "json" ? render_json(table) : render_csv(table), g.out);
    if (!passed) {
      std::fprintf(stderr, "mazer: oracle-check exceeded tolerance %s\n", number(s.tolerance).c_str());
      return kExitOracleFailure;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "mazer: error: %s\n", e.what());
    return kExitError;
  }
  return 0;
}
