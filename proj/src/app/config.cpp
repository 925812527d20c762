#include "tmsv/app/config.hpp"

#include <CLI11.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tmsv/errors.hpp"

namespace tmsv::app {
namespace {

struct CommandName {
  Command value;
  const char* name;
};
constexpr std::array<CommandName, 6> kCommands{{{Command::reproduce, "reproduce"},
                                                {Command::wigner, "wigner"},
                                                {Command::scan, "scan"},
                                                {Command::vortex, "vortex"},
                                                {Command::herald, "herald"},
                                                {Command::wavefield, "wavefield"}}};

struct FigureName {
  FigureId value;
  const char* name;
};
constexpr std::array<FigureName, 6> kFigures{{{FigureId::fig2, "fig2"},
                                              {FigureId::fig3, "fig3"},
                                              {FigureId::fig4, "fig4"},
                                              {FigureId::fig5, "fig5"},
                                              {FigureId::fig6, "fig6"},
                                              {FigureId::fig7, "fig7"}}};

constexpr std::array<PlaneInfo, 6> kPlanes{{
    {wigner::SlicePlane::xy, "xy", "x", "y", "px", "py"},
    {wigner::SlicePlane::px_py, "pxpy", "px", "py", "x", "y"},
    {wigner::SlicePlane::x_px, "xpx", "x", "px", "y", "py"},
    {wigner::SlicePlane::y_py, "ypy", "y", "py", "x", "px"},
    {wigner::SlicePlane::x_py, "xpy", "x", "py", "px", "y"},
    {wigner::SlicePlane::y_px, "ypx", "y", "px", "x", "py"},
}};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_double_token(const std::string& name, const std::string& token) {
  const std::string t = trim(token);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw usage_error(name + ": not a number: '" + token + "'");
  return v;
}

int parse_int_token(const std::string& name, const std::string& token) {
  const std::string t = trim(token);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw usage_error(name + ": not an integer: '" + token + "'");
  return v;
}

std::vector<OutputFormat> parse_formats(const std::string& token) {
  bool seen[3] = {false, false, false};
  for (const std::string& part : split(token, ',')) {
    const std::string t = trim(part);
    if (t == "csv")
      seen[0] = true;
    else if (t == "json")
      seen[1] = true;
    else if (t == "pgm")
      seen[2] = true;
    else
      throw usage_error("format: unknown format '" + t + "' (expected csv, json, pgm)");
  }
  std::vector<OutputFormat> out;
  if (seen[0]) out.push_back(OutputFormat::csv);
  if (seen[1]) out.push_back(OutputFormat::json);
  if (seen[2]) out.push_back(OutputFormat::pgm);
  if (out.empty()) throw usage_error("format: at least one of csv, json, pgm required");
  return out;
}

wigner::SlicePlane parse_plane(const std::string& token) {
  for (const PlaneInfo& row : kPlanes)
    if (token == row.token) return row.plane;
  throw usage_error("slice: unknown plane '" + token +
                    "' (expected xy, pxpy, xpx, ypy, xpy, ypx)");
}

// The raw string form of everything a run can configure; flags and config
// file both land here, then one conversion pass builds the RunConfig.
struct RawConfig {
  std::string command, figure, r, theta, k, grid, slice, fixed, out, format, cutoff, tol,
      transmittance;
};

struct RawField {
  const char* key;
  std::string RawConfig::*member;
};
constexpr std::array<RawField, 13> kRawFields{{{"command", &RawConfig::command},
                                               {"figure", &RawConfig::figure},
                                               {"r", &RawConfig::r},
                                               {"theta", &RawConfig::theta},
                                               {"k", &RawConfig::k},
                                               {"grid", &RawConfig::grid},
                                               {"slice", &RawConfig::slice},
                                               {"fixed", &RawConfig::fixed},
                                               {"out", &RawConfig::out},
                                               {"format", &RawConfig::format},
                                               {"cutoff", &RawConfig::cutoff},
                                               {"tol", &RawConfig::tol},
                                               {"transmittance", &RawConfig::transmittance}}};

// Apply key=value lines to every field not already set on the command line.
void apply_config_file(const std::string& path, RawConfig& raw) {
  std::ifstream in(path);
  if (!in) throw usage_error("config: cannot open '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw usage_error("config: line " + std::to_string(lineno) + " is not key=value: '" +
                        t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    bool known = false;
    for (const RawField& field : kRawFields) {
      if (key == field.key) {
        known = true;
        if ((raw.*field.member).empty()) raw.*field.member = value;
        break;
      }
    }
    if (!known) throw usage_error("config: unknown key '" + key + "'");
  }
}

}  // namespace

std::string to_string(Command c) {
  for (const CommandName& row : kCommands)
    if (row.value == c) return row.name;
  throw std::logic_error("to_string(Command): unmapped value");
}

std::string to_string(FigureId f) {
  for (const FigureName& row : kFigures)
    if (row.value == f) return row.name;
  throw std::logic_error("to_string(FigureId): unmapped value");
}

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::pgm: return "pgm";
  }
  throw std::logic_error("to_string(OutputFormat): unmapped value");
}

Command parse_command(const std::string& token) {
  for (const CommandName& row : kCommands)
    if (token == row.name) return row.value;
  throw usage_error("command: unknown command '" + token +
                    "' (expected reproduce, wigner, scan, vortex, herald, wavefield)");
}

FigureId parse_figure(const std::string& token) {
  for (const FigureName& row : kFigures)
    if (token == row.name) return row.value;
  throw usage_error("figure: unknown figure '" + token + "' (expected fig2..fig7)");
}

const PlaneInfo& plane_info(wigner::SlicePlane plane) {
  for (const PlaneInfo& row : kPlanes)
    if (row.plane == plane) return row;
  throw std::logic_error("plane_info: unmapped plane");
}

GridSpec parse_grid(const std::string& token) {
  const std::vector<std::string> axes = split(token, ',');
  if (axes.empty() || axes.size() > 2)
    throw usage_error("grid: expected XMIN:XMAX:N[,YMIN:YMAX:N], got '" + token + "'");
  GridSpec g;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const std::vector<std::string> parts = split(axes[i], ':');
    if (parts.size() != 3)
      throw usage_error("grid: axis must be MIN:MAX:N, got '" + axes[i] + "'");
    const double lo = parse_double_token("grid", parts[0]);
    const double hi = parse_double_token("grid", parts[1]);
    const int n = parse_int_token("grid", parts[2]);
    if (n < 2) throw usage_error("grid: need at least 2 points per axis");
    if (i == 0) {
      g.x_min = lo;
      g.x_max = hi;
      g.nx = static_cast<std::size_t>(n);
      g.y_min = lo;
      g.y_max = hi;
      g.ny = static_cast<std::size_t>(n);
    } else {
      g.y_min = lo;
      g.y_max = hi;
      g.ny = static_cast<std::size_t>(n);
    }
  }
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw usage_error(std::string("grid: ") + e.what());
  }
  return g;
}

std::string format_grid(const GridSpec& grid) {
  return format_double(grid.x_min) + ":" + format_double(grid.x_max) + ":" +
         std::to_string(grid.nx) + "," + format_double(grid.y_min) + ":" +
         format_double(grid.y_max) + ":" + std::to_string(grid.ny);
}

std::string format_double(double v) {
  if (!std::isfinite(v)) throw numerical_error("format_double: non-finite value in output");
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw numerical_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App cli{"photon-subtracted squeezed-vacuum toolkit"};
  cli.require_subcommand(0, 1);

  RawConfig raw;
  std::string config_path;
  cli.add_option("--r", raw.r, "squeezing strength r >= 0");
  cli.add_option("--theta", raw.theta, "squeezing phase (radians)");
  cli.add_option("--k", raw.k, "number of subtracted photons, k >= 0");
  cli.add_option("--grid", raw.grid, "sampling grid XMIN:XMAX:N[,YMIN:YMAX:N]");
  cli.add_option("--slice", raw.slice, "Wigner slice plane: xy, pxpy, xpx, ypy, xpy, ypx");
  cli.add_option("--fixed", raw.fixed, "fixed complementary quadratures, e.g. px=0,py=0.5");
  cli.add_option("--out", raw.out, "output directory");
  cli.add_option("--format", raw.format, "comma list of csv, json, pgm");
  cli.add_option("--config", config_path, "key=value config file (flags win)");
  cli.add_option("--cutoff", raw.cutoff, "series/Fock truncation override (0 = automatic)");
  cli.add_option("--tol", raw.tol, "tolerance for automatic truncation");
  cli.add_option("--figure", raw.figure, "figure id for reproduce (fig2..fig7)");

  constexpr std::array<const char*, 6> kDescriptions{
      "write a figure's underlying data (fig2..fig7)",
      "sample a 2D slice of the two-mode Wigner function",
      "entanglement measures versus squeezing strength",
      "locate phase singularities of the wavefunction",
      "beam-splitter heralded subtraction fidelities",
      "sample the complex quadrature wavefunction"};
  std::string positional_figure;
  for (std::size_t i = 0; i < kCommands.size(); ++i) {
    CLI::App* sub = cli.add_subcommand(kCommands[i].name, kDescriptions[i]);
    sub->fallthrough();
    if (kCommands[i].value == Command::reproduce)
      sub->add_option("figure", positional_figure, "figure id (fig2..fig7)");
  }

  // CLI11 wants argc/argv shape; prepend a program name.
  std::vector<const char*> argv;
  argv.push_back("tmsv");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    cli.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw help_requested{cli.help()};
  } catch (const CLI::ParseError& e) {
    throw usage_error(e.what());
  }

  if (!positional_figure.empty()) raw.figure = positional_figure;
  const auto chosen = cli.get_subcommands();
  if (!chosen.empty()) raw.command = chosen.front()->get_name();
  if (!config_path.empty()) apply_config_file(config_path, raw);

  RunConfig config;
  if (raw.command.empty())
    throw usage_error(
        "command: expected one of reproduce, wigner, scan, vortex, herald, wavefield");
  config.command = parse_command(raw.command);

  if (!raw.figure.empty()) {
    if (config.command != Command::reproduce)
      throw usage_error("figure: only valid with the reproduce command");
    config.figure = parse_figure(raw.figure);
  } else if (config.command == Command::reproduce) {
    throw usage_error("figure: reproduce requires a figure id (fig2..fig7)");
  }

  const double r = raw.r.empty() ? config.params.r : parse_double_token("r", raw.r);
  const double theta =
      raw.theta.empty() ? config.params.theta : parse_double_token("theta", raw.theta);
  try {
    config.params = SqueezeParams(r, theta);
  } catch (const std::invalid_argument& e) {
    throw usage_error(std::string("r/theta: ") + e.what());
  }

  if (!raw.k.empty()) config.k = parse_int_token("k", raw.k);
  if (config.k < 0) throw usage_error("k: must be >= 0, got " + std::to_string(config.k));

  if (!raw.grid.empty()) {
    config.grid = parse_grid(raw.grid);
    config.grid_given = true;
  }

  if (!raw.slice.empty()) {
    wigner::WignerSliceSpec spec;
    spec.plane = parse_plane(trim(raw.slice));
    config.slice = spec;
  }
  if (!raw.fixed.empty()) {
    if (!config.slice) throw usage_error("fixed: requires --slice");
    const PlaneInfo& row = plane_info(config.slice->plane);
    for (const std::string& part : split(raw.fixed, ',')) {
      const auto eq = part.find('=');
      if (eq == std::string::npos)
        throw usage_error("fixed: expected NAME=VALUE, got '" + part + "'");
      const std::string name = trim(part.substr(0, eq));
      const double value = parse_double_token("fixed", part.substr(eq + 1));
      if (name == row.fixed1)
        config.slice->fixed1 = value;
      else if (name == row.fixed2)
        config.slice->fixed2 = value;
      else
        throw usage_error("fixed: '" + name + "' is not held fixed by plane " +
                          std::string(row.token) + " (expected " + row.fixed1 + " or " +
                          row.fixed2 + ")");
    }
  }
  if (config.slice) config.slice->grid = config.grid;

  if (!raw.out.empty()) config.output_dir = raw.out;
  if (config.output_dir.empty()) throw usage_error("out: directory must not be empty");

  if (!raw.format.empty()) config.formats = parse_formats(raw.format);

  if (!raw.cutoff.empty()) config.cutoff = parse_int_token("cutoff", raw.cutoff);
  if (config.cutoff < 0)
    throw usage_error("cutoff: must be >= 0, got " + std::to_string(config.cutoff));

  if (!raw.tol.empty()) config.tol = parse_double_token("tol", raw.tol);
  if (!(config.tol > 0.0) || !std::isfinite(config.tol))
    throw usage_error("tol: must be a positive finite number");

  if (!raw.transmittance.empty())
    config.transmittance = parse_double_token("transmittance", raw.transmittance);
  if (!(config.transmittance > 0.0) || !(config.transmittance <= 1.0))
    throw usage_error("transmittance: must be in (0, 1]");

  return config;
}

std::vector<std::pair<std::string, std::string>> manifest_entries(const RunConfig& config) {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("command", to_string(config.command));
  if (config.figure) rows.emplace_back("figure", to_string(*config.figure));
  rows.emplace_back("r", format_double(config.params.r));
  rows.emplace_back("theta", format_double(config.params.theta));
  rows.emplace_back("k", std::to_string(config.k));
  rows.emplace_back("grid", format_grid(config.grid));
  if (config.slice) {
    const PlaneInfo& row = plane_info(config.slice->plane);
    rows.emplace_back("slice", row.token);
    rows.emplace_back("fixed", std::string(row.fixed1) + "=" +
                                   format_double(config.slice->fixed1) + "," + row.fixed2 +
                                   "=" + format_double(config.slice->fixed2));
  }
  rows.emplace_back("out", config.output_dir);
  std::string formats;
  for (const OutputFormat f : config.formats) {
    if (!formats.empty()) formats += ",";
    formats += to_string(f);
  }
  rows.emplace_back("format", formats);
  rows.emplace_back("cutoff", std::to_string(config.cutoff));
  rows.emplace_back("tol", format_double(config.tol));
  rows.emplace_back("transmittance", format_double(config.transmittance));
  return rows;
}

std::string manifest_text(const RunConfig& config) {
  std::ostringstream out;
  for (const auto& [key, value] : manifest_entries(config)) out << key << "=" << value << "\n";
  return out.str();
}

}  // namespace tmsv::app
