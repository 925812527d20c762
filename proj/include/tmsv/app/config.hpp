#pragma once
// Run configuration for the command-line front end: the command enumeration,
// flag/config-file parsing with fixed precedence, and the manifest echo that
// makes every run reproducible from its own output.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmsv/grid.hpp"
#include "tmsv/params.hpp"
#include "tmsv/wigner.hpp"

namespace tmsv::app {

// Malformed command line or config file; the front end maps it to exit 2.
// The message always names the offending flag, key, or token.
class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when --help is requested; carries the text to print (exit code 0).
struct help_requested {
  std::string text;
};

enum class Command { reproduce, wigner, scan, vortex, herald, wavefield };

enum class FigureId { fig2, fig3, fig4, fig5, fig6, fig7 };

enum class OutputFormat { csv, json, pgm };

struct RunConfig {
  Command command = Command::wigner;
  std::optional<FigureId> figure;  // required when command == reproduce
  SqueezeParams params{0.8, 1.5707963267948966};
  int k = 1;
  GridSpec grid{};  // [-3, 3]^2 at 201^2
  bool grid_given = false;
  std::optional<wigner::WignerSliceSpec> slice;  // from --slice / --fixed
  std::string output_dir = ".";
  std::vector<OutputFormat> formats{OutputFormat::csv, OutputFormat::json};
  int cutoff = 0;       // Fock / series truncation override; 0 selects automatic
  double tol = 1e-12;   // tolerance driving automatic truncation choices
  double transmittance = 0.99;  // beam-splitter transmittance for heralding
};

// Spelled-out token <-> enum maps (throwing versions name the bad token).
std::string to_string(Command c);
std::string to_string(FigureId f);
std::string to_string(OutputFormat f);
Command parse_command(const std::string& token);
FigureId parse_figure(const std::string& token);

// Naming for a slice plane: its CLI token, the two varied quadratures (in
// grid-axis order), and the two held-fixed quadratures (in canonical order).
struct PlaneInfo {
  wigner::SlicePlane plane;
  const char* token;
  const char* axis_u;
  const char* axis_v;
  const char* fixed1;
  const char* fixed2;
};
const PlaneInfo& plane_info(wigner::SlicePlane plane);

// Grid syntax XMIN:XMAX:N[,YMIN:YMAX:N]; a single triple applies to both
// axes.  format_grid always emits the full two-triple form.
GridSpec parse_grid(const std::string& token);
std::string format_grid(const GridSpec& grid);

// Shortest round-trip decimal representation (also used by every writer, so
// identical configurations serialize identically everywhere).  Non-finite
// values throw numerical_error.
std::string format_double(double v);

// Parse the full argument list (excluding the program name).  Precedence:
// command-line flags > --config file entries > built-in defaults.  Unknown
// flags, unknown config keys, and out-of-domain values throw usage_error.
RunConfig parse_config(const std::vector<std::string>& args);

// key=value echo of the configuration, loadable through --config (comment
// lines starting with '#' are ignored by the reader).  Re-running the same
// command with this file alone reproduces the run.
std::string manifest_text(const RunConfig& config);

// The config entries as ordered key/value pairs (the manifest's data form).
std::vector<std::pair<std::string, std::string>> manifest_entries(const RunConfig& config);

}  // namespace tmsv::app
