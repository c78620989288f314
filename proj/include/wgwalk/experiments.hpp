#ifndef WGWALK_EXPERIMENTS_HPP
#define WGWALK_EXPERIMENTS_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wgwalk/time_series.hpp"

namespace wgwalk {

// Invalid or inconsistent experiment configuration; the message names the
// offending key or field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
  fig1_transport,         // single-photon transport across six guides
  fig2_squeezing,         // squeezing transfer, five guides, input guide 1
  fig3_squeezing_center,  // squeezing transfer, five guides, center input
  fig4_witness,           // pairwise witness M(1,j), six guides, two sets
  hom_scan,               // two-guide coincidence vs (theta, theta0)
  custom,
};

std::string_view experiment_name(ExperimentKind kind);
ExperimentKind experiment_from_name(std::string_view name);

// Input state entering the array: a single photon, a Fock occupation
// pattern, or squeezed vacuum in one guide.
struct InputSpec {
  enum class Kind { single, fock, squeezed };

  Kind kind = Kind::single;
  int guide = 1;                 // single and squeezed
  std::vector<int> occupations;  // fock
  double r = 0.0;                // squeezed
  double phi = 0.0;              // squeezed

  std::string to_string() const;
  static InputSpec parse(std::string_view text);
};

// Inclusive uniform grid with steps >= 2 points.
struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;

  std::vector<double> points() const;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::custom;
  int n_guides = 2;
  double coupling = 1.0;  // J
  double detuning = 0.0;  // g
  InputSpec input;
  GridSpec tau{0.0, 1.0, 201};                  // dimensionless tau = Jt/pi
  GridSpec theta{0.0, 0.0, 50};                 // hom scan, theta = Jt
  GridSpec theta0{0.0, 0.0, 50};                // hom scan, theta0 = JT
  std::string out = "out.csv";
};

// Built-in defaults for each named experiment.
ExperimentConfig default_config(ExperimentKind kind);

// Applies one key=value assignment; unknown keys and malformed values
// throw ConfigError naming the key.
void apply_config_value(ExperimentConfig& config, std::string_view key,
                        std::string_view value);

// Scans key=value lines; '#' comments and blank lines are skipped.  A line
// without '=' throws ConfigError with its line number.
std::vector<std::pair<std::string, std::string>> parse_config_pairs(
    std::string_view text);

// Parses the line-oriented key=value format ('#' starts a comment).  The
// 'experiment' key selects the defaults; remaining keys override them.
ExperimentConfig parse_config(std::string_view text);

// Checks every config invariant; throws ConfigError naming the field.
void validate_config(const ExperimentConfig& config);

TimeSeries run_fig1(const ExperimentConfig& config);
TimeSeries run_fig2(const ExperimentConfig& config);
TimeSeries run_fig3(const ExperimentConfig& config);
// Runs both built-in parameter sets (a) r=0.7 phi=3pi/2, (b) r=0.6 phi=pi.
std::pair<TimeSeries, TimeSeries> run_fig4(const ExperimentConfig& config);
TimeSeries run_hom_scan(const ExperimentConfig& config);
TimeSeries run_custom(const ExperimentConfig& config);

// Runs the configured experiment and writes its CSV file(s); returns the
// paths written.  fig4 writes two files suffixed -a and -b.
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config);

}  // namespace wgwalk

#endif  // WGWALK_EXPERIMENTS_HPP
