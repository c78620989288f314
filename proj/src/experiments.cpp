#include "wgwalk/experiments.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

#include "wgwalk/fock.hpp"
#include "wgwalk/gaussian.hpp"
#include "wgwalk/lattice.hpp"

namespace wgwalk {

namespace {

constexpr std::array<std::pair<std::string_view, ExperimentKind>, 6>
    kExperimentNames{{{"fig1-transport", ExperimentKind::fig1_transport},
                      {"fig2-squeezing", ExperimentKind::fig2_squeezing},
                      {"fig3-squeezing-center",
                       ExperimentKind::fig3_squeezing_center},
                      {"fig4-witness", ExperimentKind::fig4_witness},
                      {"hom-scan", ExperimentKind::hom_scan},
                      {"custom", ExperimentKind::custom}}};

constexpr std::array<std::pair<std::string_view, ExperimentKind>, 4>
    kExperimentAliases{{{"fig1", ExperimentKind::fig1_transport},
                        {"fig2", ExperimentKind::fig2_squeezing},
                        {"fig3", ExperimentKind::fig3_squeezing_center},
                        {"fig4", ExperimentKind::fig4_witness}}};

// Fixed parameter sets of the witness experiment.
constexpr double kFig4RA = 0.7;
const double kFig4PhiA = 3.0 * std::numbers::pi / 2.0;
constexpr double kFig4RB = 0.6;
const double kFig4PhiB = std::numbers::pi;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double_value(std::string_view key, std::string_view value) {
  double v = 0.0;
  auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
    throw ConfigError("malformed number '" + std::string(value) +
                      "' for key '" + std::string(key) + "'");
  }
  return v;
}

int parse_int_value(std::string_view key, std::string_view value) {
  int v = 0;
  auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
    throw ConfigError("malformed integer '" + std::string(value) +
                      "' for key '" + std::string(key) + "'");
  }
  return v;
}

std::vector<std::string_view> split_on(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    std::size_t end = text.find(sep, begin);
    if (end == std::string_view::npos) {
      parts.push_back(text.substr(begin));
      return parts;
    }
    parts.push_back(text.substr(begin, end - begin));
    begin = end + 1;
  }
}

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) {
    throw ConfigError(std::string(field) + " must be finite");
  }
}

void validate_grid(const GridSpec& grid, const char* prefix) {
  require_finite(grid.start, (std::string(prefix) + "_start").c_str());
  require_finite(grid.stop, (std::string(prefix) + "_stop").c_str());
  if (grid.steps < 2) {
    throw ConfigError(std::string(prefix) + "_steps must be >= 2 (got " +
                      std::to_string(grid.steps) + ")");
  }
  if (!(grid.stop > grid.start)) {
    throw ConfigError(std::string(prefix) + "_stop must exceed " +
                      std::string(prefix) + "_start");
  }
}

WaveguideArray array_of(const ExperimentConfig& c) {
  return WaveguideArray(c.n_guides, c.coupling, c.detuning);
}

SqueezedInput squeezed_of(const ExperimentConfig& c) {
  return SqueezedInput{c.input.guide, c.input.r, c.input.phi};
}

// tau = Jt/pi is the figure axis; physical time enters the engines.
double time_of_tau(const ExperimentConfig& c, double tau) {
  return tau * std::numbers::pi / c.coupling;
}

void add_config_metadata(TimeSeries& ts, const ExperimentConfig& c) {
  ts.add_metadata("experiment", std::string(experiment_name(c.experiment)));
  ts.add_metadata("n_guides", std::to_string(c.n_guides));
  ts.add_metadata("coupling", format_double(c.coupling));
  ts.add_metadata("detuning", format_double(c.detuning));
  ts.add_metadata("input", c.input.to_string());
  if (c.experiment == ExperimentKind::hom_scan) {
    ts.add_metadata("theta_start", format_double(c.theta.start));
    ts.add_metadata("theta_stop", format_double(c.theta.stop));
    ts.add_metadata("theta_steps", std::to_string(c.theta.steps));
    ts.add_metadata("theta0_start", format_double(c.theta0.start));
    ts.add_metadata("theta0_stop", format_double(c.theta0.stop));
    ts.add_metadata("theta0_steps", std::to_string(c.theta0.steps));
  } else {
    ts.add_metadata("tau_start", format_double(c.tau.start));
    ts.add_metadata("tau_stop", format_double(c.tau.stop));
    ts.add_metadata("tau_steps", std::to_string(c.tau.steps));
  }
  ts.add_metadata("out", c.out);
}

void require_input_kind(const ExperimentConfig& c, InputSpec::Kind kind,
                        const char* what) {
  if (c.input.kind != kind) {
    throw ConfigError(std::string(what));
  }
}

}  // namespace

std::string_view experiment_name(ExperimentKind kind) {
  for (const auto& [name, k] : kExperimentNames) {
    if (k == kind) return name;
  }
  return "custom";
}

ExperimentKind experiment_from_name(std::string_view name) {
  for (const auto& [n, k] : kExperimentNames) {
    if (n == name) return k;
  }
  for (const auto& [n, k] : kExperimentAliases) {
    if (n == name) return k;
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

std::string InputSpec::to_string() const {
  switch (kind) {
    case Kind::single:
      return "single:" + std::to_string(guide);
    case Kind::fock: {
      std::string out = "fock:";
      for (std::size_t i = 0; i < occupations.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(occupations[i]);
      }
      return out;
    }
    case Kind::squeezed:
      return "squeezed:" + std::to_string(guide) + ":" + format_double(r) +
             ":" + format_double(phi);
  }
  return {};
}

InputSpec InputSpec::parse(std::string_view text) {
  const auto parts = split_on(text, ':');
  InputSpec spec;
  if (parts[0] == "single") {
    if (parts.size() != 2) {
      throw ConfigError("input: expected single:<guide>");
    }
    spec.kind = Kind::single;
    spec.guide = parse_int_value("input", parts[1]);
    return spec;
  }
  if (parts[0] == "fock") {
    if (parts.size() != 2 || parts[1].empty()) {
      throw ConfigError("input: expected fock:<n1,n2,...>");
    }
    spec.kind = Kind::fock;
    for (auto token : split_on(parts[1], ',')) {
      spec.occupations.push_back(parse_int_value("input", token));
    }
    return spec;
  }
  if (parts[0] == "squeezed") {
    if (parts.size() != 4) {
      throw ConfigError("input: expected squeezed:<guide>:<r>:<phi>");
    }
    spec.kind = Kind::squeezed;
    spec.guide = parse_int_value("input", parts[1]);
    spec.r = parse_double_value("input", parts[2]);
    spec.phi = parse_double_value("input", parts[3]);
    return spec;
  }
  throw ConfigError("input: unknown input kind '" + std::string(parts[0]) +
                    "' (expected single, fock, or squeezed)");
}

std::vector<double> GridSpec::points() const {
  std::vector<double> pts(steps);
  const double step = (stop - start) / (steps - 1);
  for (int i = 0; i < steps; ++i) {
    pts[i] = start + i * step;
  }
  pts.back() = stop;  // endpoint inclusive exactly
  return pts;
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  c.theta = {0.0, std::numbers::pi, 50};
  c.theta0 = {0.0, std::numbers::pi / 2.0, 50};
  switch (kind) {
    case ExperimentKind::fig1_transport:
      c.n_guides = 6;
      c.input = {InputSpec::Kind::single, 1, {}, 0.0, 0.0};
      c.tau = {0.0, 1.0, 201};
      break;
    case ExperimentKind::fig2_squeezing:
      c.n_guides = 5;
      c.input = {InputSpec::Kind::squeezed, 1, {}, 0.7, 0.0};
      c.tau = {0.0, 1.0, 201};
      break;
    case ExperimentKind::fig3_squeezing_center:
      c.n_guides = 5;
      c.input = {InputSpec::Kind::squeezed, 3, {}, 0.7, 0.0};
      c.tau = {0.0, 2.0, 201};
      break;
    case ExperimentKind::fig4_witness:
      c.n_guides = 6;
      c.input = {InputSpec::Kind::squeezed, 1, {}, kFig4RA, kFig4PhiA};
      c.tau = {0.0, 2.0, 201};
      break;
    case ExperimentKind::hom_scan:
      c.n_guides = 2;
      c.input = {InputSpec::Kind::single, 1, {}, 0.0, 0.0};
      break;
    case ExperimentKind::custom:
      c.n_guides = 2;
      c.input = {InputSpec::Kind::single, 1, {}, 0.0, 0.0};
      c.tau = {0.0, 1.0, 201};
      break;
  }
  c.out = std::string(experiment_name(kind)) + ".csv";
  return c;
}

void apply_config_value(ExperimentConfig& config, std::string_view key,
                        std::string_view value) {
  if (key == "experiment") {
    throw ConfigError(
        "key 'experiment' selects the defaults and cannot be reassigned");
  } else if (key == "n_guides") {
    config.n_guides = parse_int_value(key, value);
  } else if (key == "coupling") {
    config.coupling = parse_double_value(key, value);
  } else if (key == "detuning") {
    config.detuning = parse_double_value(key, value);
  } else if (key == "input") {
    config.input = InputSpec::parse(value);
  } else if (key == "tau_start") {
    config.tau.start = parse_double_value(key, value);
  } else if (key == "tau_stop") {
    config.tau.stop = parse_double_value(key, value);
  } else if (key == "tau_steps") {
    config.tau.steps = parse_int_value(key, value);
  } else if (key == "theta_start") {
    config.theta.start = parse_double_value(key, value);
  } else if (key == "theta_stop") {
    config.theta.stop = parse_double_value(key, value);
  } else if (key == "theta_steps") {
    config.theta.steps = parse_int_value(key, value);
  } else if (key == "theta0_start") {
    config.theta0.start = parse_double_value(key, value);
  } else if (key == "theta0_stop") {
    config.theta0.stop = parse_double_value(key, value);
  } else if (key == "theta0_steps") {
    config.theta0.steps = parse_int_value(key, value);
  } else if (key == "out") {
    config.out = std::string(value);
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

std::vector<std::pair<std::string, std::string>> parse_config_pairs(
    std::string_view text) {
  std::vector<std::pair<std::string, std::string>> pairs;
  int line_no = 0;
  for (auto raw_line : split_on(text, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key=value, got '" + std::string(line) +
                        "'");
    }
    pairs.emplace_back(std::string(trim(line.substr(0, eq))),
                       std::string(trim(line.substr(eq + 1))));
  }
  return pairs;
}

ExperimentConfig parse_config(std::string_view text) {
  const auto pairs = parse_config_pairs(text);
  ExperimentKind kind = ExperimentKind::custom;
  bool have_experiment = false;
  for (const auto& [key, value] : pairs) {
    if (key == "experiment") {
      kind = experiment_from_name(value);
      have_experiment = true;
    }
  }
  if (!have_experiment) {
    throw ConfigError("missing required key 'experiment'");
  }
  ExperimentConfig config = default_config(kind);
  for (const auto& [key, value] : pairs) {
    if (key == "experiment") continue;
    apply_config_value(config, key, value);
  }
  validate_config(config);
  return config;
}

void validate_config(const ExperimentConfig& c) {
  if (c.n_guides < 1) {
    throw ConfigError("n_guides must be >= 1 (got " +
                      std::to_string(c.n_guides) + ")");
  }
  require_finite(c.coupling, "coupling");
  require_finite(c.detuning, "detuning");
  if (!(c.coupling > 0.0)) {
    throw ConfigError("coupling must be > 0 to map tau = Jt/pi to time");
  }
  if (c.experiment == ExperimentKind::hom_scan) {
    validate_grid(c.theta, "theta");
    validate_grid(c.theta0, "theta0");
    if (c.theta.start < 0.0 || c.theta0.start < 0.0) {
      throw ConfigError("theta_start and theta0_start must be >= 0");
    }
    if (c.n_guides != 2) {
      throw ConfigError("hom-scan requires n_guides=2");
    }
  } else {
    validate_grid(c.tau, "tau");
  }

  switch (c.input.kind) {
    case InputSpec::Kind::single:
    case InputSpec::Kind::squeezed:
      if (c.input.guide < 1 || c.input.guide > c.n_guides) {
        throw ConfigError("input guide " + std::to_string(c.input.guide) +
                          " outside 1.." + std::to_string(c.n_guides));
      }
      break;
    case InputSpec::Kind::fock:
      if (static_cast<int>(c.input.occupations.size()) != c.n_guides) {
        throw ConfigError("input: fock occupation list must have n_guides=" +
                          std::to_string(c.n_guides) + " entries");
      }
      for (int n : c.input.occupations) {
        if (n < 0) throw ConfigError("input: fock occupations must be >= 0");
      }
      break;
  }
  if (c.input.kind == InputSpec::Kind::squeezed) {
    require_finite(c.input.r, "input squeezing magnitude");
    require_finite(c.input.phi, "input squeezing phase");
    if (c.input.r < 0.0) {
      throw ConfigError("input squeezing magnitude must be >= 0");
    }
  }

  switch (c.experiment) {
    case ExperimentKind::fig1_transport:
      require_input_kind(c, InputSpec::Kind::single,
                         "fig1-transport requires input=single:<guide>");
      break;
    case ExperimentKind::fig2_squeezing:
    case ExperimentKind::fig3_squeezing_center:
      require_input_kind(
          c, InputSpec::Kind::squeezed,
          "this experiment requires input=squeezed:<guide>:<r>:<phi>");
      break;
    case ExperimentKind::fig4_witness:
      require_input_kind(
          c, InputSpec::Kind::squeezed,
          "fig4-witness requires input=squeezed:<guide>:<r>:<phi>");
      if (c.input.r != kFig4RA || c.input.phi != kFig4PhiA) {
        throw ConfigError(
            "fig4-witness parameter sets are fixed ((a) r=0.7 phi=3pi/2, "
            "(b) r=0.6 phi=pi); only the input guide may change -- use "
            "experiment=custom for other squeezing parameters");
      }
      break;
    case ExperimentKind::hom_scan:
    case ExperimentKind::custom:
      break;
  }
  if (c.out.empty()) {
    throw ConfigError("out must not be empty");
  }
}

TimeSeries run_fig1(const ExperimentConfig& config) {
  validate_config(config);
  require_input_kind(config, InputSpec::Kind::single,
                     "fig1-transport requires input=single:<guide>");
  const WaveguideArray array = array_of(config);
  const auto taus = config.tau.points();
  std::vector<double> times(taus.size());
  std::transform(taus.begin(), taus.end(), times.begin(),
                 [&](double tau) { return time_of_tau(config, tau); });
  const TimeSeries transport =
      transport_intensity(array, config.input.guide, times);
  TimeSeries out("tau", transport.value_labels());
  add_config_metadata(out, config);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    out.add_row(taus[i], transport.row(i));
  }
  return out;
}

namespace {

// Shared loop of the squeezing experiments: per tau, propagate the input
// moments and tabulate the requested per-guide factors.
TimeSeries squeezing_series(const ExperimentConfig& config, bool with_p) {
  const WaveguideArray array = array_of(config);
  const int n = config.n_guides;
  std::vector<std::string> labels;
  for (int j = 1; j <= n; ++j) labels.push_back("s_q_" + std::to_string(j));
  if (with_p) {
    for (int j = 1; j <= n; ++j) labels.push_back("s_p_" + std::to_string(j));
  }
  TimeSeries out("tau", std::move(labels));
  add_config_metadata(out, config);
  const GaussianMoments start = initial_moments(squeezed_of(config), n);
  std::vector<double> row(with_p ? 2 * n : n);
  for (double tau : config.tau.points()) {
    const GaussianMoments moments = propagate_moments(
        start, propagator(array, time_of_tau(config, tau)));
    const auto records = squeezing_factors(moments);
    for (int j = 0; j < n; ++j) {
      row[j] = records[j].s_q;
      if (with_p) row[n + j] = records[j].s_p;
    }
    out.add_row(tau, row);
  }
  return out;
}

}  // namespace

TimeSeries run_fig2(const ExperimentConfig& config) {
  validate_config(config);
  require_input_kind(
      config, InputSpec::Kind::squeezed,
      "fig2-squeezing requires input=squeezed:<guide>:<r>:<phi>");
  return squeezing_series(config, /*with_p=*/false);
}

TimeSeries run_fig3(const ExperimentConfig& config) {
  validate_config(config);
  require_input_kind(
      config, InputSpec::Kind::squeezed,
      "fig3-squeezing-center requires input=squeezed:<guide>:<r>:<phi>");
  return squeezing_series(config, /*with_p=*/true);
}

namespace {

TimeSeries witness_series(const ExperimentConfig& config, char set_label,
                          double r, double phi) {
  ExperimentConfig effective = config;
  effective.input.r = r;
  effective.input.phi = phi;
  const WaveguideArray array = array_of(effective);
  const int n = effective.n_guides;
  const int l = effective.input.guide;
  std::vector<std::string> labels;
  std::vector<int> partners;
  for (int j = 1; j <= n; ++j) {
    if (j == l) continue;
    partners.push_back(j);
    labels.push_back("M_" + std::to_string(l) + "_" + std::to_string(j));
  }
  TimeSeries out("tau", std::move(labels));
  add_config_metadata(out, effective);
  out.add_metadata("set", std::string(1, set_label));
  out.add_metadata("assumed_input_guide", std::to_string(l));
  const GaussianMoments start = initial_moments(squeezed_of(effective), n);
  std::vector<double> row(partners.size());
  for (double tau : effective.tau.points()) {
    const GaussianMoments moments = propagate_moments(
        start, propagator(array, time_of_tau(effective, tau)));
    for (std::size_t i = 0; i < partners.size(); ++i) {
      row[i] = entanglement_witness(moments, l, partners[i]);
    }
    out.add_row(tau, row);
  }
  return out;
}

}  // namespace

std::pair<TimeSeries, TimeSeries> run_fig4(const ExperimentConfig& config) {
  validate_config(config);
  require_input_kind(
      config, InputSpec::Kind::squeezed,
      "fig4-witness requires input=squeezed:<guide>:<r>:<phi>");
  return {witness_series(config, 'a', kFig4RA, kFig4PhiA),
          witness_series(config, 'b', kFig4RB, kFig4PhiB)};
}

TimeSeries run_hom_scan(const ExperimentConfig& config) {
  validate_config(config);
  if (config.n_guides != 2) {
    throw ConfigError("hom-scan requires n_guides=2");
  }
  const WaveguideArray array = array_of(config);
  TimeSeries out("theta",
                 {"theta0", "p_closed_form", "p_oracle", "abs_diff"});
  add_config_metadata(out, config);
  double max_diff = 0.0;
  for (double theta : config.theta.points()) {
    for (double theta0 : config.theta0.points()) {
      if (theta0 > theta) continue;  // oracle needs delay <= t
      const double closed = hom_coincidence(array, theta, theta0).coincidence;
      const double oracle = hom_coincidence_oracle(
          array, theta / config.coupling, theta0 / config.coupling);
      const double diff = std::abs(closed - oracle);
      max_diff = std::max(max_diff, diff);
      out.add_row(theta, std::array{theta0, closed, oracle, diff});
    }
  }
  out.add_metadata("max_abs_diff", format_double(max_diff));
  return out;
}

TimeSeries run_custom(const ExperimentConfig& config) {
  validate_config(config);
  const int n = config.n_guides;
  switch (config.input.kind) {
    case InputSpec::Kind::single: {
      ExperimentConfig as_fig1 = config;
      as_fig1.experiment = ExperimentKind::custom;
      return run_fig1(as_fig1);
    }
    case InputSpec::Kind::fock: {
      const WaveguideArray array = array_of(config);
      int total = 0;
      for (int occ : config.input.occupations) total += occ;
      const auto basis = make_fock_basis(n, total);
      const FockStateVector start =
          fock_input_state(basis, config.input.occupations);
      std::vector<std::string> labels;
      for (int j = 1; j <= n; ++j) {
        labels.push_back("mean_n_" + std::to_string(j));
      }
      TimeSeries out("tau", std::move(labels));
      add_config_metadata(out, config);
      for (double tau : config.tau.points()) {
        const FockStateVector psi =
            evolve(start, array, time_of_tau(config, tau));
        out.add_row(tau, mean_occupations(psi));
      }
      return out;
    }
    case InputSpec::Kind::squeezed: {
      const WaveguideArray array = array_of(config);
      const int l = config.input.guide;
      std::vector<std::string> labels;
      std::vector<int> partners;
      for (int j = 1; j <= n; ++j) labels.push_back("s_q_" + std::to_string(j));
      for (int j = 1; j <= n; ++j) labels.push_back("s_p_" + std::to_string(j));
      for (int j = 1; j <= n; ++j) {
        if (j == l) continue;
        partners.push_back(j);
        labels.push_back("M_" + std::to_string(l) + "_" + std::to_string(j));
      }
      TimeSeries out("tau", std::move(labels));
      add_config_metadata(out, config);
      const GaussianMoments start = initial_moments(squeezed_of(config), n);
      std::vector<double> row(out.n_value_cols());
      for (double tau : config.tau.points()) {
        const GaussianMoments moments = propagate_moments(
            start, propagator(array, time_of_tau(config, tau)));
        const auto records = squeezing_factors(moments);
        for (int j = 0; j < n; ++j) {
          row[j] = records[j].s_q;
          row[n + j] = records[j].s_p;
        }
        for (std::size_t i = 0; i < partners.size(); ++i) {
          row[2 * n + i] = entanglement_witness(moments, l, partners[i]);
        }
        out.add_row(tau, row);
      }
      return out;
    }
  }
  throw ConfigError("custom: unsupported input kind");
}

namespace {

std::filesystem::path suffixed_path(const std::filesystem::path& base,
                                    std::string_view suffix) {
  std::filesystem::path p = base;
  const std::string stem = p.stem().string();
  const std::string ext = p.extension().string();
  p.replace_filename(stem + std::string(suffix) + ext);
  return p;
}

void write_series(const TimeSeries& ts, const std::filesystem::path& path,
                  std::vector<std::filesystem::path>& written) {
  std::ofstream file(path);
  if (!file) {
    throw ConfigError("cannot open output file '" + path.string() +
                      "' for writing");
  }
  file << ts.to_csv();
  if (!file) {
    throw std::runtime_error("write failed for '" + path.string() + "'");
  }
  written.push_back(path);
}

}  // namespace

std::vector<std::filesystem::path> run_experiment(
    const ExperimentConfig& config) {
  validate_config(config);
  std::vector<std::filesystem::path> written;
  const std::filesystem::path out_path(config.out);
  switch (config.experiment) {
    case ExperimentKind::fig1_transport:
      write_series(run_fig1(config), out_path, written);
      break;
    case ExperimentKind::fig2_squeezing:
      write_series(run_fig2(config), out_path, written);
      break;
    case ExperimentKind::fig3_squeezing_center:
      write_series(run_fig3(config), out_path, written);
      break;
    case ExperimentKind::fig4_witness: {
      const auto [a, b] = run_fig4(config);
      write_series(a, suffixed_path(out_path, "-a"), written);
      write_series(b, suffixed_path(out_path, "-b"), written);
      break;
    }
    case ExperimentKind::hom_scan:
      write_series(run_hom_scan(config), out_path, written);
      break;
    case ExperimentKind::custom:
      write_series(run_custom(config), out_path, written);
      break;
  }
  return written;
}

}  // namespace wgwalk
