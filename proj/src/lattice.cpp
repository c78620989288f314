#include "wgwalk/lattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wgwalk {

WaveguideArray::WaveguideArray(int n_guides, double coupling, double detuning)
    : n_guides_(n_guides), coupling_(coupling), detuning_(detuning) {
  if (n_guides < 1) {
    throw std::domain_error("WaveguideArray: n_guides must be >= 1, got " +
                            std::to_string(n_guides));
  }
  if (!std::isfinite(coupling) || coupling < 0.0) {
    throw std::domain_error(
        "WaveguideArray: coupling must be finite and >= 0");
  }
  if (!std::isfinite(detuning)) {
    throw std::domain_error("WaveguideArray: detuning must be finite");
  }
}

double eval_mode_profile(const WaveguideArray& array, int guide, int mode) {
  const int n = array.n_guides();
  if (guide < 1 || guide > n) {
    throw std::domain_error("eval_mode_profile: guide index " +
                            std::to_string(guide) + " outside 1.." +
                            std::to_string(n));
  }
  if (mode < 1 || mode > n) {
    throw std::domain_error("eval_mode_profile: mode index " +
                            std::to_string(mode) + " outside 1.." +
                            std::to_string(n));
  }
  const double arg =
      static_cast<double>(guide) * mode * std::numbers::pi / (n + 1);
  return std::sqrt(2.0 / (n + 1)) * std::sin(arg);
}

std::vector<double> eigen_shifts(const WaveguideArray& array) {
  const int n = array.n_guides();
  std::vector<double> beta(n);
  for (int p = 1; p <= n; ++p) {
    beta[p - 1] =
        2.0 * array.coupling() * std::cos(p * std::numbers::pi / (n + 1));
  }
  return beta;
}

std::vector<EigenMode> eigen_modes(const WaveguideArray& array) {
  const int n = array.n_guides();
  const auto beta = eigen_shifts(array);
  std::vector<EigenMode> modes(n);
  for (int p = 1; p <= n; ++p) {
    EigenMode& m = modes[p - 1];
    m.index = p;
    m.eigenshift = beta[p - 1];
    m.profile.resize(n);
    for (int j = 1; j <= n; ++j) {
      m.profile(j - 1) = eval_mode_profile(array, j, p);
    }
  }
  return modes;
}

Eigen::MatrixXd mode_profile_matrix(const WaveguideArray& array) {
  const int n = array.n_guides();
  Eigen::MatrixXd s(n, n);
  for (int j = 1; j <= n; ++j) {
    for (int p = 1; p <= n; ++p) {
      s(j - 1, p - 1) = eval_mode_profile(array, j, p);
    }
  }
  return s;
}

PropagatorMatrix propagator(const WaveguideArray& array, double t) {
  if (!std::isfinite(t)) {
    throw std::domain_error("propagator: time must be finite");
  }
  const int n = array.n_guides();
  const Eigen::MatrixXd s = mode_profile_matrix(array);
  const auto beta = eigen_shifts(array);
  Eigen::VectorXcd phase(n);
  for (int p = 0; p < n; ++p) {
    phase(p) = std::exp(cxd(0.0, -(array.detuning() + beta[p]) * t));
  }
  PropagatorMatrix a;
  a.time = t;
  a.entries = s.cast<cxd>() * phase.asDiagonal() * s.transpose().cast<cxd>();
  return a;
}

TimeSeries transport_intensity(const WaveguideArray& array, int input_guide,
                               std::span<const double> times) {
  const int n = array.n_guides();
  if (input_guide < 1 || input_guide > n) {
    throw std::domain_error("transport_intensity: input guide " +
                            std::to_string(input_guide) + " outside 1.." +
                            std::to_string(n));
  }
  if (times.empty()) {
    throw std::domain_error("transport_intensity: time grid is empty");
  }
  std::vector<std::string> labels(n);
  for (int j = 0; j < n; ++j) {
    labels[j] = "guide" + std::to_string(j + 1);
  }
  TimeSeries ts("t", std::move(labels));
  std::vector<double> row(n);
  for (double t : times) {
    const PropagatorMatrix a = propagator(array, t);
    for (int j = 0; j < n; ++j) {
      row[j] = std::norm(a.entries(j, input_guide - 1));
    }
    ts.add_row(t, row);
  }
  return ts;
}

}  // namespace wgwalk
