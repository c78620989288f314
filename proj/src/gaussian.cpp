#include "wgwalk/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wgwalk {

namespace {

double wrap_phase(double phi) {
  double w = std::fmod(phi, 2.0 * std::numbers::pi);
  if (w < 0.0) w += 2.0 * std::numbers::pi;
  return w;
}

void check_pair_indices(const GaussianMoments& moments, int j, int k,
                        const char* where) {
  const int n = moments.modes();
  if (j < 1 || j > n || k < 1 || k > n) {
    throw std::domain_error(std::string(where) + ": guide index outside 1.." +
                            std::to_string(n));
  }
  if (j == k) {
    throw std::domain_error(std::string(where) +
                            ": guide indices must differ");
  }
}

}  // namespace

GaussianMoments vacuum_moments(int n_modes) {
  if (n_modes < 1) {
    throw std::domain_error("vacuum_moments: n_modes must be >= 1");
  }
  return {Eigen::MatrixXcd::Zero(n_modes, n_modes),
          Eigen::MatrixXcd::Zero(n_modes, n_modes)};
}

GaussianMoments initial_moments(const SqueezedInput& input, int n_modes) {
  GaussianMoments m = vacuum_moments(n_modes);
  if (input.guide < 1 || input.guide > n_modes) {
    throw std::domain_error("initial_moments: input guide " +
                            std::to_string(input.guide) + " outside 1.." +
                            std::to_string(n_modes));
  }
  if (!std::isfinite(input.magnitude) || input.magnitude < 0.0) {
    throw std::domain_error(
        "initial_moments: squeezing magnitude must be finite and >= 0");
  }
  if (!std::isfinite(input.phase)) {
    throw std::domain_error("initial_moments: squeezing phase must be finite");
  }
  const double r = input.magnitude;
  const double phi = wrap_phase(input.phase);
  const int l = input.guide - 1;
  m.normal(l, l) = std::sinh(r) * std::sinh(r);
  m.anomalous(l, l) =
      -std::exp(cxd(0.0, phi)) * std::sinh(r) * std::cosh(r);
  return m;
}

GaussianMoments propagate_moments(const GaussianMoments& moments,
                                  const PropagatorMatrix& a) {
  if (moments.modes() != a.modes()) {
    throw std::domain_error(
        "propagate_moments: moment and propagator dimensions differ");
  }
  GaussianMoments out;
  out.normal = a.entries.conjugate() * moments.normal * a.entries.transpose();
  out.anomalous = a.entries * moments.anomalous * a.entries.transpose();
  return out;
}

std::vector<SqueezingRecord> squeezing_factors(const GaussianMoments& moments) {
  const int n = moments.modes();
  std::vector<SqueezingRecord> records(n);
  for (int j = 0; j < n; ++j) {
    const double occupation = moments.normal(j, j).real();
    const double anomalous = moments.anomalous(j, j).real();
    records[j] = {j + 1, occupation + anomalous, occupation - anomalous};
  }
  return records;
}

double total_photon_number(const GaussianMoments& moments) {
  return moments.normal.trace().real();
}

double entanglement_witness(const GaussianMoments& moments, int j, int k) {
  check_pair_indices(moments, j, k, "entanglement_witness");
  const cxd sum = moments.normal(j - 1, j - 1) + moments.normal(k - 1, k - 1) +
                  moments.anomalous(j - 1, k - 1) +
                  std::conj(moments.anomalous(k - 1, j - 1));
  if (std::abs(sum.imag()) > tol::exact) {
    throw std::domain_error(
        "entanglement_witness: moments are not a symmetric/Hermitian pair");
  }
  return sum.real();
}

Eigen::MatrixXd covariance_matrix(const GaussianMoments& moments) {
  const int n = moments.modes();
  const Eigen::MatrixXd re_n = moments.normal.real();
  const Eigen::MatrixXd im_n = moments.normal.imag();
  const Eigen::MatrixXd re_m = moments.anomalous.real();
  const Eigen::MatrixXd im_m = moments.anomalous.imag();
  const Eigen::MatrixXd half = 0.5 * Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd v(2 * n, 2 * n);
  v.topLeftCorner(n, n) = re_n + re_m + half;      // <q q>
  v.bottomRightCorner(n, n) = re_n - re_m + half;  // <p p>
  v.topRightCorner(n, n) = im_m + im_n;            // sym <q p>
  v.bottomLeftCorner(n, n) = v.topRightCorner(n, n).transpose();
  return v;
}

Eigen::VectorXd symplectic_eigenvalues(const GaussianMoments& moments) {
  const int n = moments.modes();
  const Eigen::MatrixXd v = covariance_matrix(moments);
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> root_solver(v);
  const Eigen::MatrixXd sqrt_v =
      root_solver.eigenvectors() *
      root_solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
      root_solver.eigenvectors().transpose();

  // i sqrt(V) Omega sqrt(V) is Hermitian with spectrum {+-nu_k}.
  const Eigen::MatrixXcd k =
      cxd(0.0, 1.0) * (sqrt_v * omega * sqrt_v).cast<cxd>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(k);
  return solver.eigenvalues().tail(n);
}

double base_squeezing(double r, double phi) {
  return std::sinh(r) * (std::sinh(r) - std::cos(phi) * std::cosh(r));
}

SqueezingClosedForm closed_form_squeezing(int n_guides, double r, double phi,
                                          double jt) {
  SqueezingClosedForm out;
  out.f = base_squeezing(r, phi);
  if (n_guides == 2) {
    const double c = std::cos(jt);
    const double s = std::sin(jt);
    out.s1_q = out.f * c * c;
    out.s2_p = out.f * s * s;
    return out;
  }
  if (n_guides == 3) {
    const double c = std::cos(jt / std::numbers::sqrt2);
    const double s = std::sin(jt / std::numbers::sqrt2);
    const double s2 = std::sin(std::numbers::sqrt2 * jt);
    out.s1_q = out.f * c * c * c * c;
    out.s3_q = out.f * s * s * s * s;
    out.s2_p = 0.5 * out.f * s2 * s2;
    return out;
  }
  throw std::domain_error(
      "closed_form_squeezing: closed forms exist only for 2 or 3 guides");
}

double closed_form_witness(int n_guides, double r, double phi, double jt,
                           std::pair<int, int> pair) {
  const double sh2 = std::sinh(r) * std::sinh(r);
  const double sh2r = std::sinh(2.0 * r);
  if (n_guides == 2 && pair == std::pair{1, 2}) {
    return 0.5 * sh2r * (std::tanh(r) - std::sin(2.0 * jt) * std::sin(phi));
  }
  if (n_guides == 3 && pair == std::pair{1, 2}) {
    const double c = std::cos(jt / std::numbers::sqrt2);
    const double s2 = std::sin(std::numbers::sqrt2 * jt);
    return 0.5 * c * c *
           ((3.0 - std::cos(std::numbers::sqrt2 * jt)) * sh2 -
            std::numbers::sqrt2 * std::sin(phi) * sh2r * s2);
  }
  if (n_guides == 3 && pair == std::pair{1, 3}) {
    const double s2 = std::sin(std::numbers::sqrt2 * jt);
    return 0.25 * (std::cos(phi) * sh2r * s2 * s2 +
                   (3.0 + std::cos(2.0 * std::numbers::sqrt2 * jt)) * sh2);
  }
  throw std::domain_error(
      "closed_form_witness: unsupported guide count or pair (" +
      std::to_string(pair.first) + "," + std::to_string(pair.second) + ")");
}

}  // namespace wgwalk
