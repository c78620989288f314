// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wgwalk/experiments.hpp"
#include "wgwalk/fock.hpp"
#include "wgwalk/gaussian.hpp"
#include "wgwalk/lattice.hpp"

using namespace wgwalk;
using wgwalk::testing::direct_squeezing;
using wgwalk::testing::expm_propagator;
using wgwalk::testing::max_abs;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::numbers::sqrt2;

struct Outcome {
  bool ok = true;
  double worst = 0.0;  // reported as "max err"

  void absorb(double err) { worst = std::max(worst, err); }
  void require(double err, double tolerance) {
    absorb(err);
    if (!(err < tolerance)) ok = false;
  }
  void demand(bool condition) {
    if (!condition) ok = false;
  }
};

class Harness {
 public:
  void run(const std::string& name, double time_limit_s,
           const std::function<Outcome()>& criterion) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    std::string error;
    try {
      outcome = criterion();
    } catch (const std::exception& e) {
      outcome.ok = false;
      error = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool in_time = time_limit_s <= 0.0 || elapsed < time_limit_s;
    const bool pass = outcome.ok && in_time;
    all_passed_ &= pass;
    std::printf("%s  %-34s max err %.3e  [%6.2f s%s]\n",
                pass ? "PASS" : "FAIL", name.c_str(), outcome.worst, elapsed,
                time_limit_s > 0.0
                    ? (" < " + std::to_string(int(time_limit_s)) + " s").c_str()
                    : "");
    if (!error.empty()) {
      std::printf("      exception: %s\n", error.c_str());
    }
    if (!in_time) {
      std::printf("      exceeded the %.0f s budget\n", time_limit_s);
    }
  }

  bool all_passed() const { return all_passed_; }

 private:
  bool all_passed_ = true;
};

Outcome unitarity_orthonormality() {
  Outcome out;
  std::mt19937 rng(20260810);
  std::uniform_real_distribution<double> time_dist(0.0, 100.0);
  for (int n = 1; n <= 50; ++n) {
    const WaveguideArray array(n, 1.0, n % 4 == 0 ? 0.7 : 0.0);
    const auto a = propagator(array, time_dist(rng)).entries;
    out.require(
        max_abs(a * a.adjoint() - Eigen::MatrixXcd::Identity(n, n)), 1e-12);

    const Eigen::MatrixXd s = mode_profile_matrix(array);
    out.require((s * s.transpose() - Eigen::MatrixXd::Identity(n, n))
                    .cwiseAbs()
                    .maxCoeff(),
                1e-12);
    for (int row = 1; row <= n; ++row) {
      for (int col = 1; col <= n; ++col) {
        double sum = 0.0;
        for (int p = 1; p < n; ++p) {
          sum += s(row - 1, p - 1) * s(col - 1, p) +
                 s(row - 1, p) * s(col - 1, p - 1);
        }
        const double expected =
            row == col ? 2.0 * std::cos(row * kPi / (n + 1)) : 0.0;
        out.require(std::abs(sum - expected), 1e-12);
      }
    }
  }
  return out;
}

Outcome propagator_oracle() {
  Outcome out;
  std::mt19937 rng(515151);
  std::uniform_int_distribution<int> n_dist(1, 50);
  std::uniform_real_distribution<double> time_dist(0.0, 100.0);
  std::uniform_real_distribution<double> g_dist(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const WaveguideArray array(n_dist(rng), 1.0, g_dist(rng));
    const double t = time_dist(rng);
    out.require(max_abs(propagator(array, t).entries -
                        expm_propagator(array, t)),
                1e-10);
  }
  return out;
}

Outcome hom_dip() {
  Outcome out;
  const WaveguideArray array(2, 1.0);
  // closed form vs literal delayed-injection protocol, 50 x 50
  for (int i = 0; i < 50; ++i) {
    const double theta0 = (kPi / 2.0) * i / 49.0;
    for (int j = 0; j < 50; ++j) {
      const double theta = theta0 + kPi * j / 49.0;
      const double closed = hom_coincidence(array, theta, theta0).coincidence;
      const double oracle = hom_coincidence_oracle(array, theta, theta0);
      out.require(std::abs(closed - oracle), 1e-10);
    }
  }
  // the dip locus 2 theta - theta0 = pi/2
  for (int i = 0; i < 50; ++i) {
    const double theta0 = (kPi / 2.0) * i / 49.0;
    const double theta = 0.5 * (kPi / 2.0 + theta0);
    out.require(hom_coincidence(array, theta, theta0).coincidence, 1e-10);
    out.require(hom_coincidence_oracle(array, theta, theta0), 1e-10);
  }
  // exact certainty with no evolution and no delay
  out.demand(hom_coincidence(array, 0.0, 0.0).coincidence == 1.0);
  out.demand(hom_coincidence_oracle(array, 0.0, 0.0) == 1.0);
  return out;
}

Outcome two_photon_statistics() {
  Outcome out;
  for (int n = 2; n <= 4; ++n) {
    const WaveguideArray array(n, 1.0);
    const auto basis = make_fock_basis(n, 2);
    for (double t : {0.0, 0.2, 0.7, 1.9}) {
      for (int i = 1; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
          std::vector<int> occ(n, 0);
          occ[i - 1] += 1;
          occ[j - 1] += 1;
          const auto psi = evolve(fock_input_state(basis, occ), array, t);
          for (int k = 1; k <= n; ++k) {
            for (int l = k; l <= n; ++l) {
              std::vector<int> probe(n, 0);
              probe[k - 1] += 1;
              probe[l - 1] += 1;
              const double reference =
                  std::norm(psi.amplitudes(basis->index_of(probe)));
              const double formula =
                  two_photon_joint_probability(array, {i, j}, {k, l}, t);
              out.require(std::abs(formula - reference), 1e-10);
            }
          }
        }
      }
    }
  }
  return out;
}

Outcome squeezing_transfer() {
  Outcome out;
  const double r = 0.7, phi = 0.0;
  const double f = base_squeezing(r, phi);

  const auto two = squeezing_factors(
      propagate_moments(initial_moments({1, r, phi}, 2),
                        propagator(WaveguideArray(2, 1.0), kPi / 2.0)));
  out.require(std::abs(two[1].s_p - f), 1e-12);
  out.require(std::abs(two[0].s_q), 1e-12);

  const auto three = squeezing_factors(
      propagate_moments(initial_moments({1, r, phi}, 3),
                        propagator(WaveguideArray(3, 1.0), kPi / kSqrt2)));
  out.require(std::abs(three[2].s_q - f), 1e-12);

  // general N: propagated moments against the per-guide amplitude formula
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> time_dist(0.0, 12.0);
  std::uniform_real_distribution<double> r_dist(0.05, 1.1);
  std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * kPi);
  for (int n = 2; n <= 10; ++n) {
    const WaveguideArray array(n, 1.0, n % 3 == 0 ? 0.4 : 0.0);
    const double rr = r_dist(rng);
    const double pp = phi_dist(rng);
    for (int rep = 0; rep < 4; ++rep) {
      const double t = time_dist(rng);
      const auto a = propagator(array, t);
      const auto records = squeezing_factors(
          propagate_moments(initial_moments({1, rr, pp}, n), a));
      for (int guide = 1; guide <= n; ++guide) {
        const auto [s_q, s_p] = direct_squeezing(a.entries, 1, guide, rr, pp);
        out.require(std::abs(records[guide - 1].s_q - s_q), 1e-10);
        out.require(std::abs(records[guide - 1].s_p - s_p), 1e-10);
      }
    }
  }
  return out;
}

Outcome witness_closed_forms() {
  Outcome out;
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> r_dist(0.1, 1.0);
  std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * kPi);
  for (int set = 0; set < 3; ++set) {
    const double r = r_dist(rng);
    const double phi = phi_dist(rng);
    for (int i = 0; i < 100; ++i) {
      const double jt = 2.0 * kPi * i / 99.0;
      const auto m2 =
          propagate_moments(initial_moments({1, r, phi}, 2),
                            propagator(WaveguideArray(2, 1.0), jt));
      out.require(std::abs(entanglement_witness(m2, 1, 2) -
                           closed_form_witness(2, r, phi, jt, {1, 2})),
                  1e-10);
      const auto m3 =
          propagate_moments(initial_moments({1, r, phi}, 3),
                            propagator(WaveguideArray(3, 1.0), jt));
      out.require(std::abs(entanglement_witness(m3, 1, 2) -
                           closed_form_witness(3, r, phi, jt, {1, 2})),
                  1e-10);
      out.require(std::abs(entanglement_witness(m3, 1, 3) -
                           closed_form_witness(3, r, phi, jt, {1, 3})),
                  1e-10);
    }
  }
  // sign criterion away from a 1e-9 boundary band
  for (double r = 0.15; r < 1.2; r += 0.21) {
    for (double phi = 0.0; phi < 2.0 * kPi; phi += 0.19) {
      for (double jt = 0.0; jt < kPi; jt += 0.07) {
        const double margin =
            std::sin(2.0 * jt) * std::sin(phi) - std::tanh(r);
        if (std::abs(margin) < 1e-9) continue;
        const auto m =
            propagate_moments(initial_moments({1, r, phi}, 2),
                              propagator(WaveguideArray(2, 1.0), jt));
        out.demand((entanglement_witness(m, 1, 2) < 0.0) == (margin > 0.0));
      }
    }
  }
  return out;
}

Outcome gaussian_fock_cross_validation() {
  Outcome out;
  const double r = 0.3;
  for (int n : {2, 3}) {
    for (double phi : {0.0, 1.0, 3.0 * kPi / 2.0}) {
      const WaveguideArray array(n, 1.0);
      const auto basis = make_fock_basis(n, 24);
      const auto input = squeezed_fock_state(basis, 1, r, phi);
      out.demand(input.trusted());  // tail mass < 1e-8 first
      for (int step = 0; step <= 6; ++step) {
        const double t = 2.0 * kPi * step / 6.0;
        const auto fock_moments = moments_from_state(evolve(input, array, t));
        const auto gauss =
            propagate_moments(initial_moments({1, r, phi}, n),
                              propagator(array, t));
        const auto fock_records = squeezing_factors(fock_moments);
        const auto gauss_records = squeezing_factors(gauss);
        for (int j = 0; j < n; ++j) {
          out.require(std::abs(fock_records[j].s_q - gauss_records[j].s_q),
                      1e-6);
          out.require(std::abs(fock_records[j].s_p - gauss_records[j].s_p),
                      1e-6);
        }
        for (int j = 2; j <= n; ++j) {
          out.require(std::abs(entanglement_witness(fock_moments, 1, j) -
                               entanglement_witness(gauss, 1, j)),
                      1e-6);
        }
      }
    }
  }
  return out;
}

Outcome figure_reproduction() {
  Outcome out;

  // fig1: normalized rows that match the brute-force single photon
  const TimeSeries fig1 = run_fig1(default_config(ExperimentKind::fig1_transport));
  {
    const WaveguideArray array(6, 1.0);
    const auto basis = make_fock_basis(6, 1);
    std::vector<int> occ(6, 0);
    occ[0] = 1;
    const auto input = fock_input_state(basis, occ);
    for (std::size_t row = 0; row < fig1.n_rows(); ++row) {
      double sum = 0.0;
      const auto psi = evolve(input, array, fig1.x(row) * kPi);
      for (int j = 0; j < 6; ++j) {
        sum += fig1.value(row, j);
        std::vector<int> probe(6, 0);
        probe[j] = 1;
        out.require(std::abs(fig1.value(row, j) -
                             std::norm(psi.amplitudes(
                                 basis->index_of(probe)))),
                    1e-10);
      }
      out.require(std::abs(sum - 1.0), 1e-10);
    }
  }

  // fig2: variance bound
  const TimeSeries fig2 = run_fig2(default_config(ExperimentKind::fig2_squeezing));
  for (std::size_t row = 0; row < fig2.n_rows(); ++row) {
    for (std::size_t col = 0; col < fig2.n_value_cols(); ++col) {
      out.demand(fig2.value(row, col) >= -0.5);
    }
  }

  // fig3: variance bound and mirror symmetry of the center input
  const TimeSeries fig3 =
      run_fig3(default_config(ExperimentKind::fig3_squeezing_center));
  for (std::size_t row = 0; row < fig3.n_rows(); ++row) {
    for (int j = 0; j < 5; ++j) {
      out.demand(fig3.value(row, j) >= -0.5);
      out.demand(fig3.value(row, 5 + j) >= -0.5);
      out.require(std::abs(fig3.value(row, j) - fig3.value(row, 4 - j)),
                  1e-12);
      out.require(
          std::abs(fig3.value(row, 5 + j) - fig3.value(row, 5 + 4 - j)),
          1e-12);
    }
  }

  // fig4 set (a): the witness dips negative somewhere
  const auto [set_a, set_b] =
      run_fig4(default_config(ExperimentKind::fig4_witness));
  double min_a = set_a.value(0, 0);
  for (std::size_t row = 0; row < set_a.n_rows(); ++row) {
    for (std::size_t col = 0; col < set_a.n_value_cols(); ++col) {
      min_a = std::min(min_a, set_a.value(row, col));
    }
  }
  out.demand(min_a < 0.0);
  return out;
}

}  // namespace

int main() {
  Harness harness;
  harness.run("unitarity-orthonormality", 5.0, unitarity_orthonormality);
  harness.run("propagator-oracle", 5.0, propagator_oracle);
  harness.run("hom-dip", 10.0, hom_dip);
  harness.run("two-photon-joint-statistics", 10.0, two_photon_statistics);
  harness.run("squeezing-transfer", 0.0, squeezing_transfer);
  harness.run("witness-closed-forms", 0.0, witness_closed_forms);
  harness.run("gaussian-fock-cross-validation", 60.0,
              gaussian_fock_cross_validation);
  harness.run("figure-reproduction", 30.0, figure_reproduction);
  return harness.all_passed() ? 0 : 1;
}
