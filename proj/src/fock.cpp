#include "wgwalk/fock.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wgwalk {

namespace {

void append_compositions(int remaining, int slots, std::vector<int>& prefix,
                         std::vector<int>& out) {
  if (slots == 1) {
    out.insert(out.end(), prefix.begin(), prefix.end());
    out.push_back(remaining);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    prefix.push_back(v);
    append_compositions(remaining - v, slots - 1, prefix, out);
    prefix.pop_back();
  }
}

void check_guide(int guide, int n_modes, const char* where) {
  if (guide < 1 || guide > n_modes) {
    throw std::domain_error(std::string(where) + ": guide index " +
                            std::to_string(guide) + " outside 1.." +
                            std::to_string(n_modes));
  }
}

void check_match(const WaveguideArray& array, const FockBasis& basis,
                 const char* where) {
  if (array.n_guides() != basis.n_modes()) {
    throw std::domain_error(std::string(where) +
                            ": basis and array mode counts differ (" +
                            std::to_string(basis.n_modes()) + " vs " +
                            std::to_string(array.n_guides()) + ")");
  }
}

// Dense H/hbar restricted to one photon-number sector.
Eigen::MatrixXd sector_hamiltonian(const WaveguideArray& array,
                                   const FockBasis& basis, int total) {
  const std::size_t begin = basis.sector_begin(total);
  const std::size_t dim = basis.sector_end(total) - begin;
  const int n = basis.n_modes();
  const double j_rate = array.coupling();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<int> target(n);
  for (std::size_t row = 0; row < dim; ++row) {
    const auto occ = basis.occupation(begin + row);
    h(row, row) = array.detuning() * total;
    for (int m = 0; m + 1 < n; ++m) {
      if (occ[m + 1] > 0) {  // hop m+1 -> m
        std::copy(occ.begin(), occ.end(), target.begin());
        ++target[m];
        --target[m + 1];
        const std::size_t col = basis.index_of(target) - begin;
        h(col, row) += j_rate * std::sqrt((occ[m] + 1.0) * occ[m + 1]);
      }
      if (occ[m] > 0) {  // hop m -> m+1
        std::copy(occ.begin(), occ.end(), target.begin());
        --target[m];
        ++target[m + 1];
        const std::size_t col = basis.index_of(target) - begin;
        h(col, row) += j_rate * std::sqrt((occ[m + 1] + 1.0) * occ[m]);
      }
    }
  }
  return h;
}

}  // namespace

FockBasis::FockBasis(int n_modes, int max_total)
    : n_modes_(n_modes), max_total_(max_total) {
  if (n_modes < 1) {
    throw std::domain_error("FockBasis: n_modes must be >= 1");
  }
  if (max_total < 0) {
    throw std::domain_error("FockBasis: max_total must be >= 0");
  }
  std::vector<int> prefix;
  sector_offsets_.push_back(0);
  for (int total = 0; total <= max_total; ++total) {
    append_compositions(total, n_modes, prefix, occupations_);
    sector_offsets_.push_back(occupations_.size() / n_modes);
  }
  for (std::size_t i = 0; i < size(); ++i) {
    const auto occ = occupation(i);
    index_.emplace(std::vector<int>(occ.begin(), occ.end()), i);
  }
}

std::span<const int> FockBasis::occupation(std::size_t index) const {
  if (index >= size()) {
    throw std::domain_error("FockBasis::occupation: index out of range");
  }
  return {occupations_.data() + index * n_modes_,
          static_cast<std::size_t>(n_modes_)};
}

std::size_t FockBasis::index_of(std::span<const int> occupation) const {
  auto it = index_.find(std::vector<int>(occupation.begin(), occupation.end()));
  if (it == index_.end()) {
    throw std::domain_error(
        "FockBasis::index_of: occupation vector not in basis (wrong length, "
        "negative entry, or truncation exceeded)");
  }
  return it->second;
}

bool FockBasis::contains(std::span<const int> occupation) const {
  return index_.count(
             std::vector<int>(occupation.begin(), occupation.end())) > 0;
}

int FockBasis::total_photons(std::size_t index) const {
  const auto occ = occupation(index);
  return std::accumulate(occ.begin(), occ.end(), 0);
}

std::size_t FockBasis::sector_begin(int total) const {
  if (total < 0 || total > max_total_) {
    throw std::domain_error("FockBasis::sector_begin: total out of range");
  }
  return sector_offsets_[total];
}

std::size_t FockBasis::sector_end(int total) const {
  if (total < 0 || total > max_total_) {
    throw std::domain_error("FockBasis::sector_end: total out of range");
  }
  return sector_offsets_[total + 1];
}

std::shared_ptr<const FockBasis> make_fock_basis(int n_modes, int max_total) {
  return std::make_shared<const FockBasis>(n_modes, max_total);
}

double FockStateVector::tail_mass() const {
  const std::size_t begin = basis->sector_begin(basis->max_total());
  const std::size_t dim = basis->sector_end(basis->max_total()) - begin;
  return amplitudes.segment(begin, dim).squaredNorm();
}

FockStateVector fock_input_state(std::shared_ptr<const FockBasis> basis,
                                 const std::vector<int>& occupations) {
  if (static_cast<int>(occupations.size()) != basis->n_modes()) {
    throw std::domain_error("fock_input_state: occupation length " +
                            std::to_string(occupations.size()) +
                            " does not match " +
                            std::to_string(basis->n_modes()) + " modes");
  }
  FockStateVector state{basis, Eigen::VectorXcd::Zero(basis->size())};
  state.amplitudes(basis->index_of(occupations)) = 1.0;
  return state;
}

Eigen::SparseMatrix<cxd> build_hamiltonian_matrix(const WaveguideArray& array,
                                                  const FockBasis& basis) {
  check_match(array, basis, "build_hamiltonian_matrix");
  const int n = basis.n_modes();
  const double j_rate = array.coupling();
  const double g = array.detuning();
  std::vector<Eigen::Triplet<cxd>> triplets;
  std::vector<int> target(n);
  for (std::size_t row = 0; row < basis.size(); ++row) {
    const auto occ = basis.occupation(row);
    if (g != 0.0) {
      triplets.emplace_back(row, row, g * basis.total_photons(row));
    }
    for (int m = 0; m + 1 < n; ++m) {
      if (occ[m + 1] > 0) {
        std::copy(occ.begin(), occ.end(), target.begin());
        ++target[m];
        --target[m + 1];
        triplets.emplace_back(basis.index_of(target), row,
                              j_rate * std::sqrt((occ[m] + 1.0) * occ[m + 1]));
      }
      if (occ[m] > 0) {
        std::copy(occ.begin(), occ.end(), target.begin());
        --target[m];
        ++target[m + 1];
        triplets.emplace_back(basis.index_of(target), row,
                              j_rate * std::sqrt((occ[m + 1] + 1.0) * occ[m]));
      }
    }
  }
  Eigen::SparseMatrix<cxd> h(basis.size(), basis.size());
  h.setFromTriplets(triplets.begin(), triplets.end());
  return h;
}

FockStateVector evolve(const FockStateVector& state,
                       const WaveguideArray& array, double t) {
  if (!state.basis) {
    throw std::domain_error("evolve: state has no basis");
  }
  check_match(array, *state.basis, "evolve");
  if (!std::isfinite(t)) {
    throw std::domain_error("evolve: time must be finite");
  }
  if (t == 0.0) {
    return state;
  }
  const FockBasis& basis = *state.basis;
  FockStateVector out{state.basis, Eigen::VectorXcd::Zero(basis.size())};
  for (int total = 0; total <= basis.max_total(); ++total) {
    const std::size_t begin = basis.sector_begin(total);
    const std::size_t dim = basis.sector_end(total) - begin;
    const auto segment = state.amplitudes.segment(begin, dim);
    if (segment.isZero(0.0)) {
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        sector_hamiltonian(array, basis, total));
    Eigen::VectorXcd modal =
        solver.eigenvectors().transpose().cast<cxd>() * segment;
    modal.array() *=
        (cxd(0.0, -t) * solver.eigenvalues().array().cast<cxd>()).exp();
    out.amplitudes.segment(begin, dim) =
        solver.eigenvectors().cast<cxd>() * modal;
  }
  return out;
}

FockStateVector apply_creation(const FockStateVector& state, int guide) {
  if (!state.basis) {
    throw std::domain_error("apply_creation: state has no basis");
  }
  const FockBasis& basis = *state.basis;
  check_guide(guide, basis.n_modes(), "apply_creation");
  FockStateVector out{state.basis, Eigen::VectorXcd::Zero(basis.size())};
  std::vector<int> target(basis.n_modes());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const cxd amp = state.amplitudes(i);
    if (amp == 0.0) continue;
    if (basis.total_photons(i) == basis.max_total()) continue;  // dropped
    const auto occ = basis.occupation(i);
    std::copy(occ.begin(), occ.end(), target.begin());
    ++target[guide - 1];
    out.amplitudes(basis.index_of(target)) +=
        std::sqrt(occ[guide - 1] + 1.0) * amp;
  }
  return out;
}

FockStateVector map_fock_state(std::shared_ptr<const FockBasis> basis,
                               const std::vector<int>& occupations,
                               const PropagatorMatrix& a) {
  if (static_cast<int>(occupations.size()) != basis->n_modes()) {
    throw std::domain_error(
        "map_fock_state: occupation length does not match basis modes");
  }
  if (a.modes() != basis->n_modes()) {
    throw std::domain_error(
        "map_fock_state: propagator dimension does not match basis modes");
  }
  int total = 0;
  for (int n_j : occupations) {
    if (n_j < 0) {
      throw std::domain_error("map_fock_state: negative occupation");
    }
    total += n_j;
  }
  if (total > basis->max_total()) {
    throw std::domain_error("map_fock_state: truncation exceeded");
  }

  const int n = basis->n_modes();
  FockStateVector psi{basis, Eigen::VectorXcd::Zero(basis->size())};
  psi.amplitudes(basis->index_of(std::vector<int>(n, 0))) = 1.0;

  std::vector<int> target(n);
  double normalization = 1.0;
  for (int j = 0; j < n; ++j) {
    for (int count = 1; count <= occupations[j]; ++count) {
      normalization *= count;  // accumulates prod n_j!
      Eigen::VectorXcd next = Eigen::VectorXcd::Zero(basis->size());
      for (std::size_t i = 0; i < basis->size(); ++i) {
        const cxd amp = psi.amplitudes(i);
        if (amp == 0.0) continue;
        const auto occ = basis->occupation(i);
        for (int l = 0; l < n; ++l) {
          std::copy(occ.begin(), occ.end(), target.begin());
          ++target[l];
          next(basis->index_of(target)) +=
              a.entries(j, l) * std::sqrt(occ[l] + 1.0) * amp;
        }
      }
      psi.amplitudes = std::move(next);
    }
  }
  psi.amplitudes /= std::sqrt(normalization);
  return psi;
}

std::vector<double> mean_occupations(const FockStateVector& state) {
  const FockBasis& basis = *state.basis;
  std::vector<double> mean(basis.n_modes(), 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double weight = std::norm(state.amplitudes(i));
    if (weight == 0.0) continue;
    const auto occ = basis.occupation(i);
    for (int j = 0; j < basis.n_modes(); ++j) {
      mean[j] += weight * occ[j];
    }
  }
  return mean;
}

double two_photon_joint_probability(const WaveguideArray& array,
                                    std::pair<int, int> input,
                                    std::pair<int, int> output, double t) {
  const int n = array.n_guides();
  check_guide(input.first, n, "two_photon_joint_probability");
  check_guide(input.second, n, "two_photon_joint_probability");
  check_guide(output.first, n, "two_photon_joint_probability");
  check_guide(output.second, n, "two_photon_joint_probability");
  const Eigen::MatrixXcd& a = propagator(array, t).entries;
  const int i = input.first - 1, j = input.second - 1;
  const int k = output.first - 1, l = output.second - 1;
  const cxd amplitude = a(i, k) * a(j, l) + a(i, l) * a(j, k);
  const double multiplicity = (input.first == input.second ? 2.0 : 1.0) *
                              (output.first == output.second ? 2.0 : 1.0);
  return std::norm(amplitude) / multiplicity;
}

HomScanPoint hom_coincidence(const WaveguideArray& array, double theta,
                             double theta0) {
  if (array.n_guides() != 2) {
    throw std::domain_error("hom_coincidence: requires exactly two guides");
  }
  if (!std::isfinite(theta) || !std::isfinite(theta0)) {
    throw std::domain_error("hom_coincidence: angles must be finite");
  }
  const double c = std::cos(2.0 * theta - theta0);
  const double s = std::sin(theta0);
  return {theta, theta0, c * c / (1.0 + s * s)};
}

double hom_coincidence_oracle(const WaveguideArray& array, double t,
                              double delay) {
  if (array.n_guides() != 2) {
    throw std::domain_error(
        "hom_coincidence_oracle: requires exactly two guides");
  }
  if (!std::isfinite(t) || !std::isfinite(delay)) {
    throw std::domain_error("hom_coincidence_oracle: times must be finite");
  }
  if (delay < 0.0 || delay > t) {
    throw std::domain_error(
        "hom_coincidence_oracle: delay must satisfy 0 <= delay <= t");
  }
  const auto basis = make_fock_basis(2, 2);
  FockStateVector psi = fock_input_state(basis, {1, 0});
  psi = evolve(psi, array, delay);
  psi = apply_creation(psi, 2);
  psi.amplitudes /= psi.norm();  // normalization of the injected state
  psi = evolve(psi, array, t - delay);
  return std::norm(psi.amplitudes(basis->index_of(std::vector<int>{1, 1})));
}

FockStateVector squeezed_fock_state(std::shared_ptr<const FockBasis> basis,
                                    int guide, double r, double phi) {
  check_guide(guide, basis->n_modes(), "squeezed_fock_state");
  if (!std::isfinite(r) || r < 0.0) {
    throw std::domain_error(
        "squeezed_fock_state: magnitude must be finite and >= 0");
  }
  if (!std::isfinite(phi)) {
    throw std::domain_error("squeezed_fock_state: phase must be finite");
  }
  FockStateVector state{basis, Eigen::VectorXcd::Zero(basis->size())};
  std::vector<int> occ(basis->n_modes(), 0);
  cxd amp = 1.0 / std::sqrt(std::cosh(r));
  state.amplitudes(basis->index_of(occ)) = amp;
  const cxd pair_factor = -std::exp(cxd(0.0, phi)) * std::tanh(r);
  for (int pairs = 1; 2 * pairs <= basis->max_total(); ++pairs) {
    amp *= std::sqrt((2.0 * pairs - 1.0) / (2.0 * pairs)) * pair_factor;
    occ[guide - 1] = 2 * pairs;
    state.amplitudes(basis->index_of(occ)) = amp;
  }
  return state;
}

GaussianMoments moments_from_state(const FockStateVector& state) {
  const FockBasis& basis = *state.basis;
  const int n = basis.n_modes();
  GaussianMoments m = vacuum_moments(n);
  std::vector<int> target(n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const cxd amp = state.amplitudes(i);
    if (amp == 0.0) continue;
    const auto occ = basis.occupation(i);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        // <a_j^dag a_k>: source needs n_k >= 1
        if (occ[k] >= 1) {
          std::copy(occ.begin(), occ.end(), target.begin());
          --target[k];
          const double raised = target[j] + 1.0;
          ++target[j];
          const double coeff = std::sqrt(occ[k] * raised);
          m.normal(j, k) +=
              std::conj(state.amplitudes(basis.index_of(target))) * coeff *
              amp;
        }
        // <a_j a_k>: source needs n_k >= 1 and then n_j >= 1
        if (occ[k] >= 1 && occ[j] - (j == k ? 1 : 0) >= 1) {
          std::copy(occ.begin(), occ.end(), target.begin());
          --target[k];
          const double lowered = target[j];
          --target[j];
          const double coeff = std::sqrt(occ[k] * lowered);
          m.anomalous(j, k) +=
              std::conj(state.amplitudes(basis.index_of(target))) * coeff *
              amp;
        }
      }
    }
  }
  return m;
}

}  // namespace wgwalk
