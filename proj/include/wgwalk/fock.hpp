#ifndef WGWALK_FOCK_HPP
#define WGWALK_FOCK_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <map>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "wgwalk/common.hpp"
#include "wgwalk/gaussian.hpp"
#include "wgwalk/lattice.hpp"

namespace wgwalk {

// Truncated multimode occupation-number basis: every vector (n_1,...,n_N)
// with sum n_j <= max_total, enumerated in graded lexicographic order
// (ascending total photon number, then ascending lexicographic).  States of
// equal total are contiguous, so number-conserving operators act per
// sector.  Immutable once built.
class FockBasis {
 public:
  FockBasis(int n_modes, int max_total);

  int n_modes() const { return n_modes_; }
  int max_total() const { return max_total_; }
  std::size_t size() const { return occupations_.size() / n_modes_; }

  std::span<const int> occupation(std::size_t index) const;
  std::size_t index_of(std::span<const int> occupation) const;
  bool contains(std::span<const int> occupation) const;
  int total_photons(std::size_t index) const;

  // Sector of states with the given total, as [begin, end).
  std::size_t sector_begin(int total) const;
  std::size_t sector_end(int total) const;

 private:
  int n_modes_;
  int max_total_;
  std::vector<int> occupations_;             // flattened, size() * n_modes
  std::vector<std::size_t> sector_offsets_;  // max_total + 2 entries
  std::map<std::vector<int>, std::size_t> index_;
};

std::shared_ptr<const FockBasis> make_fock_basis(int n_modes, int max_total);

// State vector over a shared truncated basis.  tail_mass() is the
// probability weight on the top photon-number sector; a state is trusted
// when that proxy for truncation error stays below the tolerance.
struct FockStateVector {
  std::shared_ptr<const FockBasis> basis;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
  double tail_mass() const;
  bool trusted(double tail_tol = tol::tail_trust) const {
    return tail_mass() < tail_tol;
  }
};

// One point of a delayed-injection interference scan, theta = Jt and
// theta0 = JT with T the injection delay of the second photon.
struct HomScanPoint {
  double theta = 0.0;
  double theta0 = 0.0;
  double coincidence = 0.0;
};

// Unit vector on |n_1,...,n_N>.  Exceeding the truncation or a negative
// occupation throws std::domain_error.
FockStateVector fock_input_state(std::shared_ptr<const FockBasis> basis,
                                 const std::vector<int>& occupations);

// H/hbar in the occupation basis: diagonal g sum_j n_j plus hopping
// J sqrt((n_j+1) n_{j+1}) between neighbors.  Hermitian and block-diagonal
// per total photon number.
Eigen::SparseMatrix<cxd> build_hamiltonian_matrix(const WaveguideArray& array,
                                                  const FockBasis& basis);

// U(t)|state> by Hermitian eigendecomposition of each photon-number block.
// Linear and norm-preserving; t = 0 returns the input unchanged.
FockStateVector evolve(const FockStateVector& state,
                       const WaveguideArray& array, double t);

// a_guide^dag |state>.  The result is unnormalized; contributions that
// would exceed the truncation are dropped.
FockStateVector apply_creation(const FockStateVector& state, int guide);

// Image of |n_1,...,n_N> under the propagator, built as the product form
//   prod_j (sum_l A_{j,l} a_l^dag)^{n_j} / sqrt(n_j!) |vac>.
// Agrees with evolve() of the same input state.
FockStateVector map_fock_state(std::shared_ptr<const FockBasis> basis,
                               const std::vector<int>& occupations,
                               const PropagatorMatrix& a);

// <n_j> per guide.
std::vector<double> mean_occupations(const FockStateVector& state);

// Probability of detecting the photon pair injected in guides (i,j) at
// guides (k,l) after time t.  For distinct guides this is
// |A_{i,k} A_{j,l} + A_{i,l} A_{j,k}|^2; coincident input or output guides
// carry the bosonic sqrt(2!) normalizations of the product-form amplitudes.
double two_photon_joint_probability(const WaveguideArray& array,
                                    std::pair<int, int> input,
                                    std::pair<int, int> output, double t);

// Closed-form coincidence probability for two guides,
//   p = cos^2(2 theta - theta0) / (1 + sin^2(theta0)),
// with the interference dip at 2 theta - theta0 = pi/2.
HomScanPoint hom_coincidence(const WaveguideArray& array, double theta,
                             double theta0);

// The delayed-injection protocol run literally in the truncated Fock
// space: prepare a_1^dag|0,0>, evolve for delay, apply a_2^dag,
// renormalize, evolve for t - delay, and return |<1,1|psi>|^2.  Requires
// 0 <= delay <= t.
double hom_coincidence_oracle(const WaveguideArray& array, double t,
                              double delay);

// Squeezed vacuum of magnitude r and phase phi in one guide, expanded over
// even photon numbers up to the basis truncation.  The truncated norm
// deficit shows up as tail mass.
FockStateVector squeezed_fock_state(std::shared_ptr<const FockBasis> basis,
                                    int guide, double r, double phi);

// Second moments <a_j^dag a_k> and <a_j a_k> read off a Fock state.
GaussianMoments moments_from_state(const FockStateVector& state);

}  // namespace wgwalk

#endif  // WGWALK_FOCK_HPP
