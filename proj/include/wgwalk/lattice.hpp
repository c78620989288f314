#ifndef WGWALK_LATTICE_HPP
#define WGWALK_LATTICE_HPP

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "wgwalk/common.hpp"
#include "wgwalk/time_series.hpp"

namespace wgwalk {

// An array of N single-mode waveguides with uniform nearest-neighbor
// coupling at rate J and a common per-guide detuning g (both in units of
// inverse time).  J = 0 is accepted as a degenerate case in which the
// propagator reduces to the pure phase e^{-igt} I.
class WaveguideArray {
 public:
  WaveguideArray(int n_guides, double coupling, double detuning = 0.0);

  int n_guides() const { return n_guides_; }
  double coupling() const { return coupling_; }
  double detuning() const { return detuning_; }

 private:
  int n_guides_;
  double coupling_;
  double detuning_;
};

// One normal mode of the coupling: eigenshift beta_p = 2J cos(p pi/(N+1))
// and the real sine profile S(., p).  Profiles of distinct p are
// orthonormal.
struct EigenMode {
  int index = 0;           // p in 1..N
  double eigenshift = 0.0; // beta_p
  Eigen::VectorXd profile; // S(j, p) at entry j-1
};

// Single-mode propagator at fixed time: entries(j-1, l-1) = A_{j,l}(t), the
// amplitude for an excitation injected in guide l to appear in guide j.
// Unitary, symmetric, A(0) = I, and A(t1) A(t2) = A(t1 + t2).
struct PropagatorMatrix {
  double time = 0.0;
  Eigen::MatrixXcd entries;

  int modes() const { return static_cast<int>(entries.rows()); }
};

// S(j, p) = sqrt(2/(N+1)) sin(j p pi/(N+1)).  Guide and mode indices are
// 1-based; out of range throws std::domain_error.
double eval_mode_profile(const WaveguideArray& array, int guide, int mode);

// Eigenshifts beta_p for p = 1..N, strictly decreasing in p.
std::vector<double> eigen_shifts(const WaveguideArray& array);

std::vector<EigenMode> eigen_modes(const WaveguideArray& array);

// N x N matrix with (j-1, p-1) = S(j, p).  Orthogonal.
Eigen::MatrixXd mode_profile_matrix(const WaveguideArray& array);

// Spectral-sum propagator A_{j,l}(t) = sum_p e^{-i(g+beta_p)t} S(l,p) S(j,p).
PropagatorMatrix propagator(const WaveguideArray& array, double t);

// Per-guide intensities |A_{j,l}(t)|^2 for a unit excitation entering guide
// l, sampled on the given physical time grid.  Each row sums to 1.
TimeSeries transport_intensity(const WaveguideArray& array, int input_guide,
                               std::span<const double> times);

}  // namespace wgwalk

#endif  // WGWALK_LATTICE_HPP
