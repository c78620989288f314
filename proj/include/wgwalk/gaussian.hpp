#ifndef WGWALK_GAUSSIAN_HPP
#define WGWALK_GAUSSIAN_HPP

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "wgwalk/common.hpp"
#include "wgwalk/lattice.hpp"

namespace wgwalk {

// Squeezed vacuum entering one guide: magnitude r >= 0 and ellipse
// orientation phi (wrapped into [0, 2pi)).
struct SqueezedInput {
  int guide = 1;
  double magnitude = 0.0;
  double phase = 0.0;
};

// Zero-mean second moments of the multimode field:
//   normal(j-1, k-1)    = <a_j^dag a_k>   (Hermitian, PSD)
//   anomalous(j-1, k-1) = <a_j a_k>       (symmetric)
// These determine every quadrature variance and pairwise correlation of a
// zero-mean Gaussian state.
struct GaussianMoments {
  Eigen::MatrixXcd normal;
  Eigen::MatrixXcd anomalous;

  int modes() const { return static_cast<int>(normal.rows()); }
};

// Quadrature squeezing factors of one guide, s = variance - 1/2 with
// q = (a + a^dag)/sqrt(2), p = (a - a^dag)/(sqrt(2) i).  Negative values
// mean squeezing below the vacuum level.
struct SqueezingRecord {
  int guide = 0;
  double s_q = 0.0;
  double s_p = 0.0;
};

GaussianMoments vacuum_moments(int n_modes);

// Moments of squeezed vacuum in input.guide, vacuum elsewhere:
// <a_l^dag a_l> = sinh^2 r, <a_l a_l> = -e^{i phi} sinh r cosh r.
GaussianMoments initial_moments(const SqueezedInput& input, int n_modes);

// Heisenberg update induced by a_j(t) = sum_l A_{j,l} a_l(0):
//   normal'    = conj(A) normal A^T
//   anomalous' = A anomalous A^T
GaussianMoments propagate_moments(const GaussianMoments& moments,
                                  const PropagatorMatrix& a);

// s_j(q) = <a_j^dag a_j> + Re<a_j a_j>, s_j(p) = <a_j^dag a_j> - Re<a_j a_j>.
std::vector<SqueezingRecord> squeezing_factors(const GaussianMoments& moments);

// sum_j <a_j^dag a_j>; invariant under unitary propagation.
double total_photon_number(const GaussianMoments& moments);

// Pairwise entanglement witness
//   M(j,k) = <a_j^dag a_j> + <a_k^dag a_k> + <a_j a_k> + <a_j^dag a_k^dag>;
// M < 0 is sufficient for entanglement of guides j and k (and necessary for
// Gaussian states).  The complex sum is real by construction; a residual
// imaginary part above tol::exact throws.
double entanglement_witness(const GaussianMoments& moments, int j, int k);

// 2N x 2N covariance of (q_1..q_N, p_1..p_N); vacuum gives I/2.
Eigen::MatrixXd covariance_matrix(const GaussianMoments& moments);

// Symplectic spectrum of the covariance matrix, ascending.  All values are
// >= 1/2 for a physical state.
Eigen::VectorXd symplectic_eigenvalues(const GaussianMoments& moments);

// f = sinh(r) (sinh(r) - cos(phi) cosh(r)): the q squeezing factor of the
// input guide at t = 0 and the magnitude transferred between guides.
double base_squeezing(double r, double phi);

// Closed-form squeezing transfer for two or three guides as a function of
// the dimensionless product jt = J*t:
//   N=2: s_1(q) = f cos^2(Jt),        s_2(p) = f sin^2(Jt)
//   N=3: s_1(q) = f cos^4(Jt/sqrt2),  s_3(q) = f sin^4(Jt/sqrt2),
//        s_2(p) = (f/2) sin^2(sqrt2 Jt)
struct SqueezingClosedForm {
  double f = 0.0;
  double s1_q = 0.0;
  double s2_p = 0.0;
  std::optional<double> s3_q;  // present only for n_guides = 3
};
SqueezingClosedForm closed_form_squeezing(int n_guides, double r, double phi,
                                          double jt);

// Closed-form witness for two or three guides; supported pairs are (1,2)
// for N=2 and (1,2), (1,3) for N=3.
double closed_form_witness(int n_guides, double r, double phi, double jt,
                           std::pair<int, int> pair);

}  // namespace wgwalk

#endif  // WGWALK_GAUSSIAN_HPP
