#ifndef WGWALK_COMMON_HPP
#define WGWALK_COMMON_HPP

#include <complex>

namespace wgwalk {

using cxd = std::complex<double>;

// Numeric tolerances pinned once for the whole project.
namespace tol {
inline constexpr double exact = 1e-12;       // identities that hold in exact arithmetic
inline constexpr double oracle = 1e-10;      // agreement between independent routes
inline constexpr double tail_trust = 1e-8;   // Fock truncation tail mass accepted as trusted
}  // namespace tol

}  // namespace wgwalk

#endif  // WGWALK_COMMON_HPP
