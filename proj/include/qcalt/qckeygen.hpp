#ifndef QCALT_QCKEYGEN_HPP
#define QCALT_QCKEYGEN_HPP

#include <cstdint>

#include "qcalt/agcode.hpp"

namespace qcalt {

/// Secret (support/divisor/sigma) and public (subfield code + permutation)
/// halves of a quasi-cyclic alternant key.
struct QcKeyPair {
  // secret
  AgSpec spec;  // Alternant flavor; points at F_{q^m} level
  Homography sigma;
  std::uint64_t seed = 0;
  // public
  LinearCode pub;               // over spec.sub_level
  std::vector<std::size_t> pi;  // induced column permutation
  std::uint64_t ell = 0;        // ord(sigma)
};

/// n_orbits * ord(sigma) distinct points with trivial stabilizer, grouped
/// orbit-major: P, sigma P, ..., then the next orbit. Deterministic per seed.
/// Throws NotEnoughFreePoints.
std::vector<ProjPoint> invariant_support(const Homography& sigma,
                                         std::size_t n_orbits, std::uint64_t seed);

/// G = sum_i t_i * Orb_sigma(Q_i); throws StabilizedBasePoint, OrbitCollision.
Divisor invariant_divisor(const Homography& sigma,
                          const std::vector<ProjPoint>& base_points,
                          const std::vector<int>& weights);

struct KeygenOptions {
  std::size_t n_orbits = 0;
  std::vector<int> weights;  // one entry per divisor orbit; each >= 1
  std::uint64_t seed = 0;
  /// Put the whole divisor at a sigma-fixed rational point (the Q~ = P_inf
  /// branch): G = ell * (sum of weights) * F for a fixed point F of sigma.
  bool divisor_at_fixed_point = false;
};

/// Builds the sigma-invariant support and divisor, forms the alternant code
/// and its induced permutation. Throws DegenerateDimension when the public
/// code is zero or the full space.
QcKeyPair keygen(const TowerPtr& tw, const Homography& sigma, const KeygenOptions& opt);

}  // namespace qcalt

#endif  // QCALT_QCKEYGEN_HPP
