#ifndef QCALT_INVARIANT_HPP
#define QCALT_INVARIANT_HPP

#include "qcalt/agcode.hpp"

namespace qcalt {

/// im(Id + pi + ... + pi^{l-1}) applied to a generator basis of C.
/// Throws NotInvariant when pi does not preserve C.
LinearCode fold(const LinearCode& C, const std::vector<std::size_t>& pi);

/// {c in C : pi(c) = c}. Throws NotInvariant when pi does not preserve C.
LinearCode invariant_subcode(const LinearCode& C, const std::vector<std::size_t>& pi);

/// Smallest index of each pi-orbit, ascending — the coordinates kept by
/// restrict_to_reps.
std::vector<std::size_t> orbit_representatives(const std::vector<std::size_t>& pi);

/// Puncture an orbit-constant code to the orbit representatives.
/// Throws NotOrbitConstant.
LinearCode restrict_to_reps(const LinearCode& C_inv, const std::vector<std::size_t>& pi);

/// Closed-form support and divisor of the invariant code of an evaluation
/// code on (points, divisor), for the two classes diagonalizable over the
/// base level and trigonalizable. `value` and `rho` echo the standardizing
/// data; points/divisor are the predicted ones.
struct InvariantPrediction {
  HClass tag = HClass::DiagonalizableBase;
  std::vector<ProjPoint> points;
  Divisor divisor;
  FieldElement value;
  Homography rho;
};

/// Throws WrongClass on a quadratic sigma (use extend_scalars_invariant),
/// NotInvariantInstance when sigma does not fix the instance.
InvariantPrediction predict_invariant(const AgSpec& spec, const Homography& sigma);

/// Quadratic route: lift to one level up where sigma diagonalizes, fold
/// there, and descend the invariant code back to the spec's level. Returns
/// the descended invariant code (full length) and the prediction one level
/// up. Throws WrongClass unless sigma is DiagonalizableQuadratic.
std::pair<LinearCode, InvariantPrediction> extend_scalars_invariant(
    const AgSpec& spec, const Homography& sigma);

}  // namespace qcalt

#endif  // QCALT_INVARIANT_HPP
