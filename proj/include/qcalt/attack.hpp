#ifndef QCALT_ATTACK_HPP
#define QCALT_ATTACK_HPP

#include <optional>

#include "qcalt/invariant.hpp"
#include "qcalt/qckeygen.hpp"

namespace qcalt {

/// What the attacker is assumed to know about the invariant code: its
/// support and divisor (obtained from an oracle or by brute force).
struct InvariantSecrets {
  std::vector<ProjPoint> points;  // P~
  Divisor divisor;                // G~
};

struct AttackInput {
  TowerPtr tower;
  LinearCode pub;                // over F_q
  std::uint64_t ell = 0;
  InvariantSecrets secrets;      // at F_{q^m} level, or one level up for the
                                 // quadratic route
};

struct AttackResult {
  std::vector<ProjPoint> points;     // support matched to public columns
  Divisor divisor;
  FieldElement scalar;               // accepted a (diag) or b (trig)
  std::vector<std::size_t> perm;     // accepted column permutation
  Matrix cert_public, cert_recovered;  // equal RREFs = the certificate
  std::size_t tried = 0;             // scalar candidates consumed
  std::size_t rejected_multi = 0;    // candidates with non-unique solutions
};

/// Algorithm: invert the divisor map of the diagonalizable case. Each finite
/// predicted point t(g~:1) becomes t times the root set of
/// a^{l(l-1)/2} X^l - (-1)^{l-1} g~; a fixed point keeps its mass.
/// Throws NoRoots when a root is missing (wrong scalar candidate).
Divisor recover_divisor_diag(const Divisor& Gt, std::uint64_t ell,
                             const FieldElement& a);

/// Candidate set B for the trigonalizable parameter b: nonzero roots of
/// gcd_i(Res_X(X^p - Y^{p-1}X - a~_i, X^{q^m} - X)) gcd'd with Y^{q^m} - Y.
/// Throws EmptyCandidateSet.
std::vector<FieldElement> recover_b_candidates(const TowerPtr& tw, int lv,
                                               const std::vector<ProjPoint>& Pt);

/// Trigonalizable divisor recovery: roots of X^p - b^{p-1}X - g~ per finite
/// point; fixed-point mass kept. Throws NoRoots.
Divisor recover_divisor_trig(const Divisor& Gt, const FieldElement& b);

/// Orbit-major support candidate: per predicted point, the lex-smallest
/// preimage under the class map, expanded along the sigma-orbit.
/// Throws UnsolvableCoordinate when a preimage is missing.
std::vector<ProjPoint> candidate_support(const std::vector<ProjPoint>& Pt,
                                         const FieldElement& scalar, HClass tag,
                                         std::uint64_t ell);

/// Solve Gen_pub Pi H^T = 0 with Pi block-diagonal in powers of the l-cycle,
/// plus one affine sum constraint per block. Accepts only a unique 0/1
/// permutation solution; otherwise nullopt. `multi` (optional) counts
/// rejections due to non-unique solution sets.
std::optional<std::vector<std::size_t>> solve_permutation(
    const LinearCode& pub, const AgSpec& candidate, std::uint64_t ell,
    std::size_t* multi = nullptr);

/// Algorithm-3 driver: loops scalar candidates in lex order, recovers the
/// divisor and support, solves for the permutation, and certifies the first
/// success. Throws Failure after exhausting candidates.
AttackResult attack(const AttackInput& input);

/// Quadratic route epilogue: given a success one level up (diagonal frame),
/// rescale and apply a rational conjugation so that support and divisor
/// descend to F_{q^m}; re-verifies the certificate. Throws DescentFailed.
AttackResult quadratic_pullback(const TowerPtr& tw, const AttackResult& r3,
                                const LinearCode& pub);

/// Exhaustive (P~, G~) search for tiny invariant codes; guarded.
/// Throws SearchSpaceTooLarge, NotFound.
InvariantSecrets brute_force_invariant_secrets(const TowerPtr& tw, int lv,
                                               const LinearCode& C_inv,
                                               int max_weight = 1);

}  // namespace qcalt

#endif  // QCALT_ATTACK_HPP
