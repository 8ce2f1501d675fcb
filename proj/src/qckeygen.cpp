#include "qcalt/qckeygen.hpp"

#include <algorithm>
#include <random>

namespace qcalt {

namespace {

// Representatives (first point in enumeration order) of all free orbits.
std::vector<ProjPoint> free_orbit_reps(const Homography& sigma) {
  TowerPtr tw = sigma.tower()->shared_from_this();
  std::vector<ProjPoint> reps;
  std::vector<ProjPoint> seen;
  for (const auto& P : all_points(tw, sigma.level())) {
    bool done = false;
    for (const auto& Q : seen)
      if (Q == P) done = true;
    if (done) continue;
    auto orb = orbit(sigma, P);
    bool free = true;
    for (std::size_t i = 0; i < orb.size() && free; ++i)
      for (std::size_t j = i + 1; j < orb.size(); ++j)
        if (orb[i] == orb[j]) {
          free = false;
          break;
        }
    for (const auto& Q : orb) seen.push_back(Q);
    if (free) reps.push_back(P);
  }
  return reps;
}

ProjPoint frobenius(const ProjPoint& P, std::uint64_t power) {
  const FieldTower* tw = P.tower();
  int lv = P.level();
  return ProjPoint::make(tw, lv, tw->pow(lv, P.x(), power), tw->pow(lv, P.y(), power));
}

}  // namespace

std::vector<ProjPoint> invariant_support(const Homography& sigma,
                                         std::size_t n_orbits, std::uint64_t seed) {
  if (sigma.is_identity())
    throw Error("IdentityNotClassifiable", "support orbits need sigma != id");
  auto reps = free_orbit_reps(sigma);
  if (reps.size() < n_orbits)
    throw Error("NotEnoughFreePoints", "fewer free orbits than requested");
  std::mt19937_64 rng(seed);
  std::shuffle(reps.begin(), reps.end(), rng);
  std::vector<ProjPoint> out;
  for (std::size_t i = 0; i < n_orbits; ++i)
    for (const auto& Q : orbit(sigma, reps[i])) out.push_back(Q);
  return out;
}

Divisor invariant_divisor(const Homography& sigma,
                          const std::vector<ProjPoint>& base_points,
                          const std::vector<int>& weights) {
  if (base_points.size() != weights.size())
    throw Error("ShapeMismatch", "one weight per base point");
  Divisor G;
  for (std::size_t i = 0; i < base_points.size(); ++i) {
    if (weights[i] < 1) throw Error("BadWeight", "orbit weights must be >= 1");
    if (!has_trivial_stabilizer(sigma, base_points[i]))
      throw Error("StabilizedBasePoint", "divisor base point has a nontrivial stabilizer");
    for (const auto& Q : orbit(sigma, base_points[i])) {
      if (G.mult_at(Q) != 0)
        throw Error("OrbitCollision", "divisor orbits are not disjoint");
      G.add(Q, weights[i]);
    }
  }
  return G;
}

QcKeyPair keygen(const TowerPtr& tw, const Homography& sigma, const KeygenOptions& opt) {
  if (sigma.is_identity())
    throw Error("IdentityNotClassifiable", "keygen needs sigma != id");
  int lv = sigma.level();
  QcKeyPair kp;
  kp.sigma = sigma;
  kp.seed = opt.seed;
  kp.ell = sigma.order();

  auto reps = free_orbit_reps(sigma);
  if (reps.size() < opt.n_orbits)
    throw Error("NotEnoughFreePoints", "fewer free orbits than requested");
  std::mt19937_64 rng(opt.seed);
  std::shuffle(reps.begin(), reps.end(), rng);
  std::vector<ProjPoint> support;
  for (std::size_t i = 0; i < opt.n_orbits; ++i)
    for (const auto& Q : orbit(sigma, reps[i])) support.push_back(Q);

  Divisor G;
  if (opt.divisor_at_fixed_point) {
    // the Q~ = P_inf branch: all divisor mass on one sigma-fixed point
    ProjPoint fixed;
    bool found = false;
    ProjPoint pinf = ProjPoint::infinity(tw.get(), lv);
    if (sigma.apply(pinf) == pinf) {
      fixed = pinf;
      found = true;
    } else {
      for (const auto& P : all_points(tw, lv))
        if (sigma.apply(P) == P) {
          fixed = P;
          found = true;
          break;
        }
    }
    if (!found) throw Error("NoFixedPoint", "sigma has no rational fixed point");
    int total = 0;
    for (int w : opt.weights) {
      if (w < 1) throw Error("BadWeight", "orbit weights must be >= 1");
      total += w;
    }
    G.add(fixed, static_cast<int>(kp.ell) * total);
  } else if (!opt.weights.empty()) {
    bool quadratic = false;
    try {
      quadratic = classify(sigma).tag == HClass::DiagonalizableQuadratic;
    } catch (const Error&) {
    }
    std::vector<ProjPoint> bases;
    if (quadratic && opt.n_orbits >= reps.size()) {
      // No rational orbit left: take Frobenius-stable free orbits of points
      // one level up, disjoint from the rational line.
      int up = lv + 1;
      if (up > kLevelExt2) throw Error("FieldTooLarge", "no room above sigma's level");
      std::uint64_t qm = tw->card(lv);
      Homography s3 = sigma.embed(up);
      Divisor taken;
      std::size_t placed = 0;
      for (const auto& P : all_points(tw, up)) {
        if (placed == opt.weights.size()) break;
        if (tw->in_sublevel(up, P.x(), lv) && tw->in_sublevel(up, P.y(), lv)) continue;
        if (taken.mult_at(P) != 0) continue;
        auto orb = orbit(s3, P);
        if (!has_trivial_stabilizer(s3, P)) {
          for (const auto& Q : orb) taken.add(Q, 1);
          continue;
        }
        // Close the orbit under Frobenius: either it is already stable, or
        // it gets paired with its (disjoint, also free) Frobenius image.
        auto forb = orb;
        ProjPoint fp = frobenius(P, qm);
        bool stable = false;
        for (const auto& R : orb)
          if (R == fp) stable = true;
        if (!stable) {
          forb.clear();
          for (const auto& Q : orbit(s3, fp)) forb.push_back(Q);
        }
        bool clash = false;
        for (const auto& Q : forb)
          if (taken.mult_at(Q) != 0) clash = true;
        for (const auto& Q : orb) taken.add(Q, 1);
        if (!stable)
          for (const auto& Q : forb) taken.add(Q, 1);
        if (clash) continue;
        int w = opt.weights[placed];
        if (w < 1) throw Error("BadWeight", "orbit weights must be >= 1");
        for (const auto& Q : orb) G.add(Q, w);
        if (!stable)
          for (const auto& Q : forb) G.add(Q, w);
        ++placed;
      }
      if (placed < opt.weights.size())
        throw Error("NotEnoughFreePoints", "no Frobenius-stable quadratic orbit left");
    } else {
      if (reps.size() - opt.n_orbits < opt.weights.size())
        throw Error("NotEnoughFreePoints", "no free orbit left for the divisor");
      for (std::size_t i = 0; i < opt.weights.size(); ++i)
        bases.push_back(reps[opt.n_orbits + i]);
      G = invariant_divisor(sigma, bases, opt.weights);
    }
  }

  AgSpec spec;
  spec.tower = tw.get();
  spec.level = lv;
  spec.points = support;
  spec.divisor = G;
  spec.flavor = CodeFlavor::Alternant;
  spec.sub_level = kLevelBase;
  kp.spec = spec;
  kp.pub = alternant_code(spec);
  if (kp.pub.dim() == 0 || kp.pub.dim() == kp.pub.length())
    throw Error("DegenerateDimension", "public code is zero or the full space");
  kp.pi = induced_permutation(sigma, support);
  return kp;
}

}  // namespace qcalt
