#include "qcalt/invariant.hpp"

#include <algorithm>

namespace qcalt {

namespace {

std::vector<std::size_t> perm_power_apply(const std::vector<std::size_t>& pi,
                                          const std::vector<std::size_t>& prev) {
  std::vector<std::size_t> out(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) out[i] = prev[pi[i]];
  return out;
}

std::size_t perm_order(const std::vector<std::size_t>& pi) {
  std::vector<std::size_t> cur(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) cur[i] = i;
  for (std::size_t l = 1;; ++l) {
    cur = perm_power_apply(pi, cur);
    bool id = true;
    for (std::size_t i = 0; i < pi.size(); ++i)
      if (cur[i] != i) id = false;
    if (id) return l;
  }
}

void require_invariant(const LinearCode& C, const std::vector<std::size_t>& pi) {
  if (!row_space_equal(C, permute_columns(C, pi)))
    throw Error("NotInvariant", "permutation does not preserve the code");
}

}  // namespace

LinearCode fold(const LinearCode& C, const std::vector<std::size_t>& pi) {
  require_invariant(C, pi);
  const FieldTower* tw = C.tower();
  int lv = C.level();
  std::size_t l = perm_order(pi);
  Matrix g(tw, lv, C.dim(), C.length());
  std::vector<std::size_t> cur(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) cur[i] = i;
  for (std::size_t j = 0; j < l; ++j) {
    for (std::size_t r = 0; r < C.dim(); ++r)
      for (std::size_t i = 0; i < C.length(); ++i)
        g.at(r, i) = tw->add(lv, g.at(r, i), C.gen().at(r, cur[i]));
    cur = perm_power_apply(pi, cur);
  }
  return LinearCode(g);
}

LinearCode invariant_subcode(const LinearCode& C, const std::vector<std::size_t>& pi) {
  require_invariant(C, pi);
  const FieldTower* tw = C.tower();
  int lv = C.level();
  // x Gen = pi(x Gen): left kernel of (Gen_pi - Gen)
  Matrix diff(tw, lv, C.dim(), C.length());
  for (std::size_t r = 0; r < C.dim(); ++r)
    for (std::size_t i = 0; i < C.length(); ++i)
      diff.at(r, i) = tw->sub(lv, C.gen().at(r, pi[i]), C.gen().at(r, i));
  Matrix X = kernel(diff.transpose());
  if (X.rows() == 0) return LinearCode(Matrix(tw, lv, 0, C.length()));
  return LinearCode(X * C.gen());
}

std::vector<std::size_t> orbit_representatives(const std::vector<std::size_t>& pi) {
  std::vector<bool> seen(pi.size(), false);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (seen[i]) continue;
    reps.push_back(i);
    std::size_t j = i;
    do {
      seen[j] = true;
      j = pi[j];
    } while (j != i);
  }
  return reps;
}

LinearCode restrict_to_reps(const LinearCode& C_inv,
                            const std::vector<std::size_t>& pi) {
  for (std::size_t r = 0; r < C_inv.dim(); ++r)
    for (std::size_t i = 0; i < C_inv.length(); ++i)
      if (C_inv.gen().at(r, i) != C_inv.gen().at(r, pi[i]))
        throw Error("NotOrbitConstant", "codeword varies along an orbit");
  return puncture(C_inv, orbit_representatives(pi));
}

namespace {

ProjPoint phi_diag(const ProjPoint& P, std::uint64_t l) {
  const FieldTower* tw = P.tower();
  int lv = P.level();
  return ProjPoint::make(tw, lv, tw->pow(lv, P.x(), l), tw->pow(lv, P.y(), l));
}

ProjPoint phi_trig(const ProjPoint& P, fe b, unsigned p) {
  const FieldTower* tw = P.tower();
  int lv = P.level();
  fe xp = tw->pow(lv, P.x(), p);
  fe corr = tw->mul(lv, tw->pow(lv, b, p - 1),
                    tw->mul(lv, P.x(), tw->pow(lv, P.y(), p - 1)));
  return ProjPoint::make(tw, lv, tw->sub(lv, xp, corr), tw->pow(lv, P.y(), p));
}

}  // namespace

InvariantPrediction predict_invariant(const AgSpec& spec, const Homography& sigma) {
  auto cls = classify(sigma);
  if (cls.tag == HClass::DiagonalizableQuadratic)
    throw Error("WrongClass", "quadratic sigma goes through extension of scalars");
  const FieldTower* tw = spec.tower;
  int lv = spec.level;
  std::uint64_t l = sigma.order();
  unsigned p = tw->p();

  std::vector<std::size_t> pi;
  try {
    pi = induced_permutation(sigma, spec.points);
  } catch (const Error&) {
    throw Error("NotInvariantInstance", "sigma does not permute the support");
  }
  if (spec.divisor.apply(sigma) != spec.divisor)
    throw Error("NotInvariantInstance", "sigma does not fix the divisor");

  // standardize: sigma = rho o std o rho^-1, so rho^-1 carries the instance
  // onto one with std as its automorphism without changing the code
  Homography rinv = cls.rho.inverse();
  Homography std_form = standard_form(cls);

  InvariantPrediction pred;
  pred.tag = cls.tag;
  pred.value = cls.value;
  pred.rho = cls.rho;

  for (std::size_t i : orbit_representatives(pi)) {
    ProjPoint Pp = rinv.apply(spec.points[i]);
    pred.points.push_back(cls.tag == HClass::DiagonalizableBase
                              ? phi_diag(Pp, l)
                              : phi_trig(Pp, cls.value.value(), p));
  }

  Divisor Gp = spec.divisor.apply(rinv);
  Divisor consumed;
  for (const auto& [Q, m] : Gp.support()) {
    if (consumed.mult_at(Q) != 0) continue;
    auto orb = orbit(std_form, Q);
    std::vector<ProjPoint> distinct;
    for (const auto& R : orb) {
      bool dup = false;
      for (const auto& S : distinct)
        if (S == R) dup = true;
      if (!dup) distinct.push_back(R);
    }
    for (const auto& R : distinct) {
      if (Gp.mult_at(R) != m)
        throw Error("UnsupportedDivisorShape", "orbit with non-uniform multiplicity");
      consumed.add(R, 1);
    }
    if (distinct.size() == 1) {
      // sigma-fixed point: the quotient map ramifies with index ord there,
      // so a pole bound of m descends to floor(m / ord)
      ProjPoint img = cls.tag == HClass::DiagonalizableBase
                          ? phi_diag(Q, l)
                          : phi_trig(Q, cls.value.value(), p);
      if (m / static_cast<int>(l) > 0)
        pred.divisor.add(img, m / static_cast<int>(l));
    } else if (distinct.size() == l) {
      ProjPoint Qt;
      if (cls.tag == HClass::DiagonalizableBase) {
        // ((-1)^{l-1} a^{l(l-1)/2} (gamma/delta)^l : 1)
        fe a = cls.value.value();
        fe sign = tw->pow(lv, tw->neg(lv, 1), l - 1);
        fe afac = tw->pow(lv, a, l * (l - 1) / 2);
        fe ratio = tw->pow(lv, tw->div(lv, Q.x(), Q.y()), l);
        Qt = ProjPoint::finite(tw, lv,
                               tw->mul(lv, sign, tw->mul(lv, afac, ratio)));
      } else {
        Qt = phi_trig(Q, cls.value.value(), p);
      }
      pred.divisor.add(Qt, m);
    } else {
      throw Error("UnsupportedDivisorShape", "divisor orbit of unexpected size");
    }
  }
  return pred;
}

std::pair<LinearCode, InvariantPrediction> extend_scalars_invariant(
    const AgSpec& spec, const Homography& sigma) {
  auto cls = classify(sigma);
  if (cls.tag != HClass::DiagonalizableQuadratic)
    throw Error("WrongClass", "extension of scalars applies to the quadratic case");
  int up = sigma.level() + 1;
  Homography s3 = sigma.embed(up);

  AgSpec spec3;
  spec3.tower = spec.tower;
  spec3.level = up;
  for (const auto& P : spec.points) spec3.points.push_back(P.embed(up));
  for (const auto& [Q, m] : spec.divisor.support()) spec3.divisor.add(Q.embed(up), m);
  spec3.flavor = CodeFlavor::Grs;
  InvariantPrediction pred = predict_invariant(spec3, s3);

  // lift the code, fold where sigma diagonalizes (p does not divide ord),
  // then take the basis over the original level
  AgSpec grs = spec;
  grs.flavor = CodeFlavor::Grs;
  LinearCode C = eval_code(grs);
  auto pi = induced_permutation(sigma, spec.points);
  LinearCode C3(C.gen().embed(up));
  LinearCode folded = fold(C3, pi);
  LinearCode descended = subfield_subcode(folded, spec.level);
  return {descended, pred};
}

}  // namespace qcalt
