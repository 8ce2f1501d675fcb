#include "qcalt/agcode.hpp"

#include <algorithm>

namespace qcalt {

HomPoly HomPoly::one(const FieldTower* tw, int lv) {
  return HomPoly(tw, lv, std::vector<fe>{1});
}

HomPoly HomPoly::vanishing_at(const ProjPoint& P) {
  const FieldTower* tw = P.tower();
  int lv = P.level();
  // delta*X - gamma*Y as (coeff of Y, coeff of X)
  return HomPoly(tw, lv, std::vector<fe>{tw->neg(lv, P.x()), P.y()});
}

HomPoly HomPoly::monomial(const FieldTower* tw, int lv, int deg, int xdeg) {
  HomPoly h(tw, lv, deg);
  h.c_[xdeg] = 1;
  return h;
}

bool HomPoly::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](fe x) { return x == 0; });
}

HomPoly HomPoly::operator*(const HomPoly& o) const {
  HomPoly r(tw_, lv_, deg() + o.deg());
  for (int i = 0; i <= deg(); ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j <= o.deg(); ++j)
      r.c_[i + j] = tw_->add(lv_, r.c_[i + j], tw_->mul(lv_, c_[i], o.c_[j]));
  }
  return r;
}

fe HomPoly::eval(const ProjPoint& P) const {
  int lv = lv_ > P.level() ? lv_ : P.level();
  fe acc = 0, xp = 1;
  // Horner in Y on top of powers of X: sum c_i x^i y^{d-i}
  std::vector<fe> xpow(deg() + 1);
  for (int i = 0; i <= deg(); ++i) {
    xpow[i] = xp;
    xp = tw_->mul(lv, xp, P.x());
  }
  fe yp = 1;
  for (int i = deg(); i >= 0; --i) {
    acc = tw_->add(lv, acc, tw_->mul(lv, c_[i], tw_->mul(lv, xpow[i], yp)));
    yp = tw_->mul(lv, yp, P.y());
  }
  return acc;
}

HomPoly HomPoly::substitute(const Homography& s) const {
  int lv = lv_ > s.level() ? lv_ : s.level();
  HomPoly X(tw_, lv, std::vector<fe>{s.b(), s.a()});  // aX + bY
  HomPoly Y(tw_, lv, std::vector<fe>{s.d(), s.c()});  // cX + dY
  HomPoly acc(tw_, lv, deg());
  HomPoly xpow = HomPoly::one(tw_, lv);
  std::vector<HomPoly> xpows;
  for (int i = 0; i <= deg(); ++i) {
    xpows.push_back(xpow);
    xpow = xpow * X;
  }
  std::vector<fe> out(deg() + 1, 0);
  HomPoly ypow = HomPoly::one(tw_, lv);
  for (int i = deg(); i >= 0; --i) {
    if (c_[i] != 0) {
      HomPoly term = xpows[i] * ypow;
      for (int u = 0; u <= deg(); ++u)
        out[u] = tw_->add(lv, out[u], tw_->mul(lv, c_[i], term.coeff(u)));
    }
    ypow = ypow * Y;
  }
  return HomPoly(tw_, lv, out);
}

HomPoly HomPoly::embed(int lv) const {
  if (lv < lv_) throw Error("NotInSubfield", "embed targets a lower level");
  HomPoly h = *this;
  h.lv_ = lv;
  return h;
}

fe RationalFunction::eval(const ProjPoint& P) const {
  const FieldTower* tw = num.tower();
  int lv = num.level() > P.level() ? num.level() : P.level();
  fe d = den.eval(P);
  if (d == 0) throw Error("DivisionByZero", "pole at evaluation point");
  return tw->div(lv, num.eval(P), d);
}

void Divisor::add(const ProjPoint& P, int mult) {
  if (mult == 0) return;
  auto it = std::lower_bound(
      supp_.begin(), supp_.end(), P,
      [](const std::pair<ProjPoint, int>& a, const ProjPoint& b) {
        return point_less(a.first, b);
      });
  if (it != supp_.end() && it->first == P) {
    it->second += mult;
    if (it->second == 0) supp_.erase(it);
  } else {
    supp_.insert(it, {P, mult});
  }
}

int Divisor::mult_at(const ProjPoint& P) const {
  for (const auto& [Q, m] : supp_)
    if (Q == P) return m;
  return 0;
}

int Divisor::degree() const {
  int d = 0;
  for (const auto& [Q, m] : supp_) d += m;
  return d;
}

Divisor Divisor::apply(const Homography& s) const {
  Divisor r;
  for (const auto& [Q, m] : supp_) r.add(s.apply(Q), m);
  return r;
}

Divisor Divisor::operator+(const Divisor& o) const {
  Divisor r = *this;
  for (const auto& [Q, m] : o.supp_) r.add(Q, m);
  return r;
}

Divisor Divisor::operator-() const {
  Divisor r;
  for (const auto& [Q, m] : supp_) r.add(Q, -m);
  return r;
}

std::vector<RationalFunction> rr_basis(const FieldTower* tw, int lv,
                                       const Divisor& G) {
  int d = G.degree();
  if (d < 0) return {};
  // denominator from the positive part, forced numerator factor from the
  // negative part; the free factor Z ranges over monomials of degree d
  HomPoly den = HomPoly::one(tw, lv);
  HomPoly forced = HomPoly::one(tw, lv);
  for (const auto& [P, m] : G.support()) {
    HomPoly lf = HomPoly::vanishing_at(P).embed(lv);
    for (int i = 0; i < (m > 0 ? m : -m); ++i) {
      if (m > 0)
        den = den * lf;
      else
        forced = forced * lf;
    }
  }
  std::vector<RationalFunction> basis;
  for (int i = 0; i <= d; ++i) {
    RationalFunction f;
    f.num = forced * HomPoly::monomial(tw, lv, d, i);
    f.den = den;
    basis.push_back(f);
  }
  return basis;
}

LinearCode eval_code(const AgSpec& spec) {
  // The divisor may live at a higher level (splitting field of its closed
  // points); evaluate there and descend, which succeeds exactly when the
  // divisor is stable under the relevant Frobenius.
  int dlv = spec.level;
  for (const auto& [P, m] : spec.divisor.support())
    if (P.level() > dlv) dlv = P.level();
  for (const auto& P : spec.points)
    if (spec.divisor.mult_at(P.embed(dlv)) != 0)
      throw Error("SupportMeetsDivisor", "divisor support meets evaluation points");
  Divisor G;
  for (const auto& [P, m] : spec.divisor.support()) G.add(P.embed(dlv), m);
  auto basis = rr_basis(spec.tower, dlv, G);
  Matrix g(spec.tower, spec.level, basis.size(), spec.points.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < spec.points.size(); ++j) {
      fe v = basis[i].eval(spec.points[j].embed(dlv));
      if (!spec.tower->in_sublevel(dlv, v, spec.level))
        throw Error("NonRationalSupport",
                    "divisor is not stable under Frobenius over the code field");
      g.at(i, j) = v;
    }
  return LinearCode(g);
}

AgSpec grs_from_xy(const FieldTower* tw, int lv, const std::vector<fe>& x,
                   const std::vector<fe>& y, std::size_t k) {
  std::size_t n = x.size();
  if (k == 0 || k > n) throw Error("BadDimension", "need 0 < k <= n");
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] == 0) throw Error("ZeroMultiplier", "multiplier coordinate is zero");
    for (std::size_t j = i + 1; j < n; ++j)
      if (x[i] == x[j]) throw Error("DuplicateSupport", "repeated support value");
  }
  Poly f = interpolate(tw, lv, x, y);
  AgSpec spec;
  spec.tower = tw;
  spec.level = lv;
  for (fe xi : x) spec.points.push_back(ProjPoint::finite(tw, lv, xi));
  // G = (k-1)P_inf - (f) = (k-1+deg f)P_inf - sum of zeros of f
  Divisor G;
  int df = f.degree() < 0 ? 0 : f.degree();
  G.add(ProjPoint::infinity(tw, lv), static_cast<int>(k) - 1 + df);
  if (f.degree() >= 1) {
    auto rs = f.roots();
    int found = 0;
    for (const auto& [r, m] : rs) {
      G.add(ProjPoint::finite(tw, lv, r), -static_cast<int>(m));
      found += static_cast<int>(m);
    }
    if (found != f.degree())
      throw Error("NonRationalSupport", "interpolant does not split at this level");
  }
  spec.divisor = G;
  spec.flavor = CodeFlavor::Grs;
  return spec;
}

std::vector<fe> dual_multiplier(const FieldTower* tw, int lv,
                                const std::vector<fe>& x, const std::vector<fe>& y) {
  std::size_t n = x.size();
  std::vector<fe> yp(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] == 0) throw Error("ZeroMultiplier", "multiplier coordinate is zero");
    fe prod = y[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      fe d = tw->sub(lv, x[i], x[j]);
      if (d == 0) throw Error("DuplicateSupport", "repeated support value");
      prod = tw->mul(lv, prod, d);
    }
    yp[i] = tw->inv(lv, prod);
  }
  return yp;
}

LinearCode alternant_code(const AgSpec& spec) {
  return subfield_subcode(dual(eval_code(spec)), spec.sub_level);
}

std::vector<std::size_t> induced_permutation(const Homography& sigma,
                                             const std::vector<ProjPoint>& points) {
  std::size_t n = points.size();
  std::vector<std::size_t> pi(n);
  for (std::size_t i = 0; i < n; ++i) {
    ProjPoint img = sigma.apply(points[i]);
    std::size_t j = 0;
    while (j < n && points[j] != img) ++j;
    if (j == n) throw Error("SupportNotStable", "image point outside the support");
    pi[i] = j;
  }
  return pi;
}

}  // namespace qcalt
