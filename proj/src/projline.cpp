#include "qcalt/projline.hpp"

#include <array>

namespace qcalt {

ProjPoint ProjPoint::make(const FieldTower* tw, int lv, fe x, fe y) {
  if (x == 0 && y == 0) throw Error("BothZero", "projective point (0:0)");
  ProjPoint P;
  P.tw_ = tw;
  P.lv_ = lv;
  if (y == 0) {
    P.x_ = 1;
    P.y_ = 0;
  } else {
    P.x_ = tw->div(lv, x, y);
    P.y_ = 1;
  }
  return P;
}

ProjPoint ProjPoint::finite(const FieldTower* tw, int lv, fe x) {
  return make(tw, lv, x, 1);
}

ProjPoint ProjPoint::infinity(const FieldTower* tw, int lv) {
  return make(tw, lv, 1, 0);
}

ProjPoint ProjPoint::embed(int lv) const {
  if (lv < lv_) throw Error("NotInSubfield", "embed targets a lower level");
  ProjPoint P = *this;
  P.lv_ = lv;
  return P;
}

ProjPoint ProjPoint::try_descend(int lv) const {
  if (lv > lv_) return embed(lv);
  if (!tw_->in_sublevel(lv_, x_, lv) || !tw_->in_sublevel(lv_, y_, lv))
    throw Error("NotInSubfield", "point coordinates do not descend");
  ProjPoint P = *this;
  P.lv_ = lv;
  return P;
}

bool point_less(const ProjPoint& a, const ProjPoint& b) {
  if (a.is_infinity()) return false;
  if (b.is_infinity()) return true;
  return a.tower()->lex_less(a.level(), a.x(), b.x());
}

Homography Homography::make(const FieldTower* tw, int lv, fe a, fe b, fe c, fe d) {
  fe det = tw->sub(lv, tw->mul(lv, a, d), tw->mul(lv, b, c));
  if (det == 0) throw Error("SingularMatrix", "ad - bc = 0");
  fe lead = a ? a : (b ? b : c);
  fe s = tw->inv(lv, lead);
  Homography h;
  h.tw_ = tw;
  h.lv_ = lv;
  h.a_ = tw->mul(lv, a, s);
  h.b_ = tw->mul(lv, b, s);
  h.c_ = tw->mul(lv, c, s);
  h.d_ = tw->mul(lv, d, s);
  return h;
}

Homography Homography::identity(const FieldTower* tw, int lv) {
  return make(tw, lv, 1, 0, 0, 1);
}

bool Homography::is_identity() const {
  return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1;
}

ProjPoint Homography::apply(const ProjPoint& P) const {
  int lv = lv_ > P.level() ? lv_ : P.level();
  fe x = P.x(), y = P.y();
  fe nx = tw_->add(lv, tw_->mul(lv, a_, x), tw_->mul(lv, b_, y));
  fe ny = tw_->add(lv, tw_->mul(lv, c_, x), tw_->mul(lv, d_, y));
  return ProjPoint::make(tw_, lv, nx, ny);
}

Homography Homography::compose(const Homography& o) const {
  int lv = lv_ > o.lv_ ? lv_ : o.lv_;
  fe a = tw_->add(lv, tw_->mul(lv, a_, o.a_), tw_->mul(lv, b_, o.c_));
  fe b = tw_->add(lv, tw_->mul(lv, a_, o.b_), tw_->mul(lv, b_, o.d_));
  fe c = tw_->add(lv, tw_->mul(lv, c_, o.a_), tw_->mul(lv, d_, o.c_));
  fe d = tw_->add(lv, tw_->mul(lv, c_, o.b_), tw_->mul(lv, d_, o.d_));
  return make(tw_, lv, a, b, c, d);
}

Homography Homography::inverse() const {
  return make(tw_, lv_, d_, tw_->neg(lv_, b_), tw_->neg(lv_, c_), a_);
}

Homography Homography::conjugate(const Homography& rho) const {
  return rho.compose(*this).compose(rho.inverse());
}

Homography Homography::pow(std::uint64_t e) const {
  Homography r = identity(tw_, lv_);
  Homography base = *this;
  while (e) {
    if (e & 1) r = r.compose(base);
    base = base.compose(base);
    e >>= 1;
  }
  return r;
}

std::uint64_t Homography::order() const {
  Homography h = *this;
  std::uint64_t card = tw_->card(lv_);
  std::uint64_t bound = card * card;  // |PGL_2| = N^3 - N; element orders <= N + 1
  Homography id = identity(tw_, lv_);
  for (std::uint64_t l = 1; l <= bound; ++l) {
    if (h.is_identity()) return l;
    h = h.compose(*this);
  }
  throw Error("InternalError", "order search exceeded group bound");
}

Homography Homography::embed(int lv) const {
  if (lv < lv_) throw Error("NotInSubfield", "embed targets a lower level");
  Homography h = *this;
  h.lv_ = lv;
  return h;
}

Homography Homography::try_descend(int lv) const {
  if (lv > lv_) return embed(lv);
  for (fe e : {a_, b_, c_, d_})
    if (!tw_->in_sublevel(lv_, e, lv))
      throw Error("NotInSubfield", "homography entries do not descend");
  Homography h = *this;
  h.lv_ = lv;
  return h;
}

namespace {

// A nonzero kernel vector of the rank-1 matrix M - lambda*I.
std::array<fe, 2> eigvec(const FieldTower* tw, int lv, fe a, fe b, fe c, fe d,
                         fe lam) {
  fe n00 = tw->sub(lv, a, lam), n01 = b;
  fe n10 = c, n11 = tw->sub(lv, d, lam);
  if (n00 != 0 || n01 != 0) return {n01, tw->neg(lv, n00)};
  if (n10 != 0 || n11 != 0) return {n11, tw->neg(lv, n10)};
  throw Error("InternalError", "scalar matrix reached eigvec");
}

}  // namespace

HomographyClass classify(const Homography& sigma) {
  if (sigma.is_identity())
    throw Error("IdentityNotClassifiable", "identity homography");
  const FieldTower* tw = sigma.tower();
  int lv = sigma.level();
  fe a = sigma.a(), b = sigma.b(), c = sigma.c(), d = sigma.d();
  fe tr = tw->add(lv, a, d);
  fe det = tw->sub(lv, tw->mul(lv, a, d), tw->mul(lv, b, c));
  Poly chi(tw, lv, {det, tw->neg(lv, tr), 1});
  auto rs = chi.roots();
  HomographyClass cls;
  if (rs.size() == 2) {
    fe l1 = rs[0].first, l2 = rs[1].first;  // lex order from roots()
    auto v1 = eigvec(tw, lv, a, b, c, d, l1);
    auto v2 = eigvec(tw, lv, a, b, c, d, l2);
    cls.tag = HClass::DiagonalizableBase;
    cls.value = FieldElement(tw, lv, tw->div(lv, l1, l2));
    cls.rho = Homography::make(tw, lv, v1[0], v2[0], v1[1], v2[1]);
  } else if (rs.size() == 1 && rs[0].second == 2) {
    fe lam = rs[0].first;
    // u outside ker(M - lam); v = (M - lam) u spans the kernel.
    fe n00 = tw->sub(lv, a, lam), n10 = c;
    std::array<fe, 2> u, v;
    if (n00 != 0 || n10 != 0) {
      u = {1, 0};
      v = {n00, n10};
    } else {
      u = {0, 1};
      v = {b, tw->sub(lv, d, lam)};
    }
    cls.tag = HClass::Trigonalizable;
    cls.value = FieldElement(tw, lv, tw->inv(lv, lam));
    cls.rho = Homography::make(tw, lv, v[0], u[0], v[1], u[1]);
  } else {
    // Irreducible characteristic polynomial: eigenvalues one level up.
    if (lv + 1 > kLevelExt2)
      throw Error("FieldTooLarge", "quadratic eigenvalues above the tower top");
    int up = lv + 1;
    auto rs2 = chi.embed(up).roots();
    if (rs2.size() != 2)
      throw Error("InternalError", "irreducible quadratic without two roots one level up");
    fe al = rs2[0].first, al2 = rs2[1].first;
    auto v1 = eigvec(tw, up, a, b, c, d, al);
    auto v2 = eigvec(tw, up, a, b, c, d, al2);
    cls.tag = HClass::DiagonalizableQuadratic;
    cls.value = FieldElement(tw, up, al);
    cls.rho = Homography::make(tw, up, v1[0], v2[0], v1[1], v2[1]);
  }
  return cls;
}

Homography standard_form(const HomographyClass& cls) {
  const FieldTower* tw = cls.value.tower();
  int lv = cls.rho.level();
  switch (cls.tag) {
    case HClass::DiagonalizableBase:
      return Homography::make(tw, lv, cls.value.value(), 0, 0, 1);
    case HClass::Trigonalizable:
      return Homography::make(tw, lv, 1, cls.value.value(), 0, 1);
    case HClass::DiagonalizableQuadratic: {
      fe al = cls.value.value();
      std::uint64_t qm = tw->card(lv - 1);
      return Homography::make(tw, lv, al, 0, 0, tw->pow(lv, al, qm));
    }
  }
  throw Error("InternalError", "unreachable");
}

std::vector<ProjPoint> orbit(const Homography& sigma, const ProjPoint& P) {
  std::uint64_t l = sigma.order();
  std::vector<ProjPoint> out;
  out.reserve(l);
  ProjPoint cur = P;
  for (std::uint64_t i = 0; i < l; ++i) {
    out.push_back(cur);
    cur = sigma.apply(cur);
  }
  return out;
}

bool has_trivial_stabilizer(const Homography& sigma, const ProjPoint& P) {
  auto orb = orbit(sigma, P);
  for (std::size_t i = 0; i < orb.size(); ++i)
    for (std::size_t j = i + 1; j < orb.size(); ++j)
      if (orb[i] == orb[j]) return false;
  return true;
}

std::vector<ProjPoint> all_points(const TowerPtr& tw, int lv) {
  std::uint64_t card = tw->card(lv);
  if (card > (1u << 16)) throw Error("FieldTooLarge", "point enumeration");
  std::vector<fe> xs;
  for (fe x = 0; x < card; ++x) xs.push_back(x);
  std::sort(xs.begin(), xs.end(),
            [&](fe u, fe v) { return tw->lex_less(lv, u, v); });
  std::vector<ProjPoint> out;
  for (fe x : xs) out.push_back(ProjPoint::finite(tw.get(), lv, x));
  out.push_back(ProjPoint::infinity(tw.get(), lv));
  return out;
}

}  // namespace qcalt
