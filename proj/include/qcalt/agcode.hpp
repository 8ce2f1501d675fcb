#ifndef QCALT_AGCODE_HPP
#define QCALT_AGCODE_HPP

#include <vector>

#include "qcalt/falg.hpp"
#include "qcalt/projline.hpp"

namespace qcalt {

/// Homogeneous bivariate polynomial of fixed degree d, stored as the
/// coefficients of X^i Y^{d-i} for i = 0..d.
class HomPoly {
 public:
  HomPoly() : tw_(nullptr), lv_(0) {}
  HomPoly(const FieldTower* tw, int lv, int deg)
      : tw_(tw), lv_(lv), c_(deg + 1, 0) {}
  HomPoly(const FieldTower* tw, int lv, std::vector<fe> coeffs)
      : tw_(tw), lv_(lv), c_(std::move(coeffs)) {}

  static HomPoly one(const FieldTower* tw, int lv);
  /// The linear form delta*X - gamma*Y vanishing at (gamma:delta).
  static HomPoly vanishing_at(const ProjPoint& P);
  static HomPoly monomial(const FieldTower* tw, int lv, int deg, int xdeg);

  const FieldTower* tower() const { return tw_; }
  int level() const { return lv_; }
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  fe coeff(int i) const { return c_[i]; }
  bool is_zero() const;

  HomPoly operator*(const HomPoly& o) const;
  fe eval(const ProjPoint& P) const;
  /// Substitute (X, Y) <- (aX + bY, cX + dY).
  HomPoly substitute(const Homography& s) const;
  HomPoly embed(int lv) const;

 private:
  const FieldTower* tw_;
  int lv_;
  std::vector<fe> c_;
};

/// Quotient of homogeneous polynomials of equal degree: a rational function
/// of degree zero on P^1.
struct RationalFunction {
  HomPoly num, den;
  fe eval(const ProjPoint& P) const;
};

/// Formal sum of points with integer multiplicities, kept sorted.
class Divisor {
 public:
  Divisor() = default;

  void add(const ProjPoint& P, int mult);
  int mult_at(const ProjPoint& P) const;
  int degree() const;
  bool empty() const { return supp_.empty(); }
  const std::vector<std::pair<ProjPoint, int>>& support() const { return supp_; }

  Divisor apply(const Homography& s) const;  // pushforward point-by-point
  Divisor operator+(const Divisor& o) const;
  Divisor operator-() const;
  bool operator==(const Divisor& o) const { return supp_ == o.supp_; }
  bool operator!=(const Divisor& o) const { return !(*this == o); }

 private:
  std::vector<std::pair<ProjPoint, int>> supp_;  // nonzero mults only
};

enum class CodeFlavor { Grs, Alternant };

/// Evaluation-code data: ordered support points, divisor, flavor. For the
/// Alternant flavor the subfield level of the final code is `sub_level`.
struct AgSpec {
  const FieldTower* tower = nullptr;
  int level = 0;
  std::vector<ProjPoint> points;
  Divisor divisor;
  CodeFlavor flavor = CodeFlavor::Grs;
  int sub_level = kLevelBase;
};

/// Basis of L(G) on P^1 (size deg G + 1; empty when deg G < 0), numerator
/// monomials in increasing X-degree.
std::vector<RationalFunction> rr_basis(const FieldTower* tw, int lv, const Divisor& G);

/// Generator by evaluating rr_basis at the support; throws SupportMeetsDivisor.
LinearCode eval_code(const AgSpec& spec);

/// AgSpec with G = (k-1)P_inf - (f), f the interpolant of y at x; its
/// eval_code is the classic GRS_k(x, y).
AgSpec grs_from_xy(const FieldTower* tw, int lv, const std::vector<fe>& x,
                   const std::vector<fe>& y, std::size_t k);

/// y_perp with GRS_k(x,y) dual = GRS_{n-k}(x, y_perp) for every k.
std::vector<fe> dual_multiplier(const FieldTower* tw, int lv, const std::vector<fe>& x,
                                const std::vector<fe>& y);

/// subfield_subcode(dual(eval_code(spec)), spec.sub_level).
LinearCode alternant_code(const AgSpec& spec);

/// pi with sigma(P_i) = P_{pi(i)}; throws SupportNotStable.
std::vector<std::size_t> induced_permutation(const Homography& sigma,
                                             const std::vector<ProjPoint>& points);

}  // namespace qcalt

#endif  // QCALT_AGCODE_HPP
