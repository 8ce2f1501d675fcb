#ifndef QCALT_PROJLINE_HPP
#define QCALT_PROJLINE_HPP

#include <vector>

#include "qcalt/ff.hpp"

namespace qcalt {

/// A point of P^1 at one tower level, kept in canonical form: (x:1) for
/// finite points, (1:0) for the point at infinity.
class ProjPoint {
 public:
  ProjPoint() : tw_(nullptr), lv_(0), x_(0), y_(0) {}

  /// Canonicalizes (x:y); throws BothZero.
  static ProjPoint make(const FieldTower* tw, int lv, fe x, fe y);
  static ProjPoint finite(const FieldTower* tw, int lv, fe x);
  static ProjPoint infinity(const FieldTower* tw, int lv);

  const FieldTower* tower() const { return tw_; }
  int level() const { return lv_; }
  fe x() const { return x_; }
  fe y() const { return y_; }
  bool is_infinity() const { return y_ == 0; }

  ProjPoint embed(int lv) const;
  /// Descends a point with coordinates in a lower level; throws NotInSubfield.
  ProjPoint try_descend(int lv) const;

  bool operator==(const ProjPoint& o) const {
    return lv_ == o.lv_ && x_ == o.x_ && y_ == o.y_;
  }
  bool operator!=(const ProjPoint& o) const { return !(*this == o); }

 private:
  const FieldTower* tw_;
  int lv_;
  fe x_, y_;
};

/// Deterministic total order: finite points by lex on x, infinity last.
bool point_less(const ProjPoint& a, const ProjPoint& b);

/// An element of PGL_2 at one tower level, stored as the unique scaling of
/// (a b; c d) whose first nonzero entry (scanning a,b,c,d) is 1.
class Homography {
 public:
  Homography() : tw_(nullptr), lv_(0), a_(0), b_(0), c_(0), d_(0) {}

  /// Throws SingularMatrix when ad - bc = 0.
  static Homography make(const FieldTower* tw, int lv, fe a, fe b, fe c, fe d);
  static Homography identity(const FieldTower* tw, int lv);

  const FieldTower* tower() const { return tw_; }
  int level() const { return lv_; }
  fe a() const { return a_; }
  fe b() const { return b_; }
  fe c() const { return c_; }
  fe d() const { return d_; }
  bool is_identity() const;

  ProjPoint apply(const ProjPoint& P) const;
  Homography compose(const Homography& o) const;  // this after o
  Homography inverse() const;
  Homography conjugate(const Homography& rho) const;  // rho o this o rho^-1
  Homography pow(std::uint64_t e) const;

  /// Least l >= 1 with sigma^l scalar.
  std::uint64_t order() const;

  Homography embed(int lv) const;
  Homography try_descend(int lv) const;

  bool operator==(const Homography& o) const {
    return lv_ == o.lv_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
  }
  bool operator!=(const Homography& o) const { return !(*this == o); }

 private:
  const FieldTower* tw_;
  int lv_;
  fe a_, b_, c_, d_;
};

enum class HClass { DiagonalizableBase, Trigonalizable, DiagonalizableQuadratic };

/// Conjugacy data: sigma = rho o standard o rho^-1 where standard is
/// (a 0; 0 1) for DiagonalizableBase (value = eigen-ratio a, determined up to
/// inversion), (1 b; 0 1) for Trigonalizable (value = b), and
/// (alpha 0; 0 alpha^{q^m}) for DiagonalizableQuadratic (value = alpha, one
/// level up; rho lives one level up as well).
struct HomographyClass {
  HClass tag;
  FieldElement value;
  Homography rho;
};

/// Throws IdentityNotClassifiable on the identity; FieldTooLarge when the
/// quadratic case would need a level above the tower top.
HomographyClass classify(const Homography& sigma);

/// The standard form named by a classification, at rho's level.
Homography standard_form(const HomographyClass& cls);

/// [P, sigma P, ..., sigma^{l-1} P] with l = order(sigma).
std::vector<ProjPoint> orbit(const Homography& sigma, const ProjPoint& P);
bool has_trivial_stabilizer(const Homography& sigma, const ProjPoint& P);

/// All points of P^1 at a level: every (x:1) in lex order, then (1:0).
std::vector<ProjPoint> all_points(const TowerPtr& tw, int lv);

}  // namespace qcalt

#endif  // QCALT_PROJLINE_HPP
