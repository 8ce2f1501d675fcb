#ifndef QCALT_FF_HPP
#define QCALT_FF_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcalt {

/// Error with a stable machine-readable kind tag ("DivisionByZero", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

/// Raw element encoding inside one tower level. An element of a level with
/// cardinality N is an integer in [0, N): the little-endian mixed-radix-p
/// digit string of its coefficient vector over the prime field.
using fe = std::uint32_t;

/// Tower levels F_p = 0, F_q = 1, F_{q^m} = 2, F_{q^{2m}} = 3.
constexpr int kLevelPrime = 0;
constexpr int kLevelBase = 1;   // F_q
constexpr int kLevelExt = 2;    // F_{q^m}
constexpr int kLevelExt2 = 3;   // F_{q^{2m}}

class FieldElement;
class Poly;

/// The chain F_p < F_q = F_{p^s} < F_{q^m} < F_{q^{2m}} with fixed defining
/// irreducibles (lexicographically smallest monic, coefficients compared
/// low-to-high). Level 3 is built lazily on first use. Immutable once built.
class FieldTower : public std::enable_shared_from_this<FieldTower> {
 public:
  struct Level {
    std::uint64_t card = 0;         // p^(degree over prime)
    unsigned deg_over_prime = 0;
    unsigned deg_over_base = 0;     // degree of modulus over previous level
    std::vector<fe> modulus;        // monic, low-to-high, over previous level
    std::vector<fe> exp_tbl;        // exp_tbl[i] = g^i, size card-1
    std::vector<std::uint32_t> log_tbl;  // log_tbl[x] for x in [1, card)
    fe generator = 0;
  };

  static std::shared_ptr<const FieldTower> make(unsigned p, unsigned s, unsigned m);

  unsigned p() const { return p_; }
  unsigned s() const { return s_; }
  unsigned m() const { return m_; }
  std::uint64_t q() const { return levels_[kLevelBase]->card; }

  const Level& level(int lv) const;
  std::uint64_t card(int lv) const { return level(lv).card; }

  // ---- scalar arithmetic at a level ----
  fe add(int lv, fe a, fe b) const;
  fe neg(int lv, fe a) const;
  fe sub(int lv, fe a, fe b) const { return add(lv, a, neg(lv, b)); }
  fe mul(int lv, fe a, fe b) const;
  fe inv(int lv, fe a) const;
  fe div(int lv, fe a, fe b) const { return mul(lv, a, inv(lv, b)); }
  fe pow(int lv, fe a, std::uint64_t e) const;
  fe from_int(int lv, std::uint64_t n) const;  // n * 1, reduced mod p

  /// Multiplicative order; throws ZeroElement on 0.
  std::uint64_t element_order(int lv, fe a) const;

  /// True lexicographic order on the low-to-high F_p coordinate vector.
  bool lex_less(int lv, fe a, fe b) const;

  /// Coordinates of a level-`lv` element over sublevel `sub` (digits base
  /// card(sub), low to high). Valid because the representation is nested.
  std::vector<fe> coords(int lv, fe a, int sub) const;
  fe from_coords(int lv, const std::vector<fe>& c, int sub) const;

  /// Membership test for the canonical copy of level `sub` inside `lv`.
  bool in_sublevel(int lv, fe a, int sub) const { return a < card(sub); }

  FieldElement make_element(int lv, fe v) const;
  FieldElement zero(int lv) const;
  FieldElement one(int lv) const;

  ~FieldTower();

 private:
  FieldTower(unsigned p, unsigned s, unsigned m);
  void build_level(int lv) const;

  unsigned p_, s_, m_;
  mutable std::unique_ptr<Level> levels_[4];
  mutable std::once_flag level_once_[4];
};

using TowerPtr = std::shared_ptr<const FieldTower>;

/// Make a tower; validates primality of p and irreducibility of the chosen
/// defining polynomials. Deterministic for fixed (p, s, m).
TowerPtr make_tower(unsigned p, unsigned s, unsigned m);

/// An element of one tower level. Binary operations embed the lower-level
/// operand automatically (the encoding is embedding-invariant).
class FieldElement {
 public:
  FieldElement() : tw_(nullptr), lv_(0), v_(0) {}
  FieldElement(const FieldTower* tw, int lv, fe v) : tw_(tw), lv_(lv), v_(v) {}

  const FieldTower* tower() const { return tw_; }
  int level() const { return lv_; }
  fe value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(std::uint64_t e) const;

  /// Lift to a higher level (identity on the encoding).
  FieldElement embed(int lv) const;
  /// Inverse of embed; throws NotInSubfield if the element does not descend.
  FieldElement try_descend(int lv) const;
  bool in_sublevel(int lv) const { return tw_->in_sublevel(lv_, v_, lv); }

  std::uint64_t order() const { return tw_->element_order(lv_, v_); }

  bool operator==(const FieldElement& o) const { return v_ == o.v_ && lv_ == o.lv_; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  friend class FieldTower;
  const FieldTower* tw_;
  int lv_;
  fe v_;
};

/// All primitive l-th roots of unity at a level; exactly phi(l) of them.
/// Throws NoSuchRoots when l does not divide card-1.
std::vector<FieldElement> roots_of_unity(const TowerPtr& tw, int lv, std::uint64_t ell);

/// Dense univariate polynomial over one tower level, low-to-high coefficients.
/// degree() of the zero polynomial is -1 (stands in for minus infinity).
class Poly {
 public:
  Poly() : tw_(nullptr), lv_(0) {}
  Poly(const FieldTower* tw, int lv) : tw_(tw), lv_(lv) {}
  Poly(const FieldTower* tw, int lv, std::vector<fe> coeffs);

  static Poly zero(const FieldTower* tw, int lv) { return Poly(tw, lv); }
  static Poly constant(const FieldTower* tw, int lv, fe c);
  static Poly x(const FieldTower* tw, int lv);  // the monomial X
  static Poly monomial(const FieldTower* tw, int lv, unsigned deg, fe c);

  const FieldTower* tower() const { return tw_; }
  int level() const { return lv_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  fe coeff(unsigned i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<fe>& coeffs() const { return c_; }
  fe leading() const { return c_.empty() ? 0 : c_.back(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scale(fe c) const;
  Poly monic() const;
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly operator%(const Poly& d) const { return divmod(d).second; }
  Poly derivative() const;

  fe eval(fe x) const;
  Poly embed(int lv) const;
  Poly try_descend(int lv) const;

  /// All roots at this polynomial's level with multiplicities, ordered
  /// lexicographically on coordinate vectors. Exhaustive scan; levels with
  /// more than 2^16 elements are rejected with FieldTooLarge.
  std::vector<std::pair<fe, unsigned>> roots() const;

  bool operator==(const Poly& o) const { return lv_ == o.lv_ && c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

 private:
  void normalize();
  const FieldTower* tw_;
  int lv_;
  std::vector<fe> c_;
};

/// Monic gcd by Euclid; gcd(0, 0) throws BothZero.
Poly poly_gcd(const Poly& f, const Poly& g);

/// Unique interpolating polynomial of degree < |xs| (Lagrange).
Poly interpolate(const FieldTower* tw, int lv,
                 const std::vector<fe>& xs, const std::vector<fe>& ys);

/// Bivariate polynomial viewed as a polynomial in X whose coefficients are
/// univariate polynomials in Y. Just enough structure for the resultant.
class BiPoly {
 public:
  BiPoly(const FieldTower* tw, int lv) : tw_(tw), lv_(lv) {}

  void set_coeff_x(unsigned i, Poly p);
  int degree_x() const;
  int max_degree_y() const;
  const FieldTower* tower() const { return tw_; }
  int level() const { return lv_; }

  /// Substitute Y = y0, producing a univariate polynomial in X.
  Poly eval_y(fe y0) const;
  BiPoly embed(int lv) const;

 private:
  const FieldTower* tw_;
  int lv_;
  std::vector<Poly> cx_;  // cx_[i] = coefficient of X^i, a poly in Y
};

/// Res_X(f, g) as a polynomial in Y, by evaluation at deg+1 points, Sylvester
/// determinants (f's rows first) and Lagrange interpolation. Ascends to a
/// higher tower level when the current one has too few evaluation points.
Poly resultant_in_x(const BiPoly& f, const Poly& g);

}  // namespace qcalt

#endif  // QCALT_FF_HPP
