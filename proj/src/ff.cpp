#include "qcalt/ff.hpp"

#include <algorithm>
#include <numeric>

namespace qcalt {

namespace {

constexpr std::uint64_t kMaxTableCard = 1u << 22;
constexpr std::uint64_t kMaxScanCard = 1u << 16;

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> fs;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

// Polynomial helpers over an already-built tower level, used while
// constructing the next level. Coefficients low-to-high, normalized.
struct LevelPolyOps {
  const FieldTower* tw;
  int lv;

  void norm(std::vector<fe>& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  std::vector<fe> mul(const std::vector<fe>& a, const std::vector<fe>& b) const {
    if (a.empty() || b.empty()) return {};
    std::vector<fe> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (size_t j = 0; j < b.size(); ++j)
        r[i + j] = tw->add(lv, r[i + j], tw->mul(lv, a[i], b[j]));
    }
    return r;
  }
  // a mod f, f monic
  std::vector<fe> mod(std::vector<fe> a, const std::vector<fe>& f) const {
    norm(a);
    const size_t df = f.size() - 1;
    while (a.size() > df) {
      fe c = a.back();
      size_t shift = a.size() - 1 - df;
      if (c != 0)
        for (size_t i = 0; i < df; ++i)
          a[shift + i] = tw->sub(lv, a[shift + i], tw->mul(lv, c, f[i]));
      a.pop_back();
      norm(a);
      if (a.size() <= df) break;
    }
    return a;
  }
  std::vector<fe> mulmod(const std::vector<fe>& a, const std::vector<fe>& b,
                         const std::vector<fe>& f) const {
    return mod(mul(a, b), f);
  }
  std::vector<fe> powmod(std::vector<fe> a, std::uint64_t e,
                         const std::vector<fe>& f) const {
    std::vector<fe> r{1};
    a = mod(std::move(a), f);
    while (e) {
      if (e & 1) r = mulmod(r, a, f);
      a = mulmod(a, a, f);
      e >>= 1;
    }
    return r;
  }
  std::vector<fe> gcd(std::vector<fe> a, std::vector<fe> b) const {
    norm(a);
    norm(b);
    while (!b.empty()) {
      // make b monic before reduction
      fe lc = b.back();
      if (lc != 1) {
        fe il = tw->inv(lv, lc);
        for (auto& c : b) c = tw->mul(lv, c, il);
      }
      a = mod(std::move(a), b);
      std::swap(a, b);
    }
    return a;
  }
  bool irreducible(const std::vector<fe>& f) const {
    // monic f of degree d >= 1 over a field of cardinality B:
    // irreducible iff gcd(x^(B^i) - x mod f, f) = 1 for i = 1..d/2.
    const unsigned d = static_cast<unsigned>(f.size() - 1);
    if (d == 1) return true;
    const std::uint64_t B = tw->card(lv);
    for (unsigned i = 1; i <= d / 2; ++i) {
      // x^(B^i) mod f by iterated powmod to keep exponents in range
      std::vector<fe> x{0, 1};
      std::vector<fe> acc = x;
      for (unsigned j = 0; j < i; ++j) acc = powmod(acc, B, f);
      // acc - x
      std::vector<fe> diff = acc;
      diff.resize(std::max<size_t>(diff.size(), 2), 0);
      diff[1] = tw->sub(lv, diff[1], 1);
      norm(diff);
      auto g = gcd(f, diff);
      if (!(g.size() == 1)) return false;
    }
    return true;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// FieldTower

FieldTower::FieldTower(unsigned p, unsigned s, unsigned m) : p_(p), s_(s), m_(m) {}
FieldTower::~FieldTower() = default;

TowerPtr make_tower(unsigned p, unsigned s, unsigned m) {
  return FieldTower::make(p, s, m);
}

std::shared_ptr<const FieldTower> FieldTower::make(unsigned p, unsigned s, unsigned m) {
  if (!is_prime(p)) throw Error("NotPrime", "p = " + std::to_string(p));
  if (s < 1 || m < 1) throw Error("DegreeZero", "require s >= 1 and m >= 1");
  auto tw = std::shared_ptr<FieldTower>(new FieldTower(p, s, m));
  tw->level(kLevelExt);  // levels 0..2 eagerly, level 3 lazily
  return tw;
}

const FieldTower::Level& FieldTower::level(int lv) const {
  if (lv < 0 || lv > 3) throw Error("BadLevel", "level " + std::to_string(lv));
  std::call_once(level_once_[lv], [this, lv] {
    for (int k = 0; k < lv; ++k) build_level(k);
    build_level(lv);
  });
  return *levels_[lv];
}

void FieldTower::build_level(int lv) const {
  if (levels_[lv]) return;
  auto L = std::make_unique<Level>();
  if (lv == kLevelPrime) {
    L->card = p_;
    L->deg_over_prime = 1;
    L->deg_over_base = 1;
    L->modulus = {0, 1};
    if (p_ > 2) {
      // find a generator of F_p^*
      auto fac = prime_factors(p_ - 1);
      for (fe g = 2; g < p_; ++g) {
        bool ok = true;
        for (auto f : fac) {
          std::uint64_t e = (p_ - 1) / f, r = 1, b = g;
          while (e) {
            if (e & 1) r = r * b % p_;
            b = b * b % p_;
            e >>= 1;
          }
          if (r == 1) { ok = false; break; }
        }
        if (ok) { L->generator = g; break; }
      }
    } else {
      L->generator = 1;
    }
    L->exp_tbl.resize(p_ - 1);
    L->log_tbl.resize(p_);
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i < p_ - 1; ++i) {
      L->exp_tbl[i] = static_cast<fe>(x);
      L->log_tbl[x] = static_cast<std::uint32_t>(i);
      x = x * L->generator % p_;
    }
    levels_[lv] = std::move(L);
    return;
  }

  const Level& base = *levels_[lv - 1];
  unsigned d = (lv == kLevelBase) ? s_ : (lv == kLevelExt ? m_ : 2u);
  L->deg_over_base = d;
  L->deg_over_prime = base.deg_over_prime * d;
  std::uint64_t card = 1;
  for (unsigned i = 0; i < L->deg_over_prime; ++i) {
    card *= p_;
    if (card > kMaxTableCard)
      throw Error("FieldTooLarge",
                  "level " + std::to_string(lv) + " cardinality exceeds 2^22");
  }
  L->card = card;

  LevelPolyOps ops{this, lv - 1};
  const std::uint64_t B = base.card;

  if (d == 1) {
    L->modulus = {0, 1};  // X, the lex-smallest monic linear
    L->generator = base.generator;
    L->exp_tbl = base.exp_tbl;
    L->log_tbl = base.log_tbl;
    levels_[lv] = std::move(L);
    return;
  }

  // lexicographically smallest monic irreducible of degree d over the base
  // (coefficients compared low-to-high)
  {
    // odometer over (c_0,...,c_{d-1}) with the last digit fastest visits
    // tuples in increasing lex order (c_0 compared first)
    bool found = false;
    std::vector<fe> idx(d, 0);
    while (true) {
      std::vector<fe> f(idx);
      f.push_back(1);
      if (f[0] != 0 && ops.irreducible(f)) {  // c_0 = 0 gives factor X
        L->modulus = f;
        found = true;
        break;
      }
      int pos = static_cast<int>(d) - 1;
      while (pos >= 0) {
        if (++idx[pos] < B) break;
        idx[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    if (!found) throw Error("NoIrreducible", "no irreducible modulus found");
  }

  // element encoding at this level: sum of digit_i * B^i, digits over base
  auto to_digits = [&](std::uint64_t v) {
    std::vector<fe> ds(d);
    for (unsigned i = 0; i < d; ++i) {
      ds[i] = static_cast<fe>(v % B);
      v /= B;
    }
    return ds;
  };
  auto from_digits = [&](const std::vector<fe>& ds) {
    std::uint64_t v = 0;
    for (size_t i = ds.size(); i-- > 0;) v = v * B + ds[i];
    return static_cast<fe>(v);
  };

  auto mul_enc = [&](fe a, fe b) {
    auto pa = to_digits(a);
    auto pb = to_digits(b);
    ops.norm(pa);
    ops.norm(pb);
    auto r = ops.mulmod(pa, pb, L->modulus);
    return from_digits(r);
  };
  auto pow_enc = [&](fe a, std::uint64_t e) {
    fe r = 1;
    while (e) {
      if (e & 1) r = mul_enc(r, a);
      a = mul_enc(a, a);
      e >>= 1;
    }
    return r;
  };

  // find a multiplicative generator
  auto fac = prime_factors(card - 1);
  fe gen = 0;
  for (std::uint64_t g = 2; g < card; ++g) {
    bool ok = true;
    for (auto f : fac)
      if (pow_enc(static_cast<fe>(g), (card - 1) / f) == 1) { ok = false; break; }
    if (ok) { gen = static_cast<fe>(g); break; }
  }
  if (gen == 0) throw Error("NoGenerator", "no multiplicative generator found");
  L->generator = gen;
  L->exp_tbl.resize(card - 1);
  L->log_tbl.assign(card, 0);
  fe x = 1;
  for (std::uint64_t i = 0; i < card - 1; ++i) {
    L->exp_tbl[i] = x;
    L->log_tbl[x] = static_cast<std::uint32_t>(i);
    x = mul_enc(x, gen);
  }
  levels_[lv] = std::move(L);
}

fe FieldTower::add(int lv, fe a, fe b) const {
  if (p_ == 2) return a ^ b;
  const Level& L = level(lv);
  fe r = 0;
  std::uint64_t mult = 1;
  for (unsigned i = 0; i < L.deg_over_prime; ++i) {
    fe d = static_cast<fe>(((a / mult) % p_ + (b / mult) % p_) % p_);
    r += d * static_cast<fe>(mult);
    mult *= p_;
  }
  return r;
}

fe FieldTower::neg(int lv, fe a) const {
  if (p_ == 2) return a;
  const Level& L = level(lv);
  fe r = 0;
  std::uint64_t mult = 1;
  for (unsigned i = 0; i < L.deg_over_prime; ++i) {
    fe d = (a / mult) % p_;
    fe nd = d == 0 ? 0 : p_ - d;
    r += nd * static_cast<fe>(mult);
    mult *= p_;
  }
  return r;
}

fe FieldTower::mul(int lv, fe a, fe b) const {
  if (a == 0 || b == 0) return 0;
  const Level& L = level(lv);
  std::uint64_t e = static_cast<std::uint64_t>(L.log_tbl[a]) + L.log_tbl[b];
  const std::uint64_t n = L.card - 1;
  if (e >= n) e -= n;
  return L.exp_tbl[e];
}

fe FieldTower::inv(int lv, fe a) const {
  if (a == 0) throw Error("DivisionByZero", "inverse of zero");
  const Level& L = level(lv);
  const std::uint64_t n = L.card - 1;
  return L.exp_tbl[(n - L.log_tbl[a]) % n];
}

fe FieldTower::pow(int lv, fe a, std::uint64_t e) const {
  const Level& L = level(lv);
  if (a == 0) return e == 0 ? 1 : 0;
  const std::uint64_t n = L.card - 1;
  std::uint64_t le = (static_cast<std::uint64_t>(L.log_tbl[a]) % n) * (e % n) % n;
  return L.exp_tbl[le];
}

fe FieldTower::from_int(int lv, std::uint64_t n) const {
  (void)lv;
  return static_cast<fe>(n % p_);
}

std::uint64_t FieldTower::element_order(int lv, fe a) const {
  if (a == 0) throw Error("ZeroElement", "order of zero");
  const Level& L = level(lv);
  const std::uint64_t n = L.card - 1;
  return n / std::gcd(n, static_cast<std::uint64_t>(L.log_tbl[a]));
}

bool FieldTower::lex_less(int lv, fe a, fe b) const {
  const Level& L = level(lv);
  for (unsigned i = 0; i < L.deg_over_prime; ++i) {
    fe da = a % p_, db = b % p_;
    if (da != db) return da < db;
    a /= p_;
    b /= p_;
  }
  return false;
}

std::vector<fe> FieldTower::coords(int lv, fe a, int sub) const {
  const Level& L = level(lv);
  const Level& S = level(sub);
  if (L.deg_over_prime % S.deg_over_prime != 0)
    throw Error("BadLevel", "not a sublevel");
  unsigned d = L.deg_over_prime / S.deg_over_prime;
  std::vector<fe> out(d);
  std::uint64_t B = S.card;
  for (unsigned i = 0; i < d; ++i) {
    out[i] = static_cast<fe>(a % B);
    a = static_cast<fe>(a / B);
  }
  return out;
}

fe FieldTower::from_coords(int lv, const std::vector<fe>& c, int sub) const {
  std::uint64_t B = card(sub);
  std::uint64_t v = 0;
  for (size_t i = c.size(); i-- > 0;) v = v * B + c[i];
  if (v >= card(lv)) throw Error("BadEncoding", "coords out of range");
  return static_cast<fe>(v);
}

FieldElement FieldTower::make_element(int lv, fe v) const {
  if (v >= card(lv)) throw Error("BadEncoding", "element encoding out of range");
  return FieldElement(this, lv, v);
}
FieldElement FieldTower::zero(int lv) const { return FieldElement(this, lv, 0); }
FieldElement FieldTower::one(int lv) const { return FieldElement(this, lv, 1); }

// ---------------------------------------------------------------------------
// FieldElement

namespace {
inline int join_level(const FieldElement& a, const FieldElement& b) {
  return std::max(a.level(), b.level());
}
}  // namespace

FieldElement FieldElement::operator+(const FieldElement& o) const {
  int lv = join_level(*this, o);
  return FieldElement(tw_, lv, tw_->add(lv, v_, o.v_));
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  int lv = join_level(*this, o);
  return FieldElement(tw_, lv, tw_->sub(lv, v_, o.v_));
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  int lv = join_level(*this, o);
  return FieldElement(tw_, lv, tw_->mul(lv, v_, o.v_));
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  int lv = join_level(*this, o);
  return FieldElement(tw_, lv, tw_->div(lv, v_, o.v_));
}
FieldElement FieldElement::operator-() const {
  return FieldElement(tw_, lv_, tw_->neg(lv_, v_));
}
FieldElement FieldElement::inv() const {
  return FieldElement(tw_, lv_, tw_->inv(lv_, v_));
}
FieldElement FieldElement::pow(std::uint64_t e) const {
  return FieldElement(tw_, lv_, tw_->pow(lv_, v_, e));
}
FieldElement FieldElement::embed(int lv) const {
  if (lv < lv_) throw Error("BadLevel", "embed to lower level");
  return FieldElement(tw_, lv, v_);
}
FieldElement FieldElement::try_descend(int lv) const {
  if (lv > lv_) throw Error("BadLevel", "descend to higher level");
  if (!tw_->in_sublevel(lv_, v_, lv))
    throw Error("NotInSubfield", "element does not lie in the sublevel");
  return FieldElement(tw_, lv, v_);
}

std::vector<FieldElement> roots_of_unity(const TowerPtr& tw, int lv, std::uint64_t ell) {
  if (ell == 0) throw Error("NoSuchRoots", "ell = 0");
  const std::uint64_t n = tw->card(lv) - 1;
  if (n % ell != 0)
    throw Error("NoSuchRoots", "ell does not divide card - 1");
  std::vector<FieldElement> out;
  const auto& L = tw->level(lv);
  for (std::uint64_t i = 0; i < ell; ++i) {
    if (std::gcd(i, ell) != 1 && ell != 1) continue;
    if (ell == 1 && i != 0) continue;
    out.push_back(tw->make_element(lv, L.exp_tbl[i * (n / ell) % n]));
  }
  std::sort(out.begin(), out.end(), [&](const FieldElement& a, const FieldElement& b) {
    return tw->lex_less(lv, a.value(), b.value());
  });
  return out;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(const FieldTower* tw, int lv, std::vector<fe> coeffs)
    : tw_(tw), lv_(lv), c_(std::move(coeffs)) {
  normalize();
}

void Poly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const FieldTower* tw, int lv, fe c) {
  return Poly(tw, lv, std::vector<fe>{c});
}
Poly Poly::x(const FieldTower* tw, int lv) { return Poly(tw, lv, {0, 1}); }
Poly Poly::monomial(const FieldTower* tw, int lv, unsigned deg, fe c) {
  std::vector<fe> v(deg + 1, 0);
  v[deg] = c;
  return Poly(tw, lv, std::move(v));
}

Poly Poly::operator+(const Poly& o) const {
  int lv = std::max(lv_, o.lv_);
  std::vector<fe> r(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = tw_->add(lv, coeff(static_cast<unsigned>(i)), o.coeff(static_cast<unsigned>(i)));
  return Poly(tw_, lv, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
  int lv = std::max(lv_, o.lv_);
  std::vector<fe> r(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = tw_->sub(lv, coeff(static_cast<unsigned>(i)), o.coeff(static_cast<unsigned>(i)));
  return Poly(tw_, lv, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  int lv = std::max(lv_, o.lv_);
  if (is_zero() || o.is_zero()) return Poly(tw_, lv);
  std::vector<fe> r(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j)
      r[i + j] = tw_->add(lv, r[i + j], tw_->mul(lv, c_[i], o.c_[j]));
  }
  return Poly(tw_, lv, std::move(r));
}

Poly Poly::scale(fe c) const {
  std::vector<fe> r(c_);
  for (auto& x : r) x = tw_->mul(lv_, x, c);
  return Poly(tw_, lv_, std::move(r));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scale(tw_->inv(lv_, leading()));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw Error("DivisionByZero", "polynomial division by zero");
  int lv = std::max(lv_, d.lv_);
  std::vector<fe> rem(c_);
  int dd = d.degree();
  fe ilc = tw_->inv(lv, d.leading());
  std::vector<fe> quo;
  if (degree() >= dd) quo.assign(degree() - dd + 1, 0);
  for (int i = degree(); i >= dd; --i) {
    fe c = rem[i];
    if (c == 0) continue;
    fe f = tw_->mul(lv, c, ilc);
    quo[i - dd] = f;
    for (int j = 0; j <= dd; ++j)
      rem[i - dd + j] = tw_->sub(lv, rem[i - dd + j], tw_->mul(lv, f, d.coeff(j)));
  }
  return {Poly(tw_, lv, std::move(quo)), Poly(tw_, lv, std::move(rem))};
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(tw_, lv_);
  std::vector<fe> r(c_.size() - 1, 0);
  for (size_t i = 1; i < c_.size(); ++i) {
    fe f = 0;
    for (std::uint64_t k = 0; k < i % tw_->p(); ++k) f = tw_->add(lv_, f, c_[i]);
    r[i - 1] = f;
  }
  return Poly(tw_, lv_, std::move(r));
}

fe Poly::eval(fe x) const {
  fe r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = tw_->add(lv_, tw_->mul(lv_, r, x), c_[i]);
  return r;
}

Poly Poly::embed(int lv) const {
  if (lv < lv_) throw Error("BadLevel", "embed to lower level");
  return Poly(tw_, lv, c_);
}

Poly Poly::try_descend(int lv) const {
  for (fe c : c_)
    if (!tw_->in_sublevel(lv_, c, lv))
      throw Error("NotInSubfield", "coefficient does not descend");
  return Poly(tw_, lv, c_);
}

std::vector<std::pair<fe, unsigned>> Poly::roots() const {
  if (is_zero()) throw Error("ZeroPolynomial", "roots of the zero polynomial");
  const std::uint64_t N = tw_->card(lv_);
  if (N > kMaxScanCard)
    throw Error("FieldTooLarge", "root scan limited to fields of size <= 2^16");
  std::vector<fe> found;
  for (std::uint64_t x = 0; x < N; ++x)
    if (eval(static_cast<fe>(x)) == 0) found.push_back(static_cast<fe>(x));
  std::sort(found.begin(), found.end(),
            [&](fe a, fe b) { return tw_->lex_less(lv_, a, b); });
  std::vector<std::pair<fe, unsigned>> out;
  for (fe r : found) {
    Poly lin(tw_, lv_, {tw_->neg(lv_, r), 1});
    Poly f = *this;
    unsigned mult = 0;
    while (true) {
      auto [q, rr] = f.divmod(lin);
      if (!rr.is_zero()) break;
      ++mult;
      f = q;
    }
    out.emplace_back(r, mult);
  }
  return out;
}

Poly poly_gcd(const Poly& f, const Poly& g) {
  if (f.is_zero() && g.is_zero()) throw Error("BothZero", "gcd(0, 0)");
  Poly a = f, b = g;
  while (!b.is_zero()) {
    Poly r = a % b;
    a = b;
    b = r;
  }
  return a.monic();
}

Poly interpolate(const FieldTower* tw, int lv,
                 const std::vector<fe>& xs, const std::vector<fe>& ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw Error("DuplicateNodes", "need |xs| = |ys| >= 1");
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j)
      if (xs[i] == xs[j]) throw Error("DuplicateNodes", "repeated node");
  Poly acc(tw, lv);
  for (size_t i = 0; i < xs.size(); ++i) {
    Poly li = Poly::constant(tw, lv, 1);
    fe denom = 1;
    for (size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      li = li * Poly(tw, lv, {tw->neg(lv, xs[j]), 1});
      denom = tw->mul(lv, denom, tw->sub(lv, xs[i], xs[j]));
    }
    acc = acc + li.scale(tw->mul(lv, ys[i], tw->inv(lv, denom)));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// BiPoly and resultant

void BiPoly::set_coeff_x(unsigned i, Poly p) {
  if (cx_.size() <= i) cx_.resize(i + 1, Poly(tw_, lv_));
  cx_[i] = std::move(p);
}

int BiPoly::degree_x() const {
  for (size_t i = cx_.size(); i-- > 0;)
    if (!cx_[i].is_zero()) return static_cast<int>(i);
  return -1;
}

int BiPoly::max_degree_y() const {
  int d = -1;
  for (const auto& p : cx_) d = std::max(d, p.degree());
  return d;
}

Poly BiPoly::eval_y(fe y0) const {
  std::vector<fe> r(cx_.size(), 0);
  for (size_t i = 0; i < cx_.size(); ++i) r[i] = cx_[i].eval(y0);
  return Poly(tw_, lv_, std::move(r));
}

BiPoly BiPoly::embed(int lv) const {
  BiPoly out(tw_, lv);
  for (size_t i = 0; i < cx_.size(); ++i)
    out.set_coeff_x(static_cast<unsigned>(i), cx_[i].embed(lv));
  return out;
}

namespace {

// determinant by Gaussian elimination at a tower level
fe determinant(const FieldTower* tw, int lv, std::vector<fe> a, size_t n) {
  fe det = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv * n + col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[col * n + j]);
      det = tw->neg(lv, det);
    }
    fe pv = a[col * n + col];
    det = tw->mul(lv, det, pv);
    fe ip = tw->inv(lv, pv);
    for (size_t r = col + 1; r < n; ++r) {
      fe f = tw->mul(lv, a[r * n + col], ip);
      if (f == 0) continue;
      for (size_t j = col; j < n; ++j)
        a[r * n + j] = tw->sub(lv, a[r * n + j], tw->mul(lv, f, a[col * n + j]));
    }
  }
  return det;
}

fe sylvester_resultant(const FieldTower* tw, int lv, const Poly& f, const Poly& g,
                       int df_nominal) {
  // Sylvester matrix with f's rows first; f is padded to its nominal X-degree
  // so the interpolated result is consistent across evaluation points.
  int df = df_nominal;
  int dg = g.degree();
  if (df < 0 || dg < 1) throw Error("BadResultant", "degenerate resultant");
  size_t n = static_cast<size_t>(df + dg);
  std::vector<fe> a(n * n, 0);
  // dg rows of f coefficients (high to low), shifted
  for (int r = 0; r < dg; ++r)
    for (int j = 0; j <= df; ++j)
      a[static_cast<size_t>(r) * n + r + j] = f.coeff(static_cast<unsigned>(df - j));
  // df rows of g coefficients
  for (int r = 0; r < df; ++r)
    for (int j = 0; j <= dg; ++j)
      a[static_cast<size_t>(dg + r) * n + r + j] = g.coeff(static_cast<unsigned>(dg - j));
  return determinant(tw, lv, std::move(a), n);
}

}  // namespace

Poly resultant_in_x(const BiPoly& f, const Poly& g) {
  const FieldTower* tw = f.tower();
  int lv = std::max(f.level(), g.level());
  int df = f.degree_x();
  int dg = g.degree();
  if (df < 0 || g.is_zero()) throw Error("BadResultant", "zero input");
  if (dg < 1) throw Error("BadResultant", "deg_X(g) must be >= 1");
  int degY = dg * std::max(f.max_degree_y(), 0);
  // pick the evaluation level: enough distinct points for interpolation
  int ev = lv;
  while (ev <= 3 && tw->card(ev) < static_cast<std::uint64_t>(degY) + 1) ++ev;
  if (ev > 3)
    throw Error("InsufficientEvaluationPoints",
                "no tower level has enough evaluation points");
  BiPoly fe_ = f.embed(ev);
  Poly ge = g.embed(ev);
  std::vector<fe> xs, ys;
  xs.reserve(degY + 1);
  for (std::uint64_t y0 = 0; y0 <= static_cast<std::uint64_t>(degY); ++y0) {
    Poly fy = fe_.eval_y(static_cast<fe>(y0));
    ys.push_back(sylvester_resultant(tw, ev, fy, ge, df));
    xs.push_back(static_cast<fe>(y0));
  }
  Poly res = interpolate(tw, ev, xs, ys);
  if (ev != lv) res = res.try_descend(lv);
  return res;
}

}  // namespace qcalt
