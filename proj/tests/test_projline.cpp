#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>

#include "qcalt/projline.hpp"

using namespace qcalt;

namespace {

std::mt19937_64 rng(424242);

Homography rand_homography(const TowerPtr& tw, int lv) {
  for (;;) {
    fe a = static_cast<fe>(rng() % tw->card(lv));
    fe b = static_cast<fe>(rng() % tw->card(lv));
    fe c = static_cast<fe>(rng() % tw->card(lv));
    fe d = static_cast<fe>(rng() % tw->card(lv));
    try {
      return Homography::make(tw.get(), lv, a, b, c, d);
    } catch (const Error&) {
    }
  }
}

Homography rand_nonidentity(const TowerPtr& tw, int lv) {
  for (;;) {
    Homography h = rand_homography(tw, lv);
    if (!h.is_identity()) return h;
  }
}

}  // namespace

TEST_CASE("point canonical form") {
  auto tw = make_tower(2, 1, 4);
  const FieldTower* t = tw.get();
  int lv = kLevelExt;
  CHECK_THROWS_WITH_AS(ProjPoint::make(t, lv, 0, 0), doctest::Contains("BothZero"),
                       Error);
  auto P = ProjPoint::make(t, lv, 6, 3);  // (6:3) = (2:1) since 6 = 2*3 in F_16
  CHECK(P.y() == 1);
  CHECK(P == ProjPoint::finite(t, lv, t->div(lv, 6, 3)));
  CHECK(ProjPoint::make(t, lv, 5, 0) == ProjPoint::infinity(t, lv));
}

TEST_CASE("apply basics") {
  auto tw = make_tower(2, 1, 4);
  const FieldTower* t = tw.get();
  int lv = kLevelExt;
  Homography id = Homography::identity(t, lv);
  for (fe x = 0; x < 16; ++x)
    CHECK(id.apply(ProjPoint::finite(t, lv, x)) == ProjPoint::finite(t, lv, x));
  fe a = 7;
  Homography diag = Homography::make(t, lv, a, 0, 0, 1);
  for (fe x = 0; x < 16; ++x)
    CHECK(diag.apply(ProjPoint::finite(t, lv, x)) ==
          ProjPoint::finite(t, lv, t->mul(lv, a, x)));
  Homography trans = Homography::make(t, lv, 1, 9, 0, 1);
  CHECK(trans.apply(ProjPoint::infinity(t, lv)) == ProjPoint::infinity(t, lv));
  CHECK(trans.apply(ProjPoint::finite(t, lv, 0)) == ProjPoint::finite(t, lv, 9));
}

TEST_CASE("group laws and scaling invariance") {
  auto tw = make_tower(3, 1, 2);
  const FieldTower* t = tw.get();
  int lv = kLevelExt;
  for (int it = 0; it < 100; ++it) {
    Homography s = rand_homography(tw, lv);
    Homography u = rand_homography(tw, lv);
    CHECK(s.compose(s.inverse()).is_identity());
    CHECK(s.conjugate(Homography::identity(t, lv)) == s);
    // composition against pointwise application
    ProjPoint P = ProjPoint::finite(t, lv, static_cast<fe>(rng() % 9));
    CHECK(s.compose(u).apply(P) == s.apply(u.apply(P)));
    // scalar multiples act identically (canonical form collapses them)
    fe c = 1 + static_cast<fe>(rng() % 8);
    Homography sc = Homography::make(t, lv, t->mul(lv, s.a(), c), t->mul(lv, s.b(), c),
                                     t->mul(lv, s.c(), c), t->mul(lv, s.d(), c));
    CHECK(sc == s);
  }
  CHECK_THROWS_WITH_AS(Homography::make(t, lv, 1, 2, 2, 1),
                       doctest::Contains("SingularMatrix"), Error);
}

TEST_CASE("order") {
  auto tw = make_tower(2, 1, 3);  // F_8
  const FieldTower* t = tw.get();
  int lv = kLevelExt;
  CHECK(Homography::identity(t, lv).order() == 1);
  CHECK(Homography::make(t, lv, 1, 1, 0, 1).order() == 2);  // char 2
  auto tw27 = make_tower(3, 1, 3);
  CHECK(Homography::make(tw27.get(), kLevelExt, 1, 5, 0, 1).order() == 3);  // char 3
  fe g = t->level(lv).generator;
  CHECK(Homography::make(t, lv, g, 0, 0, 1).order() == t->element_order(lv, g));
  CHECK(Homography::make(t, lv, t->pow(lv, g, 7), 0, 0, 1).order() == 1);
}

TEST_CASE("classification: planted cases round trip") {
  auto tw = make_tower(2, 1, 4);
  const FieldTower* t = tw.get();
  int lv = kLevelExt;
  SUBCASE("diagonal is DiagonalizableBase with rho = id form") {
    fe a = 7;
    auto cls = classify(Homography::make(t, lv, a, 0, 0, 1));
    CHECK(cls.tag == HClass::DiagonalizableBase);
    fe v = cls.value.value();
    CHECK((v == a || v == t->inv(lv, a)));
  }
  SUBCASE("unipotent is Trigonalizable") {
    auto cls = classify(Homography::make(t, lv, 1, 1, 0, 1));
    CHECK(cls.tag == HClass::Trigonalizable);
    CHECK(cls.value.value() == 1);
  }
  SUBCASE("identity refuses") {
    CHECK_THROWS_WITH_AS(classify(Homography::identity(t, lv)),
                         doctest::Contains("IdentityNotClassifiable"), Error);
  }
  SUBCASE("random conjugates of planted standard forms") {
    for (int it = 0; it < 100; ++it) {
      fe a = 2 + static_cast<fe>(rng() % 14);
      Homography sd = Homography::make(t, lv, a, 0, 0, 1);
      Homography rho = rand_homography(tw, lv);
      Homography s = sd.conjugate(rho);
      auto cls = classify(s);
      REQUIRE(cls.tag == HClass::DiagonalizableBase);
      fe v = cls.value.value();
      CHECK((v == a || v == t->inv(lv, a)));
      // conjugator reproduces sigma
      CHECK(standard_form(cls).conjugate(cls.rho) == s);
    }
    for (int it = 0; it < 100; ++it) {
      fe b = 1 + static_cast<fe>(rng() % 15);
      Homography st = Homography::make(t, lv, 1, b, 0, 1);
      Homography s = st.conjugate(rand_homography(tw, lv));
      auto cls = classify(s);
      REQUIRE(cls.tag == HClass::Trigonalizable);
      CHECK(standard_form(cls).conjugate(cls.rho) == s);
    }
  }
  SUBCASE("quadratic case") {
    // (0 1; 1 1) over F_2 embeds in F_16: char poly X^2 + X + 1 irreducible
    // over F_16? No: F_16 contains F_4. Use F_8 instead (no cube roots of 1).
    auto tw8 = make_tower(2, 1, 3);
    const FieldTower* t8 = tw8.get();
    Homography s = Homography::make(t8, kLevelExt, 0, 1, 1, 1);
    auto cls = classify(s);
    REQUIRE(cls.tag == HClass::DiagonalizableQuadratic);
    CHECK(cls.rho.level() == kLevelExt2);
    fe al = cls.value.value();
    CHECK(cls.value.level() == kLevelExt2);
    // alpha and alpha^{q^m} are the two roots; trace and norm match
    fe conj = t8->pow(kLevelExt2, al, 8);
    CHECK(t8->add(kLevelExt2, al, conj) == 1);   // trace = tr(sigma) = 1
    CHECK(t8->mul(kLevelExt2, al, conj) == 1);   // norm = det = -1 = 1
    CHECK(standard_form(cls).conjugate(cls.rho) == s.embed(kLevelExt2));
    // order divides q^{2m}-1 and p does not divide it
    CHECK(63 % s.order() == 0);
    CHECK(s.order() % 2 != 0);
  }
}

TEST_CASE("classification tag is conjugation invariant") {
  auto tw = make_tower(3, 1, 2);
  for (int it = 0; it < 100; ++it) {
    Homography s = rand_nonidentity(tw, kLevelExt);
    Homography r = rand_homography(tw, kLevelExt);
    CHECK(classify(s).tag == classify(s.conjugate(r)).tag);
    CHECK(s.order() == s.conjugate(r).order());
  }
}

TEST_CASE("orbits and stabilizers") {
  auto tw = make_tower(2, 1, 4);
  const FieldTower* t = tw.get();
  int lv = kLevelExt;
  fe a = t->level(lv).exp_tbl[5];  // order 3
  Homography s = Homography::make(t, lv, a, 0, 0, 1);
  REQUIRE(s.order() == 3);
  auto fix0 = orbit(s, ProjPoint::finite(t, lv, 0));
  CHECK(fix0.size() == 3);
  CHECK_FALSE(has_trivial_stabilizer(s, ProjPoint::finite(t, lv, 0)));
  CHECK_FALSE(has_trivial_stabilizer(s, ProjPoint::infinity(t, lv)));
  ProjPoint P = ProjPoint::finite(t, lv, 1);
  CHECK(has_trivial_stabilizer(s, P));
  auto orb = orbit(s, P);
  CHECK(orb.size() == 3);
  CHECK(orb[1] == ProjPoint::finite(t, lv, a));
  // orbit sizes partition P^1(F_16): 17 = 2 fixed + 5 free orbits of size 3
  std::map<std::size_t, int> sizes;
  std::size_t covered = 0;
  std::vector<ProjPoint> seen;
  for (const auto& Q : all_points(tw, lv)) {
    bool done = false;
    for (const auto& R : seen)
      if (R == Q) done = true;
    if (done) continue;
    auto o = orbit(s, Q);
    std::vector<ProjPoint> distinct;
    for (const auto& R : o) {
      bool dup = false;
      for (const auto& S2 : distinct)
        if (S2 == R) dup = true;
      if (!dup) distinct.push_back(R);
    }
    sizes[distinct.size()]++;
    covered += distinct.size();
    for (const auto& R : distinct) seen.push_back(R);
  }
  CHECK(covered == 17);
  CHECK(sizes[1] == 2);
  CHECK(sizes[3] == 5);
}
